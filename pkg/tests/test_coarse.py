import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pagree import (
    LatticeConfig,
    coarse_observable,
    dft_matrix,
    dirichlet_delta,
    projector,
    translation_matrix,
    truncated_momentum_state,
    truncated_overlap,
)

TOL = 1e-12


def divisors(d):
    return [w for w in range(1, d + 1) if d % w == 0]


def delta_by_sum(q, x):
    """Defining sum, the independent oracle for dirichlet_delta."""
    return sum(cmath.exp(2j * math.pi * x * n / q) for n in range(q)) / q


class TestProjector:
    def test_full_interval_is_identity(self):
        mat = projector(LatticeConfig(4, 4, 1), "position", 0).matrix()
        assert np.max(np.abs(mat - np.eye(4))) < TOL

    def test_position_block(self):
        mat = projector(LatticeConfig(4, 2, 1), "position", 1).matrix()
        assert np.max(np.abs(mat - np.diag([0, 0, 1, 1]))) < TOL

    def test_momentum_block_against_dft_columns(self):
        config = LatticeConfig(4, 1, 2)
        mat = projector(config, "momentum", 0).matrix()
        cols = dft_matrix(config)[:, 0:2]
        assert np.max(np.abs(mat - cols @ cols.conj().T)) < TOL
        assert abs(np.trace(mat).real - 2.0) < TOL
        assert np.max(np.abs(mat @ mat - mat)) < TOL

    def test_interval_out_of_range(self):
        config = LatticeConfig(4, 2, 2)
        with pytest.raises(ValueError):
            projector(config, "position", 2)
        with pytest.raises(ValueError):
            projector(config, "momentum", -1)
        with pytest.raises(ValueError):
            projector(config, "site", 0)

    @pytest.mark.parametrize("d,w,basis", [(6, 2, "position"), (6, 3, "momentum"),
                                           (8, 4, "momentum"), (9, 3, "position")])
    def test_projector_contract(self, d, w, basis):
        config = LatticeConfig(d, w, w)
        k = config.k_x if basis == "position" else config.k_p
        for interval in range(k):
            mat = projector(config, basis, interval).matrix()
            assert np.max(np.abs(mat @ mat - mat)) < TOL
            assert np.max(np.abs(mat - mat.conj().T)) < TOL
            assert abs(np.trace(mat).real - w) < TOL

    @pytest.mark.parametrize("d", range(1, 33))
    def test_completeness(self, d):
        for w in divisors(d):
            config = LatticeConfig(d, w, w)
            for basis, k in (("position", config.k_x), ("momentum", config.k_p)):
                total = sum(projector(config, basis, i).matrix() for i in range(k))
                assert np.max(np.abs(total - np.eye(d))) < TOL

    @pytest.mark.parametrize("d,w", [(6, 2), (8, 2), (12, 3), (16, 4)])
    def test_orthogonality(self, d, w):
        config = LatticeConfig(d, w, w)
        for basis, k in (("position", config.k_x), ("momentum", config.k_p)):
            mats = [projector(config, basis, i).matrix() for i in range(k)]
            for i in range(k):
                for j in range(i + 1, k):
                    assert np.max(np.abs(mats[i] @ mats[j])) < TOL

    @pytest.mark.parametrize("d,w", [(6, 2), (8, 4), (12, 3), (16, 2)])
    def test_translation_covariance(self, d, w):
        config = LatticeConfig(d, w, w)
        T_X = translation_matrix(config, "position")
        T_P = translation_matrix(config, "momentum")
        base_x = projector(config, "position", 0).matrix()
        base_p = projector(config, "momentum", 0).matrix()
        for nu in range(config.k_x):
            shift = np.linalg.matrix_power(T_X, nu * w)
            assert np.max(np.abs(projector(config, "position", nu).matrix()
                                 - shift @ base_x @ shift.conj().T)) < TOL
        for mu in range(config.k_p):
            shift = np.linalg.matrix_power(T_P, mu * w)
            assert np.max(np.abs(projector(config, "momentum", mu).matrix()
                                 - shift @ base_p @ shift.conj().T)) < TOL


class TestCoarseObservable:
    def test_position_examples(self):
        assert np.max(np.abs(coarse_observable(LatticeConfig(4, 2, 2), "position")
                             - np.diag([0, 0, 1, 1]))) < TOL
        assert np.max(np.abs(coarse_observable(LatticeConfig(3, 1, 1), "position")
                             - np.diag([0, 1, 2]))) < TOL

    def test_momentum_eigenvalues(self):
        obs = coarse_observable(LatticeConfig(4, 2, 2), "momentum")
        assert np.max(np.abs(obs - obs.conj().T)) < TOL
        eigs = np.sort(np.linalg.eigvalsh(obs))
        assert np.max(np.abs(eigs - [0, 0, 1, 1])) < TOL


class TestTruncatedMomentumState:
    def test_full_width_equals_momentum_state(self):
        got = truncated_momentum_state(LatticeConfig(4, 4, 1), 0, 0)
        assert np.max(np.abs(got.amplitudes - 0.5 * np.ones(4))) < TOL

    def test_half_width_example(self):
        got = truncated_momentum_state(LatticeConfig(4, 2, 1), 0, 0)
        want = np.array([1, 1, 0, 0]) / np.sqrt(2)
        assert np.max(np.abs(got.amplitudes - want)) < TOL

    def test_norm_and_support(self):
        config = LatticeConfig(6, 3, 1)
        got = truncated_momentum_state(config, 1, 2)
        assert abs(np.linalg.norm(got.amplitudes) - 1.0) < TOL
        assert np.max(np.abs(got.amplitudes[:3])) == 0.0

    @pytest.mark.parametrize("d,w_x,nu,m", [(6, 2, 1, 4), (8, 4, 1, 7), (12, 3, 2, 5)])
    def test_matches_projected_momentum_state(self, d, w_x, nu, m):
        # oracle: sqrt(k_x) * (position-block projector) |P;m>
        config = LatticeConfig(d, w_x, 1)
        momentum = dft_matrix(config)[:, m]
        projected = np.zeros(d, dtype=complex)
        block = slice(nu * w_x, (nu + 1) * w_x)
        projected[block] = momentum[block]
        want = math.sqrt(config.k_x) * projected
        got = truncated_momentum_state(config, nu, m).amplitudes
        assert np.max(np.abs(got - want)) < TOL

    def test_index_validation(self):
        config = LatticeConfig(6, 3, 1)
        with pytest.raises(ValueError):
            truncated_momentum_state(config, 2, 0)
        with pytest.raises(ValueError):
            truncated_momentum_state(config, 0, 6)


class TestDirichletDelta:
    def test_value_at_zero(self):
        for q in (1, 2, 5, 11):
            assert dirichlet_delta(q, 0.0) == 1.0

    def test_simple_values(self):
        assert abs(dirichlet_delta(2, 1.0)) < TOL
        assert abs(dirichlet_delta(3, 3.0) - 1.0) < TOL

    def test_domain(self):
        with pytest.raises(ValueError):
            dirichlet_delta(0, 1.0)
        with pytest.raises(ValueError):
            dirichlet_delta(2.0, 1.0)

    @pytest.mark.parametrize("q", range(1, 13))
    def test_sum_vs_closed_form_on_grid(self, q):
        # x from -2q to 2q in steps of 1/7
        for k in range(-14 * q, 14 * q + 1):
            x = k / 7.0
            assert abs(dirichlet_delta(q, x) - delta_by_sum(q, x)) < 1e-10

    @settings(derandomize=True, max_examples=150, deadline=None)
    @given(q=st.integers(1, 12), k=st.integers(-170, 170))
    def test_sum_vs_closed_form_property(self, q, k):
        x = k / 7.0
        assert abs(dirichlet_delta(q, x) - delta_by_sum(q, x)) < 1e-10


class TestTruncatedOverlap:
    def test_normalized_diagonal(self):
        config = LatticeConfig(4, 2, 2)
        assert truncated_overlap(config, 1, 1) == 1.0

    def test_orthogonal_at_multiples_of_k(self):
        config = LatticeConfig(4, 2, 2)
        assert abs(truncated_overlap(config, 0, 2)) < TOL

    def test_half_overlap(self):
        config = LatticeConfig(4, 2, 2)
        assert abs(abs(truncated_overlap(config, 0, 1)) ** 2 - 0.5) < TOL

    def test_index_validation(self):
        config = LatticeConfig(4, 2, 2)
        with pytest.raises(ValueError):
            truncated_overlap(config, 4, 0)
        with pytest.raises(ValueError):
            truncated_overlap(config, 0, -1)

    @pytest.mark.parametrize("d", [4, 6, 12, 24])
    def test_against_direct_inner_products(self, d):
        for w_x in divisors(d):
            config = LatticeConfig(d, w_x, 1)
            vectors = [truncated_momentum_state(config, 0, m).amplitudes for m in range(d)]
            for m in range(d):
                for m_prime in range(d):
                    want = np.vdot(vectors[m_prime], vectors[m])
                    got = truncated_overlap(config, m, m_prime)
                    assert abs(got - want) < TOL

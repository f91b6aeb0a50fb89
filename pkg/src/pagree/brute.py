"""Ground-truth sequential-measurement probabilities by explicit linear
algebra.

Everything here works directly with dense projector chains; the only
structure exploited is that sandwiching an operator between position-block
projectors restricts it to that block.  The dense agreement operator is
capped at BRUTE_CAP sites; the Gram-matrix evaluator covers larger lattices
at O(w_p) cost.

Loops run in sorted outcome order and totals are reduced with compensated
summation, so results are deterministic regardless of how callers choose to
parallelize over outcome pairs or sampled states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .coarse import projector, truncated_overlap
from .errors import NumericCheckError, ResourceLimitError
from .lattice import LatticeConfig, QuantumState
from .tolerances import NEGATIVE_PROBABILITY_CLAMP, TOL_CHAIN_IDENTITY

#: largest d for which the dense d x d agreement operator is materialized
BRUTE_CAP = 256

#: bit generator behind sample_haar_states (seedable and splittable)
PRNG_NAME = "PCG64"


@dataclass(frozen=True)
class SequenceOutcome:
    """One (nu, mu, nu2) outcome triple of the position-momentum-position
    chain with its probability."""

    nu: int
    mu: int
    nu2: int
    probability: float


@dataclass
class AgreeResult:
    """Cross-method record for one (d, w_x, w_p) evaluation.

    closed is always populated; the other fields hold whichever methods were
    requested.  The bounds apply only on the diagonal w_x = w_p and only in
    their validity domains, hence may be None even when requested.
    """

    config: LatticeConfig
    closed: float
    brute: Optional[float] = None
    gram: Optional[float] = None
    continuum: Optional[float] = None
    perturbation: Optional[float] = None
    upper_bound: Optional[float] = None
    lower_bound: Optional[float] = None

    def residuals(self) -> dict[str, float]:
        """Pairwise disagreements between the exact evaluation methods."""
        exact = {"brute": self.brute, "closed": self.closed, "gram": self.gram}
        present = sorted(name for name, value in exact.items() if value is not None)
        out = {}
        for i, a in enumerate(present):
            for b in present[i + 1:]:
                out[f"{a}-{b}"] = abs(exact[a] - exact[b])
        return out


def _clamp_probability(p: float) -> float:
    if p < 0.0:
        if p < -NEGATIVE_PROBABILITY_CLAMP:
            raise NumericCheckError(
                f"probability {p} below -{NEGATIVE_PROBABILITY_CLAMP}: "
                "not attributable to rounding")
        return 0.0
    return p


def _require_state(config: LatticeConfig, state: QuantumState) -> None:
    if not isinstance(state, QuantumState):
        raise ValueError(f"expected a QuantumState, got {type(state).__name__}")
    if state.dim != config.d:
        raise ValueError(f"state dimension {state.dim} != lattice dimension {config.d}")


def _chain_site_mass(config: LatticeConfig, state: QuantumState) -> Iterator[tuple[int, int, np.ndarray]]:
    """Apply Pi_P;mu Pi_X;nu to the state for every (nu, mu), unnormalized.

    Yields (nu, mu, per-site probability mass) in sorted outcome order.  The
    projective update rule is applied without renormalizing intermediate
    states, so branch probabilities compose multiplicatively and a
    zero-probability branch simply yields zero mass.
    """
    w_x = config.w_x
    pure = state.kind == "pure"
    for nu in range(config.k_x):
        lo, hi = nu * w_x, (nu + 1) * w_x
        segment = state.data[lo:hi] if pure else state.data[lo:hi, lo:hi]
        for mu in range(config.k_p):
            columns = projector(config, "momentum", mu).matrix()[:, lo:hi]
            if pure:
                psi = columns @ segment
                yield nu, mu, np.abs(psi) ** 2
            else:
                rho = columns @ segment @ columns.conj().T
                yield nu, mu, np.real(np.diag(rho))


def sequence_distribution(config: LatticeConfig, state: QuantumState) -> list[SequenceOutcome]:
    """Joint outcome distribution of an instantaneous position-momentum-
    position measurement chain.

    Parameters
    ----------
    config : LatticeConfig
        Lattice geometry; w_x applies to both position measurements.
    state : QuantumState
        Initial state of matching dimension.

    Returns
    -------
    list of SequenceOutcome
        One entry per (nu, mu, nu2) triple, ordered by those indices.  Each
        probability equals tr[Pi_X;nu2 Pi_P;mu Pi_X;nu rho Pi_X;nu Pi_P;mu],
        clamped to 0 if within rounding noise below it; the whole list sums
        to 1.
    """
    _require_state(config, state)
    w_x = config.w_x
    outcomes = []
    for nu, mu, site_mass in _chain_site_mass(config, state):
        for nu2 in range(config.k_x):
            mass = float(np.sum(site_mass[nu2 * w_x:(nu2 + 1) * w_x]))
            outcomes.append(SequenceOutcome(nu, mu, nu2, _clamp_probability(mass)))
    return outcomes


def p_agree_state(config: LatticeConfig, state: QuantumState) -> float:
    """Probability that the two position outcomes of the chain coincide,
    for one specific initial state."""
    _require_state(config, state)
    w_x = config.w_x
    terms = [
        _clamp_probability(float(np.sum(site_mass[nu * w_x:(nu + 1) * w_x])))
        for nu, _, site_mass in _chain_site_mass(config, state)
    ]
    return math.fsum(terms)


def lambda_agree(config: LatticeConfig) -> np.ndarray:
    """Dense agreement operator: the sum over all (nu, mu) of
    (Pi_X;nu Pi_P;mu Pi_X;nu)^2.

    Its expectation value in a state is the agreement probability of the
    measurement chain.  Pi_X Pi_P Pi_X is the momentum projector restricted
    to one position block, so each summand is assembled from a w_x-sized
    sub-block and the result is block diagonal.
    """
    d, w_x = config.d, config.w_x
    if d > BRUTE_CAP:
        raise ResourceLimitError(
            f"d={d} exceeds the dense agreement-operator cap {BRUTE_CAP}; "
            "use p_agree_average_gram for large lattices")
    out = np.zeros((d, d), dtype=complex)
    for mu in range(config.k_p):
        pmat = projector(config, "momentum", mu).matrix()
        for nu in range(config.k_x):
            lo, hi = nu * w_x, (nu + 1) * w_x
            sub = pmat[lo:hi, lo:hi]
            out[lo:hi, lo:hi] += sub @ sub
    return out


def p_agree_average_brute(config: LatticeConfig) -> float:
    """Agreement probability averaged over all states: the normalized trace
    of the dense agreement operator.

    Translation covariance makes every (nu, mu) summand contribute the same
    trace as the (0, 0) one; that shortcut is recomputed independently and
    must agree with the full trace to TOL_CHAIN_IDENTITY.
    """
    d = config.d
    value = float(np.trace(lambda_agree(config)).real) / d
    head = projector(config, "momentum", 0).matrix()[:config.w_x, :config.w_x]
    cross = config.k_x * config.k_p / d * float(np.trace(head @ head).real)
    if abs(value - cross) > TOL_CHAIN_IDENTITY:
        raise NumericCheckError(
            f"agreement-operator trace {value} disagrees with its "
            f"translation-covariant form {cross} at {config}")
    return value


def p_agree_average_gram(config: LatticeConfig) -> float:
    """State-averaged agreement probability from the Gram matrix of
    block-restricted momentum states.

    The average equals (1/d)(k_p/k_x) * sum_{m,m'<w_p} |<m'|m>|^2 over
    truncated momentum states of one block.  The summand depends only on
    n = m - m', which collapses the double sum to

        w_p + 2 * sum_{n=1}^{w_p-1} (w_p - n) * |overlap(n)|^2

    at O(w_p) cost, so this path scales far beyond BRUTE_CAP.
    """
    terms = [float(config.w_p)]
    for n in range(1, config.w_p):
        overlap = truncated_overlap(config, n, 0)
        terms.append(2.0 * (config.w_p - n) * (overlap.real**2 + overlap.imag**2))
    return math.fsum(terms) * config.k_p / (config.k_x * config.d)


def sample_haar_states(config: LatticeConfig, count: int, seed: int) -> list[QuantumState]:
    """Deterministic sample of Haar-random pure states.

    Each state is a vector of d complex standard normals, normalized.  The
    generator is PCG64 seeded as given; use distinct seeds (or spawned seed
    sequences) for independent streams.
    """
    if not isinstance(count, (int, np.integer)) or isinstance(count, bool) or count < 1:
        raise ValueError(f"count must be a positive integer, got {count!r}")
    rng = np.random.Generator(np.random.PCG64(seed))
    states = []
    for _ in range(count):
        z = rng.standard_normal(config.d) + 1j * rng.standard_normal(config.d)
        states.append(QuantumState.pure(z / np.linalg.norm(z)))
    return states

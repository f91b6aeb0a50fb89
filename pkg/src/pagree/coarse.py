"""Coarse-grained measurements on the lattice.

A coarse measurement merges w adjacent basis outcomes into one, so its
elements are projectors onto contiguous index blocks of the position or
momentum basis.  This module builds those projectors, the coarse
observables they induce, the block-restricted momentum states whose Gram
matrix drives the fast agreement-probability evaluator, and the normalized
geometric sum that governs their overlaps.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .lattice import Basis, LatticeConfig, QuantumState, _dft, _require_index

#: below this |sin(pi*x/q)| the closed form of the normalized geometric sum
#: is replaced by its defining sum (removable singularity at multiples of q)
SINGULARITY_THRESHOLD = 1e-9


@dataclass(frozen=True)
class CoarseProjector:
    """Projector onto one contiguous width-w block of a basis.

    The dense matrix is materialized lazily and cached per
    (d, basis, interval, width); cached matrices are read-only, so they are
    safe to share between concurrent readers.
    """

    config: LatticeConfig
    basis: Basis
    interval: int

    @property
    def width(self) -> int:
        return self.config.w_x if self.basis == "position" else self.config.w_p

    @property
    def block(self) -> range:
        """Basis indices covered by this projector."""
        start = self.interval * self.width
        return range(start, start + self.width)

    def matrix(self) -> np.ndarray:
        """The d x d projector matrix in the position basis."""
        return _projector_matrix(self.config.d, self.basis, self.interval, self.width)


def projector(config: LatticeConfig, basis: Basis, interval: int) -> CoarseProjector:
    """Coarse projector for the given basis and interval index.

    Position projectors are diagonal 0/1 blocks; momentum projectors are the
    corresponding diagonal blocks conjugated by the Fourier transform.
    """
    if basis == "position":
        interval = _require_index(interval, config.k_x, "position interval")
    elif basis == "momentum":
        interval = _require_index(interval, config.k_p, "momentum interval")
    else:
        raise ValueError(f"basis must be 'position' or 'momentum', got {basis!r}")
    return CoarseProjector(config, basis, interval)


@lru_cache(maxsize=1024)
def _projector_matrix(d: int, basis: str, interval: int, width: int) -> np.ndarray:
    start = interval * width
    if basis == "position":
        mat = np.zeros((d, d), dtype=complex)
        idx = np.arange(start, start + width)
        mat[idx, idx] = 1.0
    else:
        cols = _dft(d)[:, start:start + width]
        mat = cols @ cols.conj().T
    mat.setflags(write=False)
    return mat


def coarse_observable(config: LatticeConfig, basis: Basis) -> np.ndarray:
    """Hermitian observable assigning outcome value j to the j-th block.

    Eigenvalues are 0, ..., k-1, each with multiplicity w.  Provided for
    completeness; the probability computations use the projectors directly.
    """
    if basis not in ("position", "momentum"):
        raise ValueError(f"basis must be 'position' or 'momentum', got {basis!r}")
    k = config.k_x if basis == "position" else config.k_p
    out = np.zeros((config.d, config.d), dtype=complex)
    for j in range(1, k):
        out += j * projector(config, basis, j).matrix()
    return out


@dataclass(frozen=True, eq=False)
class TruncatedMomentumState:
    """Momentum state of index m restricted to position block nu and
    renormalized.  Distinct states of the same block are generally not
    orthogonal; see truncated_overlap."""

    config: LatticeConfig
    nu: int
    m: int
    amplitudes: np.ndarray

    def as_state(self) -> QuantumState:
        return QuantumState.pure(self.amplitudes)


def truncated_momentum_state(config: LatticeConfig, nu: int, m: int) -> TruncatedMomentumState:
    """Unit vector with amplitudes exp(i*2*pi*m*n/d)/sqrt(w_x) on the sites n
    of position block nu and zero elsewhere."""
    nu = _require_index(nu, config.k_x, "position interval")
    m = _require_index(m, config.d, "momentum index")
    amps = np.zeros(config.d, dtype=complex)
    sites = np.arange(nu * config.w_x, (nu + 1) * config.w_x)
    amps[sites] = np.exp(2j * np.pi * m * sites / config.d) / math.sqrt(config.w_x)
    amps.setflags(write=False)
    return TruncatedMomentumState(config, nu, m, amps)


def dirichlet_delta(q: int, x: float) -> complex:
    """Normalized geometric sum (1/q) * sum_{n=0}^{q-1} exp(i*2*pi*x*n/q).

    Away from the removable singularities at x = multiple of q this is
    evaluated through the closed form

        exp(i*pi*(x - x/q)) * sin(pi*x) / (q * sin(pi*x/q));

    within SINGULARITY_THRESHOLD of a singular point the defining sum is
    evaluated directly, which is exact there (the value is 1 at x = 0 and at
    every multiple of q).

    Parameters
    ----------
    q : int
        Number of summands, q >= 1.
    x : float
        Real argument; the function has period q up to a phase.
    """
    if not isinstance(q, (int, np.integer)) or isinstance(q, bool) or q < 1:
        raise ValueError(f"q must be a positive integer, got {q!r}")
    x = float(x)
    denominator = math.sin(math.pi * x / q)
    if abs(denominator) < SINGULARITY_THRESHOLD:
        return sum(cmath.exp(2j * math.pi * x * n / q) for n in range(q)) / q
    phase = cmath.exp(1j * math.pi * (x - x / q))
    return phase * math.sin(math.pi * x) / (q * denominator)


def _dirichlet_delta_ratio(q: int, num: int, den: int) -> complex:
    """dirichlet_delta(q, num/den) for exactly rational arguments.

    Sine and phase arguments are reduced with integer arithmetic before any
    float rounding, so values at and near multiples of pi come out exact.
    Used by truncated_overlap, where num/den = (m - m')/k_x and q*den = d.
    """
    period = q * den
    if num % period == 0:
        return complex(1.0, 0.0)
    numerator = math.sin(math.pi * (num % (2 * den)) / den)
    denominator = q * math.sin(math.pi * (num % (2 * period)) / period)
    phase = cmath.exp(1j * math.pi * ((num * (q - 1)) % (2 * period)) / period)
    return phase * numerator / denominator


def truncated_overlap(config: LatticeConfig, m: int, m_prime: int) -> complex:
    """Overlap of two same-block truncated momentum states.

    Depends only on the index difference: the value is the normalized
    geometric sum of order w_x at argument (m - m')/k_x.  States whose index
    difference is a multiple of k_x are orthogonal.
    """
    m = _require_index(m, config.d, "momentum index")
    m_prime = _require_index(m_prime, config.d, "momentum index")
    return _dirichlet_delta_ratio(config.w_x, m - m_prime, config.k_x)

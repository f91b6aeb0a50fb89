"""Geometry and bases of a d-site periodic lattice.

Position states are the computational basis.  Momentum states are their image
under the discrete Fourier transform with kernel exp(i*2*pi*m*n/d)/sqrt(d),
so every operator here is materialized as a dense complex matrix in exact
correspondence with its defining sum.  Dense construction is deliberate: the
brute-force engine that consumes these matrices is capped at small d, and the
analytic evaluators never build matrices at all.

All functions are pure and all returned arrays are marked read-only, so
values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np

from .tolerances import EIGENVALUE_FLOOR, TOL_CONSTRUCT

Basis = Literal["position", "momentum"]


def _require_index(value: int, upper: int, label: str) -> int:
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
        raise ValueError(f"{label} must be an integer, got {value!r}")
    if not 0 <= value < upper:
        raise ValueError(f"{label}={value} outside [0, {upper})")
    return int(value)


@dataclass(frozen=True)
class LatticeConfig:
    """Integer geometry of the lattice and its coarse-grainings.

    d is the number of sites (and the Hilbert-space dimension); w_x and w_p
    are the coarse-graining widths for position and momentum.  Both widths
    must divide d exactly, so the outcome counts k_x = d/w_x and k_p = d/w_p
    are integers.  All lattice indices are 0-based.
    """

    d: int
    w_x: int
    w_p: int

    def __post_init__(self) -> None:
        for name, value in (("d", self.d), ("w_x", self.w_x), ("w_p", self.w_p)):
            if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")
        for name, w in (("w_x", self.w_x), ("w_p", self.w_p)):
            if not 1 <= w <= self.d:
                raise ValueError(f"{name}={w} outside [1, d={self.d}]")
            if self.d % w != 0:
                raise ValueError(f"{name}={w} does not divide d={self.d}")

    @property
    def k_x(self) -> int:
        """Number of coarse position outcomes, d / w_x."""
        return self.d // self.w_x

    @property
    def k_p(self) -> int:
        """Number of coarse momentum outcomes, d / w_p."""
        return self.d // self.w_p


@dataclass(frozen=True, eq=False)
class QuantumState:
    """A pure state (length-d vector) or density operator (d x d matrix),
    expressed in the position basis.

    Use the ``pure`` and ``density`` constructors; they validate normalization,
    hermiticity, and positivity to the package tolerances and freeze the data.
    """

    kind: Literal["pure", "density"]
    data: np.ndarray

    @classmethod
    def pure(cls, amplitudes) -> "QuantumState":
        vec = np.array(amplitudes, dtype=complex)
        if vec.ndim != 1 or vec.shape[0] < 1:
            raise ValueError("pure state requires a 1-d amplitude vector")
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > TOL_CONSTRUCT:
            raise ValueError(f"pure-state norm {norm} deviates from 1 beyond {TOL_CONSTRUCT}")
        vec.setflags(write=False)
        return cls("pure", vec)

    @classmethod
    def density(cls, matrix) -> "QuantumState":
        rho = np.array(matrix, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] < 1:
            raise ValueError("density operator must be a square matrix")
        if float(np.max(np.abs(rho - rho.conj().T))) > TOL_CONSTRUCT:
            raise ValueError("density operator is not Hermitian within tolerance")
        trace = float(np.trace(rho).real)
        if abs(trace - 1.0) > TOL_CONSTRUCT:
            raise ValueError(f"density-operator trace {trace} deviates from 1")
        if float(np.min(np.linalg.eigvalsh(rho))) < EIGENVALUE_FLOOR:
            raise ValueError("density operator has a negative eigenvalue beyond tolerance")
        rho.setflags(write=False)
        return cls("density", rho)

    @property
    def dim(self) -> int:
        return int(self.data.shape[0])

    def density_matrix(self) -> np.ndarray:
        """The state as a d x d density operator (writable copy)."""
        if self.kind == "pure":
            return np.outer(self.data, self.data.conj())
        return np.array(self.data)


@lru_cache(maxsize=256)
def _dft(d: int) -> np.ndarray:
    idx = np.arange(d)
    mat = np.exp(2j * np.pi * np.outer(idx, idx) / d) / np.sqrt(d)
    mat.setflags(write=False)
    return mat


def dft_matrix(config: LatticeConfig) -> np.ndarray:
    """Unitary transform F with entries F[m, n] = exp(i*2*pi*m*n/d)/sqrt(d).

    Column m is the momentum state of index m written in the position basis.
    The matrix is symmetric, so the same indexing reads row-wise.
    """
    return _dft(config.d)


def position_basis_state(config: LatticeConfig, n: int) -> QuantumState:
    """Pure state localized on lattice site n."""
    n = _require_index(n, config.d, "position index")
    vec = np.zeros(config.d, dtype=complex)
    vec[n] = 1.0
    return QuantumState.pure(vec)


def momentum_basis_state(config: LatticeConfig, m: int) -> QuantumState:
    """Pure momentum state: amplitudes exp(i*2*pi*m*n/d)/sqrt(d) over sites n."""
    m = _require_index(m, config.d, "momentum index")
    return QuantumState.pure(dft_matrix(config)[:, m])


def translation_matrix(config: LatticeConfig, basis: Basis) -> np.ndarray:
    """Unitary cyclic shift of the chosen basis, as a matrix in the position
    basis.

    The position shift sends site n to site n+1 (mod d).  The momentum shift
    sends momentum index m to m+1 (mod d) and therefore acts diagonally on
    position states, multiplying site n by exp(i*2*pi*n/d).
    """
    d = config.d
    if basis == "position":
        return np.roll(np.eye(d, dtype=complex), 1, axis=0)
    if basis == "momentum":
        return np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    raise ValueError(f"basis must be 'position' or 'momentum', got {basis!r}")

"""Conversion between unitless lattice quantities and proper physical units.

With total length L over d sites, the lattice spacing is delta_x = L/d and
the momentum quantum is delta_p = 2*pi*hbar/L, so one phase-space cell is
delta_x * delta_p = 2*pi*hbar/d and the coarse cell w_x*w_p cells wide
closes the full Planck cell exactly when w_x*w_p = d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .analytic import one_minus_sinc

#: above this, an integer d no longer round-trips through a double and all
#: derived quantities carry a documented precision caveat
FLOAT_EXACT_INT_MAX = 2.0**53


@dataclass(frozen=True)
class PhysicalUnits:
    """Physical scales of a lattice of d sites spanning total length L.

    d is carried as a float so sizes beyond 2**53 (for instance 1e35, one
    Planck length per site in a meter-long box) remain representable; every
    derived quantity is a product or ratio of doubles, so nothing overflows.
    """

    hbar: float
    L: float
    d: float

    def __post_init__(self) -> None:
        for name, value in (("hbar", self.hbar), ("L", self.L)):
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")
        if not (math.isfinite(self.d) and self.d >= 1.0):
            raise ValueError(f"d must be a finite number >= 1, got {self.d!r}")

    @property
    def delta_x(self) -> float:
        """Lattice spacing L/d, the minimal length."""
        return self.L / self.d

    @property
    def delta_p(self) -> float:
        """Momentum quantum 2*pi*hbar/L."""
        return 2.0 * math.pi * self.hbar / self.L

    @property
    def l_u(self) -> float:
        """Intermediate length delta_x * sqrt(d): the geometric mean of the
        minimal length delta_x and the maximal length L."""
        return self.delta_x * math.sqrt(self.d)


def derive_units(hbar: float, L: float, d: float) -> PhysicalUnits:
    """Validated bundle of lattice scales; see PhysicalUnits."""
    return PhysicalUnits(float(hbar), float(L), float(d))


class CoarseScales(NamedTuple):
    delta_X: float
    delta_P: float
    phase_cell: float


def coarse_to_units(units: PhysicalUnits, w_x: int, w_p: int) -> CoarseScales:
    """Coarse resolutions Delta_x = delta_x*w_x and Delta_p = delta_p*w_p,
    plus their phase-space cell Delta_x*Delta_p = 2*pi*hbar*(w_x*w_p/d)."""
    for name, w in (("w_x", w_x), ("w_p", w_p)):
        if w < 1:
            raise ValueError(f"{name} must be >= 1, got {w}")
    delta_x_cg = units.delta_x * w_x
    delta_p_cg = units.delta_p * w_p
    return CoarseScales(delta_x_cg, delta_p_cg, delta_x_cg * delta_p_cg)


def perturbation_in_units(units: PhysicalUnits, w_x: int, w_p: int) -> float:
    """Integral-form lattice correction expressed through physical scales:

        (1/(6*pi)) * (delta_x/Delta_x)^2 * [theta/2 + (cos(theta) - 1)/theta]

    with theta = Delta_x*Delta_p/hbar.  The bracket is evaluated in the
    cancellation-free form theta*(1 - s)(1 + s)/2 with s = sinc(theta/2).
    This is a pure reparameterization of the integral form in lattice units;
    on the curve Delta_x*Delta_p = 2*pi*hbar it reduces to
    (1/6)*(delta_x/Delta_x)^2.
    """
    scales = coarse_to_units(units, w_x, w_p)
    ratio = units.delta_x / scales.delta_X
    theta = scales.phase_cell / units.hbar
    gap = one_minus_sinc(0.5 * theta)
    return ratio * ratio / (6.0 * math.pi) * theta * gap * (2.0 - gap) / 2.0

"""Closed-form and asymptotic evaluators for the state-averaged agreement
probability, plus the polygamma special functions used to close
harmonic-type sums.

closed_form is the exact lattice expression.  continuum_form is its
infinite-lattice limit at fixed interval fraction, perturbation_* give the
leading lattice-discreteness correction, the bound evaluators bracket the two
measurement regimes, and the curve evaluators describe the plateau on the
transition curve w_x * w_p = d.

Summations over momentum indices run to w_p - 1, which can reach 1e4 and
suffers near-cancellation at small arguments, so every sum here is
accumulated with math.fsum and sine arguments of the form pi*(integer)/d are
reduced with integer arithmetic first (multiples of pi then vanish exactly).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import cos, fsum, log, pi, sin
from typing import Optional

import numpy as np
from scipy.integrate import quad

from .errors import NumericCheckError
from .lattice import LatticeConfig


def _sin_sq(numerator: int, d: int) -> float:
    """sin^2(pi * numerator / d) with the integer numerator reduced mod d."""
    return sin(pi * (numerator % d) / d) ** 2


def closed_form(d: int, w_x: int, w_p: int) -> float:
    """Exact state-averaged agreement probability

        w_x/d + (2/(w_x*w_p*d)) * sum_{n=1}^{w_p-1}
            (w_p - n) * sin^2(pi*n*w_x/d) / sin^2(pi*n/d).

    Symmetric under exchange of w_x and w_p even though the expression is
    not manifestly so.
    """
    LatticeConfig(d, w_x, w_p)
    total = fsum(
        (w_p - n) * _sin_sq(n * w_x, d) / sin(pi * n / d) ** 2
        for n in range(1, w_p)
    )
    return w_x / d + 2.0 / (w_x * w_p * d) * total


def _require_ratio(L_ratio: float) -> float:
    L_ratio = float(L_ratio)
    if not 0.0 < L_ratio <= 1.0:
        raise ValueError(f"L_ratio must lie in (0, 1], got {L_ratio}")
    return L_ratio


def _require_positive_int(value: int, label: str) -> int:
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool) or value < 1:
        raise ValueError(f"{label} must be a positive integer, got {value!r}")
    return int(value)


def continuum_form(L_ratio: float, w_p: int) -> float:
    """Infinite-lattice limit of closed_form at fixed interval fraction
    L_ratio = Delta_x / L and fixed momentum width:

        L_ratio + (1/L_ratio)*(2/w_p) * sum_{n=1}^{w_p-1}
            (w_p - n) * sin^2(pi*n*L_ratio) / (pi*n)^2.

    1/L_ratio need not be an integer.
    """
    L_ratio = _require_ratio(L_ratio)
    w_p = _require_positive_int(w_p, "w_p")
    total = fsum(
        (w_p - n) * sin(pi * n * L_ratio) ** 2 / (pi * pi * n * n)
        for n in range(1, w_p)
    )
    return L_ratio + (1.0 / L_ratio) * (2.0 / w_p) * total


def perturbation_exact(d: int, w_x: int, w_p: int) -> float:
    """Leading lattice-discreteness correction to the continuum value,
    exact sum form:

        (2/(3*w_x*w_p*d)) * sum_{n=1}^{w_p-1} (w_p - n) * sin^2(pi*n*w_x/d).
    """
    LatticeConfig(d, w_x, w_p)
    total = fsum((w_p - n) * _sin_sq(n * w_x, d) for n in range(1, w_p))
    return 2.0 / (3.0 * w_x * w_p * d) * total


def perturbation_from_ratio(L_ratio: float, w_p: int, d: int) -> float:
    """The same correction parameterized like continuum_form:

        (1/L_ratio)*(2/w_p) * sum_{n=1}^{w_p-1}
            (w_p - n) * sin^2(pi*n*L_ratio) / (3*d^2).

    Agrees with perturbation_exact when L_ratio = w_x/d.
    """
    L_ratio = _require_ratio(L_ratio)
    w_p = _require_positive_int(w_p, "w_p")
    d = _require_positive_int(d, "d")
    total = fsum((w_p - n) * sin(pi * n * L_ratio) ** 2 for n in range(1, w_p))
    return (1.0 / L_ratio) * (2.0 / w_p) * total / (3.0 * d * d)


def one_minus_sinc(h: float) -> float:
    """1 - sin(h)/h without cancellation: power series below |h| = 1/4,
    direct evaluation above (where the difference is no longer small)."""
    if abs(h) < 0.25:
        h_sq = h * h
        # 1 - sinc = h^2/3! - h^4/5! + h^6/7! - h^8/9! + h^10/11! - ...
        return h_sq * (1.0 / 6.0 - h_sq * (1.0 / 120.0 - h_sq * (
            1.0 / 5040.0 - h_sq * (1.0 / 362880.0 - h_sq / 39916800.0))))
    return 1.0 - sin(h) / h


def perturbation_integral(d: int, w_x: int, w_p: int) -> float:
    """Integral approximation of the lattice correction:

        (2/3)*(w_p/(w_x*d)) * [1/4 + (cos(2*pi*c) - 1)/(8*pi^2*c^2)]

    with c = w_x*w_p/d.  The bracket is evaluated in the equivalent
    cancellation-free form (1 - s)(1 + s)/4 with s = sin(pi*c)/(pi*c), which
    keeps full relative accuracy when c is small.

    Derived for w_p >> 1; relative error against perturbation_exact stays
    below 2% once w_p >= 100 (away from w_x = d, where the exact correction
    vanishes).  On the curve c = 1 the bracket is exactly 1/4 and the value
    reduces to w_p/(6*w_x*d).
    """
    LatticeConfig(d, w_x, w_p)
    gap = one_minus_sinc(pi * w_x * w_p / d)
    bracket = gap * (2.0 - gap) / 4.0
    return (2.0 / 3.0) * (w_p / (w_x * d)) * bracket


@dataclass(frozen=True)
class BoundPair:
    """Diagonal bounds at width w = w_x = w_p; None marks the side whose
    validity domain excludes this w."""

    d: int
    w: int
    upper: Optional[float]
    lower: Optional[float]


def upper_bound(d: int, w: int) -> Optional[float]:
    """Diagonal upper bound w^2/d, valid for w < sqrt(d).

    Returns None (not applicable) for w >= sqrt(d); the boundary itself is
    excluded.
    """
    LatticeConfig(d, w, w)
    if w * w >= d:
        return None
    return w * w / d


def lower_bound(d: int, w: int) -> Optional[float]:
    """Diagonal lower bound, valid for w > sqrt(d):

        1 - (2/pi^2) * (ln(w^2/d) + 3*pi^2/2) / (w^2/d).

    Returns None for w <= sqrt(d).  Just above sqrt(d) the value is negative;
    it is reported as-is (a valid but vacuous bound), not clamped.
    """
    LatticeConfig(d, w, w)
    if w * w <= d:
        return None
    ratio = w * w / d
    return 1.0 - (2.0 / (pi * pi)) * (log(ratio) + 1.5 * pi * pi) / ratio


def bound_pair(d: int, w: int) -> BoundPair:
    """Both diagonal bounds at width w; see upper_bound and lower_bound."""
    return BoundPair(d=d, w=w, upper=upper_bound(d, w), lower=lower_bound(d, w))


@dataclass(frozen=True)
class CurvePoint:
    """Agreement-probability value on the transition curve at momentum
    width w_p."""

    w_p: int
    value: float


def curve_value(w_p: int) -> CurvePoint:
    """State-averaged agreement probability on the curve w_x * w_p = d in
    the regime w_p << d:

        1/w_p + (2/pi^2) * sum_{n=1}^{w_p-1} (w_p - n) * sin^2(pi*n/w_p) / n^2.

    Decreases from 1 at w_p = 1 and settles near 0.656 by w_p = 16.
    """
    w_p = _require_positive_int(w_p, "w_p")
    total = fsum((w_p - n) * sin(pi * n / w_p) ** 2 / (n * n) for n in range(1, w_p))
    return CurvePoint(w_p, 1.0 / w_p + 2.0 / (pi * pi) * total)


def curve_limit_integral() -> float:
    """Large-w_p limit of curve_value:

        (2/pi^2) * integral_0^1 (1 - alpha) * sin^2(pi*alpha) / alpha^2 d(alpha),

    evaluated by adaptive quadrature.  The alpha -> 0 endpoint is removable
    (the integrand tends to pi^2) and is replaced by its analytic limit.
    """
    def integrand(alpha: float) -> float:
        if alpha < 1e-8:
            return pi * pi * (1.0 - alpha)
        s = sin(pi * alpha)
        return (1.0 - alpha) * s * s / (alpha * alpha)

    value, estimate = quad(integrand, 0.0, 1.0, epsabs=1e-10, epsrel=1e-10)
    if estimate * 2.0 / (pi * pi) > 1e-8:
        raise NumericCheckError(
            f"curve-limit quadrature did not converge below 1e-8 "
            f"(error estimate {estimate})")
    return 2.0 / (pi * pi) * value


# Asymptotic tails of the polygamma functions, truncated after the
# fourteenth Bernoulli number; the recurrence below lifts arguments past
# this switch point first, where the truncation error is ~1e-17 relative.
_ASYMPTOTIC_SWITCH = 12.0
_DIGAMMA_TAIL = (1 / 12, -1 / 120, 1 / 252, -1 / 240, 1 / 132, -691 / 32760, 1 / 12)
_TRIGAMMA_TAIL = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6)


def _require_positive_real(x: float, label: str) -> float:
    x = float(x)
    if not (x > 0.0 and math.isfinite(x)):
        raise ValueError(f"{label} requires a finite x > 0, got {x}")
    return x


def digamma(x: float) -> float:
    """Logarithmic derivative of the gamma function, for x > 0.

    Upward recurrence psi(x+1) = psi(x) + 1/x lifts the argument above 12,
    then the asymptotic series ln x - 1/(2x) - sum_k B_{2k}/(2k*x^{2k}) is
    summed through the B_14 term.  Accurate to about 1e-10 relative on
    [1e-3, 1e6] (the function has a zero near x = 1.46, where only absolute
    accuracy is meaningful).
    """
    x = _require_positive_real(x, "digamma")
    shift = 0.0
    while x <= _ASYMPTOTIC_SWITCH:
        shift -= 1.0 / x
        x += 1.0
    inv_sq = 1.0 / (x * x)
    tail = 0.0
    for coeff in reversed(_DIGAMMA_TAIL):
        tail = (tail + coeff) * inv_sq
    return shift + math.log(x) - 0.5 / x - tail


def trigamma(x: float) -> float:
    """Derivative of digamma, for x > 0; same recurrence and series scheme
    with tail 1/x + 1/(2x^2) + sum_k B_{2k}/x^{2k+1} through B_14."""
    x = _require_positive_real(x, "trigamma")
    shift = 0.0
    while x <= _ASYMPTOTIC_SWITCH:
        shift += 1.0 / (x * x)
        x += 1.0
    inv = 1.0 / x
    inv_sq = inv * inv
    tail = 0.0
    for coeff in reversed(_TRIGAMMA_TAIL):
        tail = (tail + coeff) * inv_sq
    return shift + inv + 0.5 * inv_sq + tail * inv


def harmonic_sum_identities(g: int, x: float) -> tuple[float, float]:
    """Residuals of the polygamma closures of two harmonic-type sums:

        sum_{l=1}^{g-1} 1/(l-x)   = psi(g-x) - psi(x) - pi*cot(pi*x)
        sum_{l=1}^{g-1} 1/(l-x)^2 = -psi'(g-x) - psi'(x) + pi^2/sin^2(pi*x)

    for integer g >= 2 and non-integer x in (0, 1).  Returns |lhs - rhs| for
    each identity; both should be at rounding level.
    """
    if not isinstance(g, (int, np.integer)) or isinstance(g, bool) or g < 2:
        raise ValueError(f"g must be an integer >= 2, got {g!r}")
    x = float(x)
    if not 0.0 < x < 1.0:
        raise ValueError(f"x must lie strictly inside (0, 1), got {x}")
    lhs_1 = fsum(1.0 / (l - x) for l in range(1, g))
    rhs_1 = digamma(g - x) - digamma(x) - pi / math.tan(pi * x)
    lhs_2 = fsum(1.0 / (l - x) ** 2 for l in range(1, g))
    rhs_2 = -trigamma(g - x) - trigamma(x) + pi * pi / sin(pi * x) ** 2
    return abs(lhs_1 - rhs_1), abs(lhs_2 - rhs_2)

"""Normalized sinc kernel, its derivatives of all orders, and the associated
interpolation coefficient families.

Conventions:
    sinc(x) = sin(pi x) / (pi x),  sinc(0) = 1

so that sinc(k) = delta_{k0} on the integers.  Every formula in this library
uses the normalized kernel; the unnormalized sin(x)/x never appears.

Derivatives have the closed form, for x != 0,

    sinc^(m)(x) = ((-1)^m m! / (pi x^(m+1)))
                  * ( sin(pi x) * sum_{v=0..floor(m/2)}   (-1)^v (pi x)^(2v) /(2v)!
                    - cos(pi x) * sum_{v=0..floor((m-1)/2)}(-1)^v (pi x)^(2v+1)/(2v+1)! )

continuously extended by sinc^(m)(0) = 0 for odd m and
(-1)^(m/2) pi^m / (m+1) for even m.  Near the origin the closed form cancels
catastrophically, so evaluation switches to the termwise-differentiated power
series of sinc (see ``_SERIES_RADIUS``).

Two weight families drive the higher-order differentiation formulas:

    odd order 2m-1:
        a(m, k) = (2m-1)! / (pi (k-1/2)^(2m))
                  * sum_{j=0..m-1} (-1)^j (pi (k-1/2))^(2j) / (2j)!
    even order 2m (k != 0):
        b(m, k) = (2m)! / (pi k^(2m+1))
                  * sum_{j=0..m-1} (-1)^j (pi k)^(2j+1) / (2j+1)!
        b(m, 0) = (-1)^(m+1) pi^(2m) / (2m+1)

equivalently a(m, k) = (-1)^(k+1) sinc^(2m-1)(1/2 - k) and
b(m, k) = (-1)^(k+1) sinc^(2m)(-k).  Their absolute sums are exactly

    sum_k |a(m, k)| = pi^(2m-1),      sum_k |b(m, k)| = pi^(2m),

which is what makes the differentiation operators bounded with norm sigma^r.

All functions here are pure; coefficient tables are immutable and safe to
share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Literal

import numpy as np

from .errors import TruncationError

Parity = Literal["odd", "even"]

#: series/closed-form switch radius; 12 series terms keep the truncation
#: remainder below 1e-16 for every order m <= 8 inside this radius.
_SERIES_RADIUS = 0.05
_SERIES_TERMS = 12

#: closed form loses roughly m*log10(1/(pi|x|)) digits to cancellation; past
#: this loss factor the reference branch re-evaluates in extended precision.
_CANCEL_GUARD = 1e3

_E = math.e
_PI = math.pi


def _require_finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"argument must be finite, got {x!r}")
    return x


def sinc(x: float) -> float:
    """Normalized sinc, sin(pi x)/(pi x), with the removable singularity filled.

    Exact special values: sinc(0) = 1.0 and sinc(k) = 0.0 for every nonzero
    integer k.  Arguments within a few ulps of an integer are snapped onto it
    first (lattice coordinates are typically produced as (k h)/h, which can be
    off by one rounding), so sample nodes behave exactly like Kronecker nodes.
    """
    x = snap_integer(_require_finite(x))
    if x == 0.0:
        return 1.0
    if x == round(x):
        return 0.0
    if abs(x) < _SERIES_RADIUS:
        return _series_value(0, x)
    return math.sin(_PI * x) / (_PI * x)


def _snap_grid(x: np.ndarray) -> np.ndarray:
    r = np.round(x)
    near = np.abs(x - r) <= 8.0 * 2.220446049250313e-16 * np.maximum(1.0, np.abs(x))
    return np.where(near, r, x)


def sinc_grid(x) -> np.ndarray:
    """Vectorized normalized sinc with exact integer zeros (ulp-snapped)."""
    x = _snap_grid(np.asarray(x, dtype=float))
    safe = np.where(x == 0.0, 1.0, x)
    out = np.sin(_PI * safe) / (_PI * safe)
    out = np.where(x == 0.0, 1.0, out)
    return np.where((x == np.round(x)) & (x != 0.0), 0.0, out)


def _series_coeff(m: int, j: int) -> float:
    # d^m/dx^m of (-1)^j (pi x)^(2j)/(2j+1)! evaluated coefficientwise
    return ((-1.0) ** j * _PI ** (2 * j) / math.factorial(2 * j + 1)
            * math.factorial(2 * j) / math.factorial(2 * j - m))


def _series_value(m: int, x: float) -> float:
    j0 = (m + 1) // 2
    total = 0.0
    for i in range(_SERIES_TERMS):
        j = j0 + i
        total += _series_coeff(m, j) * x ** (2 * j - m)
    return total


def _series_grid(m: int, x: np.ndarray) -> np.ndarray:
    j0 = (m + 1) // 2
    total = np.zeros_like(x)
    for i in range(_SERIES_TERMS):
        j = j0 + i
        total += _series_coeff(m, j) * x ** (2 * j - m)
    return total


def _closed_value(m: int, x: float) -> float:
    s1 = sum((-1.0) ** v * (_PI * x) ** (2 * v) / math.factorial(2 * v)
             for v in range(m // 2 + 1))
    if m >= 1:
        s2 = sum((-1.0) ** v * (_PI * x) ** (2 * v + 1) / math.factorial(2 * v + 1)
                 for v in range((m - 1) // 2 + 1))
    else:
        s2 = 0.0
    lead = (-1.0) ** m * math.factorial(m) / (_PI * x ** (m + 1))
    return lead * (math.sin(_PI * x) * s1 - math.cos(_PI * x) * s2)


def _closed_grid(m: int, x: np.ndarray) -> np.ndarray:
    px = _PI * x
    s1 = np.zeros_like(x)
    for v in range(m // 2 + 1):
        s1 += (-1.0) ** v * px ** (2 * v) / math.factorial(2 * v)
    s2 = np.zeros_like(x)
    for v in range((m - 1) // 2 + 1):
        s2 += (-1.0) ** v * px ** (2 * v + 1) / math.factorial(2 * v + 1)
    lead = (-1.0) ** m * math.factorial(m) / (_PI * x ** (m + 1))
    return lead * (np.sin(px) * s1 - np.cos(px) * s2)


def sinc_derivative_series(m: int, x: float) -> float:
    """Power-series branch of sinc^(m); spectrally accurate for small |x|."""
    if m < 0:
        raise ValueError("derivative order must be >= 0")
    x = _require_finite(x)
    return _series_value(m, x)


def sinc_derivative_closed(m: int, x: float) -> float:
    """Closed-form branch of sinc^(m), valid for x != 0.

    The two bracketed sums cancel to O((pi x)^(m+1)) as x -> 0, losing about
    (pi|x|)^(-m) in relative precision.  When the estimated loss exceeds
    ``_CANCEL_GUARD`` the bracket is re-evaluated with mpmath at a working
    precision sized to the loss, so this branch stays trustworthy arbitrarily
    close to the origin (used to cross-validate the series branch).
    """
    if m < 0:
        raise ValueError("derivative order must be >= 0")
    x = _require_finite(x)
    if x == 0.0:
        raise ValueError("closed form undefined at x = 0; use the series branch")
    loss = (_PI * abs(x)) ** (-m) if _PI * abs(x) < 1.0 else 1.0
    if loss <= _CANCEL_GUARD:
        return _closed_value(m, x)
    import mpmath as mp

    digits_lost = m * math.log10(1.0 / (_PI * abs(x)))
    with mp.workdps(25 + int(math.ceil(digits_lost))):
        xm = mp.mpf(x)
        px = mp.pi * xm
        s1 = mp.fsum((-1) ** v * px ** (2 * v) / mp.factorial(2 * v)
                     for v in range(m // 2 + 1))
        s2 = mp.fsum((-1) ** v * px ** (2 * v + 1) / mp.factorial(2 * v + 1)
                     for v in range((m - 1) // 2 + 1))
        lead = (-1) ** m * mp.factorial(m) / (mp.pi * xm ** (m + 1))
        return float(lead * (mp.sin(px) * s1 - mp.cos(px) * s2))


def sinc_derivative(m: int, x: float) -> float:
    """m-th derivative of the normalized sinc at a real point.

    Dispatches to the power series for |x| < 0.05 and to the closed form
    otherwise.  sinc_derivative(0, x) == sinc(x).
    """
    if m < 0:
        raise ValueError("derivative order must be >= 0")
    x = _require_finite(x)
    if m == 0:
        return sinc(x)
    if abs(x) < _SERIES_RADIUS:
        return _series_value(m, x)
    return _closed_value(m, x)


def sinc_derivative_grid(m: int, x) -> np.ndarray:
    """Vectorized sinc^(m) over an array of real points.

    Same branch structure as :func:`sinc_derivative`; the closed form is
    evaluated in double precision only, which is ample away from the series
    radius for the orders used by the sampling kernels.
    """
    if m < 0:
        raise ValueError("derivative order must be >= 0")
    x = np.asarray(x, dtype=float)
    if m == 0:
        return sinc_grid(x)
    out = np.empty_like(x)
    small = np.abs(x) < _SERIES_RADIUS
    if small.any():
        out[small] = _series_grid(m, x[small])
    big = ~small
    if big.any():
        out[big] = _closed_grid(m, x[big])
    return out


# ---------------------------------------------------------------------------
# coefficient families
# ---------------------------------------------------------------------------

def boas_coefficient(parity: Parity, m: int, k: int) -> float:
    """Weight attached to shift index k in the order-(2m-1) or order-2m formula.

    parity="odd" returns a(m, k); parity="even" returns b(m, k) including the
    central value b(m, 0) = (-1)^(m+1) pi^(2m)/(2m+1).  Delegates to the
    vectorized evaluator so scalar and grid values are bit-identical.
    """
    return float(boas_coefficient_grid(parity, m, np.array([int(k)]))[0])


def boas_coefficient_grid(parity: Parity, m: int, ks) -> np.ndarray:
    """Vectorized :func:`boas_coefficient` over an integer array."""
    _check_parity(parity)
    if m < 1:
        raise ValueError("half-order m must be >= 1")
    ks = np.asarray(ks)
    if parity == "odd":
        y = ks - 0.5
        s = np.zeros_like(y, dtype=float)
        for j in range(m):
            s += (-1.0) ** j * (_PI * y) ** (2 * j) / math.factorial(2 * j)
        return math.factorial(2 * m - 1) / (_PI * y ** (2 * m)) * s
    out = np.empty(ks.shape, dtype=float)
    zero = ks == 0
    out[zero] = (-1.0) ** (m + 1) * _PI ** (2 * m) / (2 * m + 1)
    kn = ks[~zero].astype(float)
    s = np.zeros_like(kn)
    for j in range(m):
        s += (-1.0) ** j * (_PI * kn) ** (2 * j + 1) / math.factorial(2 * j + 1)
    out[~zero] = math.factorial(2 * m) / (_PI * kn ** (2 * m + 1)) * s
    return out


def _sharp_floor(parity: Parity, m: int) -> int:
    # the inner alternating sums have increasing term magnitudes once the
    # argument passes sqrt of the top factorial ratio; beyond that index the
    # whole sum is bounded by its largest term
    if parity == "odd":
        if m == 1:
            return 1
        return max(1, int(math.ceil(math.sqrt((2 * m - 2) * (2 * m - 3)) / _PI + 0.5)))
    return max(1, int(math.ceil(math.sqrt((2 * m - 1) * (2 * m - 2)) / _PI)))


def coefficient_tail_bound(parity: Parity, m: int, halfwidth: int) -> float:
    """Rigorous bound on sum_{|k| > halfwidth} |coefficient|.

    The inner sums of the coefficient formulas alternate with increasing term
    magnitudes once pi^2 (k - 1/2)^2 >= (2m-2)(2m-3) (odd family) resp.
    pi^2 k^2 >= (2m-1)(2m-2) (even family), so they are bounded by their last
    term there.  That yields the sharp-constant majorants

        |a(m, k)| <= (2m-1) pi^(2m-3) / (k - 1/2)^2
        |b(m, k)| <= 2m pi^(2m-2) / k^2

    whose k^(-2) sums compare with integrals:

        tail_a(K) <= 2 (2m-1) pi^(2m-3) / (K - 1/2)
        tail_b(K) <= 4 m pi^(2m-2) / K.

    Below the validity floor a crude e-factorial majorant
    ((2m-1)! e resp. (2m)! e in place of the sharp constant) takes over.
    """
    _check_parity(parity)
    if m < 1:
        raise ValueError("half-order m must be >= 1")
    K = int(halfwidth)
    if K < 1:
        raise ValueError("halfwidth must be >= 1")
    if parity == "odd":
        coarse = 2.0 * math.factorial(2 * m - 1) * _E * _PI ** (2 * m - 3) / (K - 0.5)
        if K >= _sharp_floor("odd", m):
            return min(coarse, 2.0 * (2 * m - 1) * _PI ** (2 * m - 3) / (K - 0.5))
        return coarse
    coarse = 2.0 * math.factorial(2 * m) * _E * _PI ** (2 * m - 2) / K
    if K >= _sharp_floor("even", m):
        return min(coarse, 4.0 * m * _PI ** (2 * m - 2) / K)
    return coarse


def coefficient_halfwidth(parity: Parity, m: int, tol: float) -> int:
    """Smallest half-width whose tail bound is <= tol (at least 1)."""
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    _check_parity(parity)
    if m < 1:
        raise ValueError("half-order m must be >= 1")
    if parity == "odd":
        guess = 2.0 * (2 * m - 1) * _PI ** (2 * m - 3) / tol + 0.5
    else:
        guess = 4.0 * m * _PI ** (2 * m - 2) / tol
    K = max(1, int(math.ceil(guess)))
    while K > 1 and coefficient_tail_bound(parity, m, K - 1) <= tol:
        K -= 1
    while coefficient_tail_bound(parity, m, K) > tol:
        K += 1
    return K


@dataclass(frozen=True)
class CoeffTable:
    """Truncated coefficient family with a certified tail bound.

    ``values`` maps every |k| <= halfwidth (k = 0 included only for even
    parity) to its coefficient, bit-identical to :func:`boas_coefficient`.
    ``tail`` bounds the absolute sum of all omitted coefficients, so

        sum(|values|) <= pi^(2m-1 or 2m) <= sum(|values|) + tail.
    """

    parity: Parity
    m: int
    halfwidth: int
    values: Dict[int, float] = field(repr=False)
    tail: float = 0.0

    def abs_sum(self) -> float:
        return float(sum(abs(v) for v in self.values.values()))

    def full_sum_target(self) -> float:
        exponent = 2 * self.m - 1 if self.parity == "odd" else 2 * self.m
        return _PI ** exponent


def coefficient_table(parity: Parity, m: int, tol: float,
                      max_halfwidth: int = 1_000_000) -> CoeffTable:
    """Build the smallest table whose analytic tail bound is <= tol.

    Raises :class:`TruncationError` carrying the achievable tail when the
    required half-width would exceed ``max_halfwidth``.
    """
    _check_parity(parity)
    if m < 1:
        raise ValueError("half-order m must be >= 1")
    K = coefficient_halfwidth(parity, m, tol)
    if K > max_halfwidth:
        achievable = coefficient_tail_bound(parity, m, max_halfwidth)
        raise TruncationError(
            f"tail {achievable:.3e} at half-width {max_halfwidth} exceeds tol {tol:.3e}",
            achievable=achievable,
        )
    ks = np.arange(-K, K + 1)
    coeffs = boas_coefficient_grid(parity, m, ks)
    values = {int(k): float(c) for k, c in zip(ks, coeffs)}
    return CoeffTable(parity=parity, m=m, halfwidth=K, values=values,
                      tail=coefficient_tail_bound(parity, m, K))


def zero_sum_residual(m: int, x: float, halfwidth: int) -> float:
    """|sum_{|k| <= halfwidth} sinc^(m)(x - k)|.

    The full lattice sum of any derivative of the kernel vanishes; the
    symmetric partial sums here tend to 0.  Terms are accumulated as
    left/right pairs around k = 0 so that odd symmetry cancels exactly in
    floating point (e.g. m = 1 at x = 0 returns 0.0 for every half-width).
    """
    if m < 1:
        raise ValueError("derivative order must be >= 1")
    K = int(halfwidth)
    if K < 1:
        raise ValueError("halfwidth must be >= 1")
    x = _require_finite(x)
    ks = np.arange(1, K + 1)
    pair = sinc_derivative_grid(m, x - ks) + sinc_derivative_grid(m, x + ks)
    total = sinc_derivative(m, x) + float(np.sum(pair))
    return abs(total)


def snap_integer(u: float, ulps: float = 8.0) -> float:
    """Collapse u onto the nearest integer when it differs only by rounding.

    Lattice coordinates are often produced as (k*h)/h; snapping restores the
    exact Kronecker behavior of the kernel at sample nodes.
    """
    r = round(u)
    if u != r and abs(u - r) <= ulps * 2.220446049250313e-16 * max(1.0, abs(u)):
        return float(r)
    return float(u)


def _check_parity(parity: str) -> None:
    if parity not in ("odd", "even"):
        raise ValueError(f"parity must be 'odd' or 'even', got {parity!r}")

"""Discrete-norm comparisons, embedding constants, Favard constants, and the
Landau-Kolmogorov-Stein inequality checker.

The central fact: for f of exponential type sigma in L^p and any step h > 0,
the lattice p-norm of its samples is controlled both ways,

    ||f||_p <= sup_x ( h sum_k |f(x - k h)|^p )^(1/p) <= (1 + h sigma) ||f||_p

(with the middle expression read as sup_k |f(x - k h)| when p = inf).  The
upper half alone is the sampled-norm bound; together they give the embedding
||f||_q <= h^(1/q - 1/p) (1 + h sigma) ||f||_p for p <= q.

Favard constants

    K_j = (4/pi) sum_{r>=0} (-1)^(r(j+1)) / (2r+1)^(j+1)

are the sharp constants in || D^k f ||^n <= C_{k,n} || D^n f ||^k || f ||^(n-k)
with C_{k,n} = K_{n-k}^n / K_n^(n-k).  Even-index constants increase inside
[1, 4/pi); odd-index ones decrease inside (pi/4, pi/2].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import QuadratureError
from .sampling import BandlimitedFn, UniformSamples

_PI = math.pi


# ---------------------------------------------------------------------------
# discrete norms and the two-sided sandwich
# ---------------------------------------------------------------------------

def discrete_norm(s: UniformSamples, p: float) -> float:
    """(h sum_k |f(k h)|^p)^(1/p) over the stored window; sup for p = inf.

    The window value is a lower bound for the full lattice norm; callers that
    need an upper bracket add the tail certificate themselves (see
    :func:`plancherel_polya_check`).
    """
    v = np.abs(s.values)
    if p == math.inf:
        return float(np.max(v)) if v.size else 0.0
    if p not in (1, 2, 1.0, 2.0):
        raise ValueError("p must be 1, 2, or inf")
    return float((s.h * np.sum(v ** p)) ** (1.0 / p))


@dataclass(frozen=True)
class SandwichReport:
    """Outcome of a two-sided sampled-norm check.

    middle_lo/middle_hi bracket sup_x of the shifted lattice norm (window
    value and window value plus the decay-certificate tail allowance).
    """

    p: float
    h: float
    sigma: float
    lower: float          # ||f||_p
    middle_lo: float
    middle_hi: float
    upper: float          # (1 + h sigma) ||f||_p
    slack_lower: float    # middle_hi - lower  (>= 0 when the sandwich holds)
    slack_upper: float    # upper - middle_hi
    passed: bool


def _lattice_norm_bracket(f: BandlimitedFn, h: float, p: float, x: float,
                          window: int) -> Tuple[float, float]:
    ks = np.arange(-window, window + 1)
    vals = np.abs(np.asarray(f(x - ks * h), dtype=float))
    if p == math.inf:
        lo = float(np.max(vals))
        return lo, max(lo, 0.0)  # sup over the window; tail never raises p=inf below sup_bound
    body = float(np.sum(vals ** p))
    tail = 0.0
    if f.envelope is not None:
        c, d = f.envelope
        if d * p > 1.0:
            # sum_{|k|>W} |f(x-kh)|^p <= 2 c^p / ((dp-1) h (W h - |x|)^{dp-1}),
            # integral comparison of the envelope
            reach = window * h - abs(x)
            if reach > 0.0:
                tail = 2.0 * c ** p / ((d * p - 1.0) * h * reach ** (d * p - 1.0))
            else:
                tail = math.inf
        else:
            tail = math.inf
    else:
        tail = math.inf
    lo = (h * body) ** (1.0 / p)
    hi = (h * (body + tail)) ** (1.0 / p) if math.isfinite(tail) else math.inf
    return lo, hi


def plancherel_polya_check(f: BandlimitedFn, h: float, p: float,
                           shifts: Optional[Sequence[float]] = None,
                           window: int = 100_000,
                           norm_value: Optional[float] = None) -> SandwichReport:
    """Verify ||f||_p <= sup_x (h sum_k |f(x - kh)|^p)^(1/p) <= (1+h sigma)||f||_p.

    The sup over x is taken on a shift grid covering one period [0, h) (the
    middle expression is h-periodic in x); 64 equispaced shifts by default.
    ||f||_p comes from the reference metadata when available, else from
    quadrature over the decay envelope.
    """
    if h <= 0.0:
        raise ValueError("step h must be positive")
    if shifts is None:
        shifts = [j * h / 64.0 for j in range(64)]
    if norm_value is not None:
        norm = float(norm_value)
    elif f.lp_norms is not None and p in f.lp_norms:
        norm = float(f.lp_norms[p])
    else:
        norm = _lp_norm_quadrature(f, p)
    mids = [_lattice_norm_bracket(f, h, p, float(x), window) for x in shifts]
    middle_lo = max(m[0] for m in mids)
    middle_hi = max(m[1] for m in mids)
    upper = (1.0 + h * f.sigma) * norm
    slack_lower = middle_hi - norm
    slack_upper = upper - middle_hi
    passed = bool(slack_lower >= -1e-12 * max(1.0, norm)
                  and slack_upper >= -1e-12 * max(1.0, norm)
                  and math.isfinite(middle_hi))
    return SandwichReport(p=p, h=h, sigma=f.sigma, lower=norm,
                          middle_lo=middle_lo, middle_hi=middle_hi,
                          upper=upper, slack_lower=slack_lower,
                          slack_upper=slack_upper, passed=passed)


def _lp_norm_quadrature(f: BandlimitedFn, p: float, half_width: float = 400.0,
                        nodes: int = 400_001) -> float:
    if p == math.inf:
        xs = np.linspace(-half_width, half_width, min(nodes, 200_001))
        return float(np.max(np.abs(np.asarray(f(xs), dtype=float))))
    if f.envelope is None:
        raise QuadratureError("finite-p norm needs a decay envelope")
    c, d = f.envelope
    if d * p <= 1.0:
        raise QuadratureError("envelope decay too weak for a finite L^p norm")
    xs = np.linspace(-half_width, half_width, nodes)
    vals = np.abs(np.asarray(f(xs), dtype=float)) ** p
    body = float(np.trapezoid(vals, xs))
    tail = 2.0 * c ** p / ((d * p - 1.0) * half_width ** (d * p - 1.0))
    return (body + tail) ** (1.0 / p)


def embedding_constant(p: float, q: float, h: float, sigma: float) -> float:
    """h^(1/q - 1/p) (1 + h sigma): the norm-growth factor in L^p -> L^q."""
    if not (1 <= p <= q):
        raise ValueError("need 1 <= p <= q")
    if h <= 0.0 or sigma < 0.0:
        raise ValueError("need h > 0 and sigma >= 0")
    inv_p = 0.0 if p == math.inf else 1.0 / p
    inv_q = 0.0 if q == math.inf else 1.0 / q
    return h ** (inv_q - inv_p) * (1.0 + h * sigma)


# ---------------------------------------------------------------------------
# Favard constants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FavardConstant:
    j: int
    value: float
    terms_used: int
    tail: float


def favard_constant(j: int, tol: float = 1e-12) -> FavardConstant:
    """K_j = (4/pi) sum_{r>=0} (-1)^(r(j+1)) / (2r+1)^(j+1), summed until the
    certified remainder falls below tol.

    Even j gives an alternating series; after 64 direct terms the remainder is
    Euler-transformed (valid and sign-alternating because 1/(2r+1)^(j+1) is
    completely monotone), which converges geometrically, with remainder
    bounded by the last transformed term.  Odd j gives a monotone series whose
    tail is replaced by the midpoint integral with an explicit f'/24
    correction bound.
    """
    if j < 0:
        raise ValueError("index j must be >= 0")
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    s = j + 1
    pref = 4.0 / _PI
    if j % 2 == 0:
        head_terms = 64
        head = sum((-1.0) ** r / (2.0 * r + 1.0) ** s for r in range(head_terms))
        # Euler transform of the remainder starting at r = head_terms
        depth = 64
        a = np.array([(2.0 * (head_terms + i) + 1.0) ** (-s) for i in range(depth)])
        total = 0.0
        used = head_terms
        bound = math.inf
        for n in range(depth - 1):
            term = a[0] / 2.0 ** (n + 1)
            total += term
            used += 1
            bound = a[0] / 2.0 ** (n + 1)  # transformed terms decrease
            if bound <= tol * _PI / 4.0:
                break
            a = a[:-1] - a[1:]  # forward difference, stays positive decreasing
        sign = (-1.0) ** head_terms
        value = pref * (head + sign * total)
        return FavardConstant(j=j, value=value, terms_used=used, tail=pref * bound)
    # monotone case: sum_{r > R} (2r+1)^(-s) = int_{R+1/2} (2t+1)^(-s) dt + err,
    # |err| <= |f'(R+1/2)|/24 by the midpoint rule on each unit cell
    R = 10_000
    while True:
        err = s * (2.0 * R + 2.0) ** (-s - 1) / 12.0
        if pref * err <= tol or R >= 10_000_000:
            break
        R *= 4
    rs = np.arange(0, R + 1, dtype=float)
    head = float(np.sum((2.0 * rs + 1.0) ** (-s)))
    tail_int = (2.0 * R + 2.0) ** (1.0 - s) / (2.0 * (s - 1.0))
    value = pref * (head + tail_int)
    return FavardConstant(j=j, value=value, terms_used=R + 1, tail=pref * err)


def lks_constant(k: int, n: int, tol: float = 1e-12) -> float:
    """Sharp constant C_{k,n} = K_{n-k}^n / K_n^(n-k)."""
    if not (0 < k < n):
        raise ValueError("need 0 < k < n")
    knk = favard_constant(n - k, tol).value
    kn = favard_constant(n, tol).value
    return knk ** n / kn ** (n - k)


@dataclass(frozen=True)
class LksReport:
    k: int
    n: int
    constant: float
    lhs: float   # ||D^k f||^n
    rhs: float   # C_{k,n} ||D^n f||^k ||f||^(n-k)
    passed: bool


def lks_check(norms: Tuple[float, float, float], k: int, n: int,
              tol: float = 1e-12) -> LksReport:
    """Check ||D^k f||^n <= C_{k,n} ||D^n f||^k ||f||^(n-k).

    ``norms`` is (||f||, ||D^k f||, ||D^n f||) measured in any norm attached
    to an isometry group (function sup-norms or abstract vector norms).
    """
    if not (0 < k < n):
        raise ValueError("need 0 < k < n")
    n0, nk, nn = (float(v) for v in norms)
    if min(n0, nk, nn) < 0.0:
        raise ValueError("norms must be nonnegative")
    c = lks_constant(k, n, tol)
    lhs = nk ** n
    rhs = c * nn ** k * n0 ** (n - k)
    return LksReport(k=k, n=n, constant=c, lhs=lhs, rhs=rhs,
                     passed=bool(lhs <= rhs * (1.0 + 1e-12)))

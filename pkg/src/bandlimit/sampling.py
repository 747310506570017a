"""Reconstruction of bandlimited functions from uniform samples.

A function of exponential type sigma that is bounded on the real line is
determined by its samples on the lattice k*pi/sigma.  This module implements:

* cardinal-series reconstruction of the function and its derivatives from
  uniform samples (``wks_eval``), with certified truncation tails;
* the Valiron/Tschakaloff expansion for merely bounded functions, whose
  extra 1/k factor restores convergence (``valiron_tschakaloff_eval``);
* the finite Riesz interpolation sum for trigonometric polynomial
  derivatives (``riesz_trig_derivative``);
* smoothing onto a prescribed exponential type by averaging against a
  nonnegative type-one kernel (``fejer_regularize``);
* a periodization residual used as a test oracle (``poisson_residual``).

The reconstruction grid is always x_k = k*h.  When h < pi/sigma the sampling
is strictly finer than necessary (oversampled) and the cardinal series
converges on compact sets even for bounded, non-decaying samples; at the
critical rate h = pi/sigma a decay certificate on the samples is required,
otherwise reconstruction is refused as unsound.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from .errors import QuadratureError, ReconstructionUnsoundError, ToleranceError
from .sinckernel import sinc_derivative, sinc_derivative_grid, sinc_grid, snap_integer

_PI = math.pi


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BandlimitedFn:
    """An evaluatable function with a declared exponential type and sup bound.

    Attributes:
        sigma: declared exponential type (rad per unit); the certificate is
            |f(x + iy)| <= sup_bound * e^(sigma |y|).
        sup_bound: bound on |f| along the real line.
        eval: x -> f(x), defined for all finite x (vectorized over arrays).
        deriv_eval: optional x -> f'(x).
        lp_norms: optional exact L^p norms, keyed by p (1, 2, or math.inf).
        envelope: optional decay certificate (C, d) meaning
            |f(x)| <= min(sup_bound, C / |x|^d) for all x != 0.
    """

    sigma: float
    sup_bound: float
    eval: Callable[[np.ndarray], np.ndarray]
    deriv_eval: Optional[Callable[[np.ndarray], np.ndarray]] = None
    lp_norms: Optional[Dict[float, float]] = None
    envelope: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        if not (self.sigma >= 0.0 and math.isfinite(self.sigma)):
            raise ValueError("sigma must be finite and >= 0")
        if self.sup_bound < 0.0:
            raise ValueError("sup_bound must be >= 0")

    def __call__(self, x):
        return self.eval(x)


def make_reference(kind: str, sigma: float, phase: float = 0.0) -> BandlimitedFn:
    """Analytically certified reference functions of a given type.

    kind:
        "sin"   -> sin(sigma x + phase), type sigma, sup 1
        "cos"   -> cos(sigma x + phase), type sigma, sup 1
        "sinc"  -> sinc(sigma x / pi) = sin(sigma x)/(sigma x), type sigma
        "fejer" -> sinc^2(sigma x / (2 pi)), type sigma, nonnegative,
                   absolutely integrable (x^-2 decay)
        "const" -> 1 identically; true type 0, certified at the given sigma

    The returned objects carry exact derivative handles, decay envelopes, and
    the L^p norms that exist, so tests can cross-check quadrature against
    closed forms.
    """
    if sigma <= 0.0:
        raise ValueError("sigma must be positive")
    s = float(sigma)
    ph = float(phase)
    if kind == "sin":
        return BandlimitedFn(
            sigma=s, sup_bound=1.0,
            eval=lambda x, s=s: np.sin(s * np.asarray(x, dtype=float) + ph),
            deriv_eval=lambda x, s=s: s * np.cos(s * np.asarray(x, dtype=float) + ph),
            lp_norms={math.inf: 1.0},
        )
    if kind == "cos":
        return BandlimitedFn(
            sigma=s, sup_bound=1.0,
            eval=lambda x, s=s: np.cos(s * np.asarray(x, dtype=float) + ph),
            deriv_eval=lambda x, s=s: -s * np.sin(s * np.asarray(x, dtype=float) + ph),
            lp_norms={math.inf: 1.0},
        )
    if kind == "sinc":
        def f(x, s=s):
            return sinc_grid(s * np.asarray(x, dtype=float) / _PI)

        def df(x, s=s):
            return (s / _PI) * sinc_derivative_grid(1, s * np.asarray(x, dtype=float) / _PI)

        # integral of sinc^2 over R is 1, so ||f||_2^2 = pi/sigma
        return BandlimitedFn(
            sigma=s, sup_bound=1.0, eval=f, deriv_eval=df,
            lp_norms={2.0: math.sqrt(_PI / s), math.inf: 1.0},
            envelope=(1.0 / s, 1.0),
        )
    if kind == "fejer":
        def f(x, s=s):
            return sinc_grid(s * np.asarray(x, dtype=float) / (2 * _PI)) ** 2

        def df(x, s=s):
            u = s * np.asarray(x, dtype=float) / (2 * _PI)
            return (s / _PI) * sinc_grid(u) * sinc_derivative_grid(1, u)

        # ||f||_1 = 2 pi / sigma, ||f||_2^2 = (2 pi / sigma) * (2/3)
        return BandlimitedFn(
            sigma=s, sup_bound=1.0, eval=f, deriv_eval=df,
            lp_norms={1.0: 2 * _PI / s,
                      2.0: math.sqrt(4 * _PI / (3 * s)),
                      math.inf: 1.0},
            envelope=(4.0 / s ** 2, 2.0),
        )
    if kind == "const":
        return BandlimitedFn(
            sigma=s, sup_bound=1.0,
            eval=lambda x: np.ones_like(np.asarray(x, dtype=float)),
            deriv_eval=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
            lp_norms={math.inf: 1.0},
        )
    raise ValueError(f"unknown reference kind {kind!r}")


@dataclass(frozen=True)
class UniformSamples:
    """Samples f(k h) for k_min <= k <= k_max with a tail certificate.

    ``tail_bound`` bounds sup_{k outside window} |f(k h)|.  ``tail_decay``
    strengthens it to |f(k h)| <= tail_bound * (k_edge/|k|)^tail_decay beyond
    the window (k_edge = min(|k_min|, k_max)); 0 means bounded only.  The
    decay certificate is what allows the cardinal-series tail to be closed at
    the critical sampling rate.
    """

    sigma: float
    h: float
    k_min: int
    k_max: int
    values: np.ndarray
    tail_bound: float
    tail_decay: float = 0.0

    def __post_init__(self):
        if self.h <= 0.0:
            raise ValueError("step h must be positive")
        if self.sigma <= 0.0:
            raise ValueError("sigma must be positive")
        if self.k_max < self.k_min:
            raise ValueError("empty sample window")
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.k_max - self.k_min + 1,):
            raise ValueError("values length does not match the index window")
        if not np.all(np.isfinite(vals)):
            raise ValueError("sample values must be finite")
        if self.tail_bound < 0.0 or self.tail_decay < 0.0:
            raise ValueError("tail certificate must be nonnegative")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, f: BandlimitedFn, h: float, k_min: int, k_max: int,
                      tail_bound: Optional[float] = None,
                      tail_decay: Optional[float] = None) -> "UniformSamples":
        """Sample a reference on [k_min, k_max]; certificate defaults come from
        the function's envelope (or its sup bound when no envelope exists)."""
        ks = np.arange(k_min, k_max + 1)
        vals = np.asarray(f(ks * h), dtype=float)
        k_edge = min(abs(k_min), abs(k_max))
        if tail_bound is None or tail_decay is None:
            if f.envelope is not None and k_edge >= 1:
                c, d = f.envelope
                tail_bound = min(f.sup_bound, c / (k_edge * h) ** d)
                tail_decay = d
            else:
                tail_bound = f.sup_bound
                tail_decay = 0.0
        return cls(sigma=f.sigma, h=h, k_min=int(k_min), k_max=int(k_max),
                   values=vals, tail_bound=float(tail_bound),
                   tail_decay=float(tail_decay))

    def value_at(self, k: int) -> float:
        if not (self.k_min <= k <= self.k_max):
            raise IndexError(f"sample index {k} outside window")
        return float(self.values[k - self.k_min])


# ---------------------------------------------------------------------------
# cardinal series
# ---------------------------------------------------------------------------

def _kernel_decay_const(m: int) -> float:
    # |sinc^(m)(x)| <= pi^(m-1)/|x| * 1/(1 - m/(pi |x|)); for |x| >= max(1, m)
    # the last factor is at most 1/(1 - 1/pi) < 3/2.
    return 1.5 * _PI ** max(m - 1, 0) if m >= 1 else 1.5 / _PI


def wks_tail_bound(s: UniformSamples, m: int, x: float) -> float:
    """Certified (decaying samples) or estimated (bounded, oversampled)
    bound on the truncated part of the reconstruction series at x."""
    u = x / s.h
    gap_left = u - s.k_min
    gap_right = s.k_max - u
    gap = min(gap_left, gap_right)
    if gap < max(2.0, float(m)):
        raise ValueError("evaluation point too close to the sample window edge")
    c_m = _kernel_decay_const(m)
    scale = c_m / s.h ** m
    if s.tail_decay > 0.0:
        # sum the explicit majorant tail_bound*(k_edge/|k|)^p / |u - k| over a
        # horizon, then bound the rest by an integral comparison
        p = s.tail_decay
        k_edge = max(1, min(abs(s.k_min), abs(s.k_max)))
        horizon = 10 * max(abs(s.k_min), abs(s.k_max)) + 1000
        kr = np.arange(s.k_max + 1, horizon + 1, dtype=float)
        kl = np.arange(s.k_min - 1, -horizon - 1, -1, dtype=float)
        total = float(np.sum((k_edge / kr) ** p / np.abs(u - kr)))
        total += float(np.sum((k_edge / np.abs(kl)) ** p / np.abs(u - kl)))
        # remainder beyond the horizon: |u - k| >= |k|/2 there
        total += 4.0 * (k_edge / horizon) ** p / p
        return scale * s.tail_bound * total
    # bounded-only certificate: usable when strictly oversampled.  Writing
    # sinc(u-k) = (-1)^k sin(pi u)/(pi(u-k)), the tail is an alternating-phase
    # sum; Abel summation against the non-resonant frequency gap pi - sigma*h
    # bounds it by the first 1/(gap) term over 2 sin(gap/2).  This is an
    # estimate for superpositions, conservative in practice.
    freq_gap = _PI - s.sigma * s.h
    if freq_gap <= 0.0:
        raise ReconstructionUnsoundError(
            "bounded-only samples at the critical rate: the series tail cannot "
            "be closed and the sum may reconstruct the wrong function")
    denom = 2.0 * math.sin(freq_gap / 2.0)
    return scale * s.tail_bound * (2.0 / _PI) * (1.0 / denom) * (1.0 / gap_left + 1.0 / gap_right)


def wks_eval(s: UniformSamples, m: int, x: float, tol: float) -> float:
    """Evaluate the m-th derivative of the sampled function at x.

        f^(m)(x) ~= h^(-m) * sum_k f(k h) sinc^(m)(x/h - k)

    truncated symmetrically around round(x/h) within the stored window.  The
    certified tail is required to be <= tol; otherwise a ToleranceError (or,
    for certificates that can never close, ReconstructionUnsoundError) is
    raised.  At grid points x = k h the kernel is an exact Kronecker delta and
    the stored sample is reproduced bit for bit (for m = 0).
    """
    if m < 0:
        raise ValueError("derivative order must be >= 0")
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    if not math.isfinite(x):
        raise ValueError("evaluation point must be finite")
    if s.h > _PI / s.sigma * (1.0 + 1e-12):
        raise ReconstructionUnsoundError(
            f"undersampled: h = {s.h} exceeds pi/sigma = {_PI / s.sigma}")
    tail = wks_tail_bound(s, m, x)
    if tail > tol:
        raise ToleranceError(
            f"reconstruction tail {tail:.3e} exceeds tol {tol:.3e}",
            achievable=tail)
    u = snap_integer(x / s.h)
    r0 = int(round(u))
    half = min(r0 - s.k_min, s.k_max - r0)
    # symmetric truncation around the nearest node minimizes the 1/|k - u| tail
    idx_c = r0 - s.k_min
    center = s.values[idx_c] * sinc_derivative(m, u - r0)
    if half == 0:
        return center / s.h ** m
    off = np.arange(1, half + 1)
    k_hi = r0 + off
    k_lo = r0 - off
    ker_hi = sinc_derivative_grid(m, u - k_hi)
    ker_lo = sinc_derivative_grid(m, u - k_lo)
    pair = s.values[k_hi - s.k_min] * ker_hi + s.values[k_lo - s.k_min] * ker_lo
    return (center + float(np.sum(pair))) / s.h ** m


# ---------------------------------------------------------------------------
# Valiron / Tschakaloff
# ---------------------------------------------------------------------------

def _sinc_complex(z: complex) -> complex:
    if z == 0:
        return 1.0 + 0.0j
    if z.imag == 0.0 and z.real == round(z.real):
        return 0.0 + 0.0j
    if abs(z) < 0.05:
        # same Taylor switch as the real kernel
        total = 0.0 + 0.0j
        for j in range(12):
            total += (-1.0) ** j * (_PI * z) ** (2 * j) / math.factorial(2 * j + 1)
        return total
    return cmath.sin(_PI * z) / (_PI * z)


def valiron_tschakaloff_eval(s: UniformSamples, f0: float, df0: float,
                             z: complex) -> complex:
    """Bounded-function sampling expansion at a complex point.

        f(z) = z f'(0) sinc(sz/pi) + f(0) sinc(sz/pi)
               + sum_{k != 0} f(k pi/s) (s z / (k pi)) sinc(sz/pi - k)

    The extra 1/k makes the series absolutely convergent for merely bounded
    samples; the full stored window is consumed.  Interpolation at lattice
    points inside the window is exact.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("evaluation point must be finite")
    if abs(s.h - _PI / s.sigma) > 1e-9 * s.h:
        raise ValueError("samples must be taken at the critical lattice k pi/sigma")
    u = z / s.h
    if u.imag == 0.0:
        u = complex(snap_integer(u.real), 0.0)
    head = (z * df0 + f0) * _sinc_complex(u)
    half = min(-s.k_min, s.k_max)
    if half < 1:
        return head
    total = 0.0 + 0.0j
    # sigma z / (k pi) written as u/k so lattice interpolation is bit-exact
    for k in range(1, half + 1):
        a_hi = s.values[k - s.k_min]
        a_lo = s.values[-k - s.k_min]
        total += a_hi * (u / k) * _sinc_complex(u - k)
        total += a_lo * (u / -k) * _sinc_complex(u + k)
    return head + total


def vt_tail_bound(s: UniformSamples, z: complex) -> float:
    """Rigorous truncation bound for :func:`valiron_tschakaloff_eval`."""
    z = complex(z)
    u = z / s.h
    half = min(-s.k_min, s.k_max)
    if half < 2 * abs(u):
        raise ValueError("window too small relative to |z|")
    m_bound = max(float(np.max(np.abs(s.values))), s.tail_bound)
    grow = math.exp(_PI * abs(u.imag))
    # |term_k| <= M (sigma|z|/(k pi)) e^{pi |Im u|} / (pi |u - k|), and
    # |u - k| >= |k|/2 once |k| >= 2|u|
    return 4.0 * m_bound * s.sigma * abs(z) * grow / (_PI ** 2 * half)


# ---------------------------------------------------------------------------
# Riesz interpolation for trigonometric polynomials
# ---------------------------------------------------------------------------

def riesz_trig_derivative(P: Callable[[float], float], N: int, x: float) -> float:
    """Derivative of a trigonometric polynomial of order <= N via the finite sum

        P'(x) = (1/4N) sum_{k=1}^{2N} (-1)^(k+1) P(x + x_k) / sin^2(x_k / 2),
        x_k = (2k - 1) pi / (2N).

    The sum is exact (no truncation).  Terms k and 2N+1-k share the same
    weight with opposite signs, so they are paired explicitly; a constant P is
    annihilated exactly in floating point.
    """
    if N < 1:
        raise ValueError("polynomial order N must be >= 1")
    x = float(x)
    total = 0.0
    for k in range(1, N + 1):
        xk = (2 * k - 1) * _PI / (2 * N)
        xk_partner = 2 * _PI - xk  # node for index 2N+1-k
        w = 1.0 / math.sin(xk / 2.0) ** 2
        sign = (-1.0) ** (k + 1)
        total += sign * w * (float(P(x + xk)) - float(P(x + xk_partner)))
    return total / (4.0 * N)


# ---------------------------------------------------------------------------
# regularization onto a prescribed type
# ---------------------------------------------------------------------------

#: normalization making the smoothing kernel a probability density:
#: integral of (sin(t/4)/t)^4 dt = pi/96
KERNEL_NORM = 96.0 / _PI

#: first absolute moment integral of the kernel, int |t| h(t) dt = 12 ln2 / pi;
#: the approximation constant is C = 1 + that
KERNEL_MOMENT_CONST = 1.0 + 12.0 * math.log(2.0) / _PI


def smoothing_kernel(t) -> np.ndarray:
    """a (sin(t/4)/t)^4 with a = 96/pi: even, nonnegative, entire of
    exponential type 1, unit integral, finite first moment."""
    t = np.asarray(t, dtype=float)
    return KERNEL_NORM * (sinc_grid(t / (4 * _PI)) / 4.0) ** 4


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite-midpoint parameters for :func:`fejer_regularize`.

    half_width None derives the window from tol so the kernel tail
    64/(pi T^3) stays below tol/2.
    """

    tol: float = 1e-3
    half_width: Optional[float] = None
    nodes: int = 4096

    def resolved_half_width(self) -> float:
        if self.half_width is not None:
            return float(self.half_width)
        # kernel tail: a * int_{|t|>T} t^-4 dt = 64/(pi T^3) <= tol/2
        return (128.0 / (_PI * self.tol)) ** (1.0 / 3.0)


def fejer_regularize(f: Callable[[np.ndarray], np.ndarray], sigma: float,
                     quad: QuadratureSpec = QuadratureSpec()) -> BandlimitedFn:
    """Smooth a bounded continuous f onto exponential type sigma:

        R(f)(x) = int h(t) f(x + t/sigma) dt,  h = smoothing_kernel.

    The output is entire of type sigma with sup bound sup|f| (unit kernel
    mass), and ||f - R(f)||_inf <= C * w(f, 1/sigma) where w is the modulus of
    continuity and C = KERNEL_MOMENT_CONST.  The integral is evaluated by
    composite midpoint on [-T, T]; a Richardson probe at x = 0 estimates the
    quadrature error and raises QuadratureError when it exceeds tol.
    """
    if sigma <= 0.0:
        raise ValueError("sigma must be positive")
    T = quad.resolved_half_width()
    n = int(quad.nodes)
    if n < 16:
        raise ValueError("need at least 16 quadrature nodes")
    step = 2.0 * T / n
    nodes = -T + (np.arange(n) + 0.5) * step
    weights = smoothing_kernel(nodes) * step

    def reval(x, _nodes=nodes, _w=weights, _s=sigma):
        x = np.asarray(x, dtype=float)
        shifted = x[..., None] + _nodes / _s
        vals = np.asarray(f(shifted.reshape(-1)), dtype=float).reshape(shifted.shape)
        return vals @ _w

    # error probe: halve the step at a few points (midpoint error ~ step^2),
    # and account for the kernel mass beyond the window
    probe = np.array([0.0, 0.37 / sigma, -1.0 / sigma])
    fine_nodes = -T + (np.arange(2 * n) + 0.5) * (step / 2.0)
    fine_w = smoothing_kernel(fine_nodes) * (step / 2.0)
    coarse = np.asarray(reval(probe))
    shifted = probe[:, None] + fine_nodes / sigma
    fine = np.asarray(f(shifted.reshape(-1)), dtype=float).reshape(shifted.shape) @ fine_w
    kernel_tail = 64.0 / (_PI * T ** 3)
    est = float(np.max(np.abs(fine - coarse))) * (4.0 / 3.0) + kernel_tail
    if est > quad.tol:
        raise QuadratureError(
            f"estimated quadrature error {est:.3e} exceeds tol {quad.tol:.3e}")

    sup = float(np.max(np.abs(np.asarray(f(np.linspace(-3.0 / sigma, 3.0 / sigma, 64))))))
    return BandlimitedFn(sigma=float(sigma), sup_bound=max(sup, 1.0), eval=reval)


# ---------------------------------------------------------------------------
# periodization residual (test oracle)
# ---------------------------------------------------------------------------

def poisson_residual(f: Callable, fhat: Callable, lam: float, t: float,
                     K: int) -> float:
    """| (lam/sqrt(2 pi)) sum_{|k|<=K} f(t + lam k)
         - sum_{|k|<=K} fhat(2 k pi / lam) e^(i 2 k pi t / lam) |

    for an analytically matched transform pair (convention:
    fhat(xi) = (2 pi)^(-1/2) int f(x) e^(-i x xi) dx).  Both partial sums
    converge to the same value for integrable pairs, so the residual tends
    to 0 as K grows.
    """
    if lam <= 0.0:
        raise ValueError("period lambda must be positive")
    if K < 0:
        raise ValueError("K must be >= 0")
    ks = np.arange(-K, K + 1)
    lhs = lam / math.sqrt(2 * _PI) * float(np.sum(np.asarray(f(t + lam * ks), dtype=float)))
    xi = 2 * _PI * ks / lam
    rhs = np.sum(np.asarray(fhat(xi), dtype=complex) * np.exp(1j * 2 * _PI * ks * t / lam))
    return abs(lhs - rhs)


def fejer_transform_pair(delta: float):
    """A transform pair with compactly supported spectrum, for Poisson tests:

        f(x)    = (delta / 2 pi) sinc^2(delta x / (2 pi))
        fhat(w) = (2 pi)^(-1/2) max(0, 1 - |w|/delta)

    f decays like x^-2, fhat is the triangle on [-delta, delta].
    """
    if delta <= 0.0:
        raise ValueError("delta must be positive")

    def f(x):
        x = np.asarray(x, dtype=float)
        return (delta / (2 * _PI)) * sinc_grid(delta * x / (2 * _PI)) ** 2

    def fhat(w):
        w = np.asarray(w, dtype=float)
        return (1.0 / math.sqrt(2 * _PI)) * np.maximum(0.0, 1.0 - np.abs(w) / delta)

    return f, fhat

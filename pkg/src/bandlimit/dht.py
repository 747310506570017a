"""The discrete Hilbert transform on l2 and its closed-form isometry group.

The operator acts entrywise on square-summable sequences a = (a_n):

    (H a)_m = sum_{n != m} a_n / (m - n)

with operator norm pi, attained only in the limit: ||H a|| < pi ||a|| strictly
for every nonzero a.  H generates a one-parameter group of isometries with a
fully explicit orbit map:

    t not an integer:  (e^(tH) a)_m = (sin(pi t)/pi) sum_n a_n / (m - n + t)
    t = N integer:     (e^(tH) a)_m = (-1)^N a_(m+N)

The integer branch is an exact signed shift; the general formula degenerates
to a 0 * inf limit there, so dispatch happens on |t - round(t)| < 1e-9 where
the limit value is exact and the generic kernel has lost precision anyway.

Because every vector satisfies ||H^k a|| <= pi^k ||a||, the whole space is
eligible for orbit sampling at unit spacing (sigma = pi, so u = t), and the
lattice samples e^(kH) a are signed shifts, free of any series evaluation:

    orbit:   e^(tH)a = a + t sinc(t) Ha
             + t sum_{k!=0} ((-1)^k a_(.+k) - a) / k * sinc(t - k)
    bounded: e^(tH)a = sinc(t) a + t sinc(t) Ha
             + sum_{k!=0} (t/k) sinc(t - k) (-1)^k a_(.+k)
    powers:  H^(2s-1) a = sum_k (-1)^(k+1) a(s,k) e^((k-1/2)H) a
             H^(2s)   a = sum_k (-1)^(k+1) b(s,k) e^(kH) a
                        = - sum_k b(s,k) a_(.+k)

and H^r also equals the r-fold composition of the order-1 operator.  All the
shifted-sequence sums collapse to one-dimensional convolutions, evaluated
directly (no FFT).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .grouporbit import GroupInstance
from .sinckernel import boas_coefficient_grid, coefficient_tail_bound, sinc, snap_integer

_PI = math.pi

#: |t - round(t)| below this dispatches to the exact integer branch
INTEGER_EPS = 1e-9

#: tolerance-derived default window growth is capped here; explicit expands
#: may exceed it up to the hard sanity limit
MAX_EXPAND = 100_000
HARD_MAX_EXPAND = 10_000_000


@dataclass(frozen=True)
class SeqWindow:
    """A finite window of an l2 sequence: entries n0 .. n0 + len - 1.

    ``tail_l2`` bounds the l2 mass outside the window, so the true norm lies
    in [window_norm, hypot(window_norm, tail_l2)].
    """

    n0: int
    values: np.ndarray
    tail_l2: float = 0.0

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("values must be a nonempty 1-d array")
        if not np.all(np.isfinite(vals)):
            raise ValueError("entries must be finite")
        if self.tail_l2 < 0.0:
            raise ValueError("tail_l2 must be >= 0")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "n0", int(self.n0))

    def __len__(self) -> int:
        return self.values.size

    @property
    def n_last(self) -> int:
        return self.n0 + len(self) - 1

    def entry(self, n: int) -> float:
        if self.n0 <= n <= self.n_last:
            return float(self.values[n - self.n0])
        return 0.0

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def norm_bracket(self) -> Tuple[float, float]:
        w = self.norm()
        return w, math.hypot(w, self.tail_l2)

    def on_range(self, n0: int, length: int) -> np.ndarray:
        """Entries on [n0, n0+length), zero-filled outside the window."""
        out = np.zeros(length)
        lo = max(n0, self.n0)
        hi = min(n0 + length - 1, self.n_last)
        if lo <= hi:
            out[lo - n0:hi - n0 + 1] = self.values[lo - self.n0:hi - self.n0 + 1]
        return out

    @classmethod
    def basis(cls, n: int = 0) -> "SeqWindow":
        return cls(n0=n, values=np.array([1.0]), tail_l2=0.0)

    # -- vector-space operations (windows are aligned by index) -------------

    def __add__(self, other: "SeqWindow") -> "SeqWindow":
        if not isinstance(other, SeqWindow):
            return NotImplemented
        n0 = min(self.n0, other.n0)
        n1 = max(self.n_last, other.n_last)
        length = n1 - n0 + 1
        return SeqWindow(n0=n0,
                         values=self.on_range(n0, length) + other.on_range(n0, length),
                         tail_l2=self.tail_l2 + other.tail_l2)

    def __sub__(self, other: "SeqWindow") -> "SeqWindow":
        return self.__add__((-1.0) * other)

    def __mul__(self, c: float) -> "SeqWindow":
        if not np.isscalar(c):
            return NotImplemented
        return SeqWindow(n0=self.n0, values=float(c) * self.values,
                         tail_l2=abs(float(c)) * self.tail_l2)

    __rmul__ = __mul__


def _convolve_window(a: SeqWindow, kernel: np.ndarray, k_lo: int,
                     out_n0: int, out_len: int) -> np.ndarray:
    """c_m = sum_k a_(m+k) kernel[k - k_lo] over [out_n0, out_n0 + out_len).

    Equivalently c_m = sum_n a_n g(n - m) with g(j) = kernel[j - k_lo]; the
    shifted-sequence sums of this module all take this shape.  Evaluated as a
    direct correlation through np.convolve (no FFT).
    """
    full = np.convolve(a.values, kernel[::-1])
    k_hi = k_lo + kernel.size - 1
    # full[i] = sum_j a[j] kernel-at(k_hi - i + j); matching k = a.n0 + j - m
    # gives i = m - a.n0 + k_hi
    start = out_n0 - a.n0 + k_hi
    idx = np.arange(start, start + out_len)
    out = np.zeros(out_len)
    ok = (idx >= 0) & (idx < full.size)
    out[ok] = full[idx[ok]]
    return out


# ---------------------------------------------------------------------------
# the operator and its group
# ---------------------------------------------------------------------------

def hilbert_apply(a: SeqWindow, expand: int = 0) -> SeqWindow:
    """Apply (H a)_m = sum_{n != m} a_n / (m - n) on the window grown by
    ``expand`` on each side.

    The output tail certificate combines the spill-over of the window entries
    (Cauchy-Schwarz against sum 1/(m-n)^2 beyond the output range) with pi
    times the input tail.
    """
    if expand < 0:
        raise ValueError("expand must be >= 0")
    if expand > HARD_MAX_EXPAND:
        raise ValueError(f"expand exceeds the hard maximum {HARD_MAX_EXPAND}")
    L = len(a)
    out_n0 = a.n0 - expand
    out_len = L + 2 * expand
    # kernel g(j) = 1/(-j) for c_m = sum_n a_n g(n - m): m - n = -(n - m)
    j_lo = a.n0 - (out_n0 + out_len - 1)
    j_hi = a.n_last - out_n0
    js = np.arange(j_lo, j_hi + 1)
    kernel = np.where(js == 0, 0.0, -1.0 / np.where(js == 0, 1.0, js))
    vals = _convolve_window(a, kernel, j_lo, out_n0, out_len)
    # spill-over: sum over excluded m of (sum_n a_n/(m-n))^2
    #   <= ||a||^2 * sum_n [1/(gap_left(n) - 1) + 1/(gap_right(n) - 1)]
    # by Cauchy-Schwarz and the integral bound sum_{d>=g} d^-2 <= 1/(g-1)
    gaps_left = np.maximum(expand + np.arange(L), 1)
    gaps_right = np.maximum(expand + np.arange(L)[::-1], 1)
    spill = a.norm() * math.sqrt(float(np.sum(1.0 / gaps_left + 1.0 / gaps_right)))
    tail = spill + _PI * a.tail_l2
    return SeqWindow(n0=out_n0, values=vals, tail_l2=tail)


def integer_orbit(N: int, a: SeqWindow) -> SeqWindow:
    """e^(N H) a for integer N: the exact signed shift (-1)^N a_(m+N)."""
    N = int(N)
    return SeqWindow(n0=a.n0 - N, values=(-1.0) ** (N % 2) * a.values,
                     tail_l2=a.tail_l2)


def hilbert_group(t: float, a: SeqWindow, expand: int = 0) -> SeqWindow:
    """Closed-form orbit e^(tH) a with integer-branch dispatch.

    Off the integers the kernel is sin(pi t)/pi * 1/(m - n + t); the output
    tail uses the isometry: whatever norm is missing from the computed window
    must sit outside it.
    """
    t = float(t)
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    if abs(t - round(t)) < INTEGER_EPS:
        return integer_orbit(round(t), a)
    if expand < 0:
        raise ValueError("expand must be >= 0")
    if expand > HARD_MAX_EXPAND:
        raise ValueError(f"expand exceeds the hard maximum {HARD_MAX_EXPAND}")
    L = len(a)
    out_n0 = a.n0 - expand
    out_len = L + 2 * expand
    j_lo = a.n0 - (out_n0 + out_len - 1)
    j_hi = a.n_last - out_n0
    js = np.arange(j_lo, j_hi + 1)
    # m - n + t = t - (n - m)
    kernel = (math.sin(_PI * t) / _PI) / (t - js)
    vals = _convolve_window(a, kernel, j_lo, out_n0, out_len)
    in_hi = math.hypot(a.norm(), a.tail_l2)
    out_norm = float(np.linalg.norm(vals))
    tail = math.sqrt(max(in_hi ** 2 - out_norm ** 2, 0.0))
    return SeqWindow(n0=out_n0, values=vals, tail_l2=tail)


def dht_instance(expand: int = 256) -> GroupInstance:
    """Package the transform as a generic group instance (orbit/generator/norm)
    so the abstract orbit-sampling engine can drive it directly."""
    return GroupInstance(
        orbit=lambda t, a: hilbert_group(t, a, expand),
        generator=lambda a: hilbert_apply(a, expand),
        norm=lambda a: a.norm(),
        sigma_bound=_PI,
        dim=None,
    )


# ---------------------------------------------------------------------------
# orbit sampling specialized to the transform (sigma = pi, u = t)
# ---------------------------------------------------------------------------

def _shift_series_halfwidth(t: float, a_norm: float, tol: float) -> int:
    # alternating paired tail ~ |t| sin(pi t) ||a|| / (pi K^2)
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    c = max(abs(t), 1.0) * max(a_norm, 1e-30)
    return max(64, int(math.ceil(math.sqrt(c / (_PI * tol)))))


def dht_orbit_reconstruct(a: SeqWindow, t: float, tol: float = 1e-6,
                          expand: Optional[int] = None,
                          k_terms: Optional[int] = None) -> SeqWindow:
    """Trajectory value from signed-shift samples:

        e^(tH)a = a + t sinc(t) Ha + t sum_{k!=0} ((-1)^k a_(.+k) - a)/k sinc(t-k)

    The shifted part is a finite convolution (shifts vanish once they leave
    the window); the scalar sum multiplying a is truncated symmetrically, with
    alternating pairs giving an O(K^-2) remainder.  At integer t the formula
    is the exact signed shift.
    """
    t = snap_integer(float(t))
    if abs(t - round(t)) < INTEGER_EPS:
        return integer_orbit(round(t), a)
    if expand is None:
        expand = _default_expand(a, tol)
    L = len(a)
    out_n0 = a.n0 - expand
    out_len = L + 2 * expand
    ha = hilbert_apply(a, expand)
    apad = a.on_range(out_n0, out_len)
    # shifted-sample convolution: w(k) = (-1)^k sinc(t-k)/k = sin(pi t)/(pi k (t-k))
    k_lo = a.n0 - (out_n0 + out_len - 1)
    k_hi = a.n_last - out_n0
    ks = np.arange(k_lo, k_hi + 1)
    kern = np.where(ks == 0, 0.0,
                    math.sin(_PI * t) / (_PI * np.where(ks == 0, 1.0, ks) * (t - ks)))
    shifted = _convolve_window(a, kern, k_lo, out_n0, out_len)
    # scalar coefficient sum_{k!=0} sinc(t-k)/k: the +/-k pair collapses to
    # (-1)^k (sin pi t / pi) * 2/(t^2 - k^2), an alternating series whose
    # symmetric partial sums converge at O(K^-2)
    K = k_terms if k_terms is not None else _shift_series_halfwidth(t, a.norm(), tol)
    kk = np.arange(1, K + 1, dtype=float)
    q = float(np.sum((-1.0) ** kk * (math.sin(_PI * t) / _PI) * 2.0 / (t * t - kk * kk)))
    vals = apad + t * sinc(t) * ha.values + t * shifted - t * q * apad
    tail = a.tail_l2 * (2.0 + abs(t) * (1.0 + _PI)) + abs(t) * ha.tail_l2
    return SeqWindow(n0=out_n0, values=vals, tail_l2=tail)


def dht_vt(a: SeqWindow, t: float, tol: float = 1e-6,
           expand: Optional[int] = None) -> SeqWindow:
    """Trajectory value by the bounded-vector expansion:

        e^(tH)a = sinc(t) a + t sinc(t) Ha + sum_{k!=0} (t/k) sinc(t-k) (-1)^k a_(.+k)

    Entirely finite for a windowed sequence: the only series is the shifted
    convolution, and shifts beyond the window vanish.
    """
    t = snap_integer(float(t))
    if abs(t - round(t)) < INTEGER_EPS:
        return integer_orbit(round(t), a)
    if expand is None:
        expand = _default_expand(a, tol)
    L = len(a)
    out_n0 = a.n0 - expand
    out_len = L + 2 * expand
    ha = hilbert_apply(a, expand)
    apad = a.on_range(out_n0, out_len)
    k_lo = a.n0 - (out_n0 + out_len - 1)
    k_hi = a.n_last - out_n0
    ks = np.arange(k_lo, k_hi + 1)
    kern = np.where(ks == 0, 0.0,
                    t * math.sin(_PI * t) / (_PI * np.where(ks == 0, 1.0, ks) * (t - ks)))
    shifted = _convolve_window(a, kern, k_lo, out_n0, out_len)
    vals = sinc(t) * apad + t * sinc(t) * ha.values + shifted
    tail = a.tail_l2 * (1.0 + abs(t) * (1.0 + _PI)) + abs(t) * ha.tail_l2
    return SeqWindow(n0=out_n0, values=vals, tail_l2=tail)


# ---------------------------------------------------------------------------
# powers of H through orbit samples
# ---------------------------------------------------------------------------

def _odd_power_kernel(s: int, d_lo: int, d_hi: int, K: int) -> np.ndarray:
    """G_s(d) = (1/pi) sum_{|k|<=K} a(s,k) / (d + k - 1/2) for d in [d_lo, d_hi].

    The half-integer-orbit superposition collapsed to a single convolution
    kernel: a correlation of the coefficient array against the Cauchy kernel
    1/(. - 1/2).  G_1 converges to 1/d (0 at d = 0) as K grows.
    """
    ks = np.arange(-K, K + 1)
    coeffs = boas_coefficient_grid("odd", s, ks)
    # c[i] = sum_j C[i + j] A[j] with C(p) = 1/(d_lo - K + p - 1/2)
    base = np.arange(d_lo - K, d_hi + K + 1, dtype=float)
    cauchy = 1.0 / (base - 0.5)
    return np.correlate(cauchy, coeffs, mode="valid") / _PI


def dht_power(a: SeqWindow, r: int, tol: float = 1e-6,
              expand: Optional[int] = None,
              kernel_halfwidth: Optional[int] = None,
              iterated: bool = False) -> SeqWindow:
    """H^r a through orbit samples.

    Odd r = 2s-1 superposes half-integer orbits, collapsed to one convolution
    with the kernel G_s; even r = 2s uses the exact signed shifts,
    (H^(2s) a)_m = -sum_k b(s,k) a_(m+k), a finite convolution with no
    truncation beyond the window.  ``iterated=True`` instead composes the
    order-1 operator r times (the two routes agree).
    """
    if r < 1:
        raise ValueError("power r must be >= 1")
    if iterated:
        per = expand if expand is not None else _default_expand(a, tol)
        out = a
        for _ in range(r):
            out = dht_power(out, 1, tol=tol, expand=per,
                            kernel_halfwidth=kernel_halfwidth)
        return out
    if expand is None:
        expand = _default_expand(a, tol)
    L = len(a)
    out_n0 = a.n0 - expand
    out_len = L + 2 * expand
    span = L + expand  # largest |n - m| with both indices in play
    if r % 2 == 1:
        s = (r + 1) // 2
        if kernel_halfwidth is None:
            # keep the omitted coefficients a full span away from the Cauchy
            # pole: with K >= 2*span + margin the dropped terms contribute
            # O(tail(K) * log 3) to the kernel's l1 norm
            kernel_halfwidth = 2 * span + 20_000
        G = _odd_power_kernel(s, -span, span, int(kernel_halfwidth))
        # G is indexed by d = m - n; the convolution helper consumes kernels
        # indexed by n - m, so flip the (symmetric) index grid
        vals = _convolve_window(a, G[::-1], -span, out_n0, out_len)
        tail = a.tail_l2 * _PI ** r + a.norm() * coefficient_tail_bound("odd", s, int(kernel_halfwidth))
        return SeqWindow(n0=out_n0, values=vals, tail_l2=tail)
    s = r // 2
    ks = np.arange(-span, span + 1)
    kern = -boas_coefficient_grid("even", s, ks)
    vals = _convolve_window(a, kern, -span, out_n0, out_len)
    tail = a.tail_l2 * _PI ** r + a.norm() * coefficient_tail_bound("even", s, span)
    return SeqWindow(n0=out_n0, values=vals, tail_l2=tail)


def _default_expand(a: SeqWindow, tol: float) -> int:
    # 1/(m-n+t) kernels put O(1/sqrt(N)) l2 mass beyond N extra slots
    grow = int(math.ceil(max(a.norm(), 1.0) / max(tol, 1e-12)))
    return min(max(grow, len(a)), MAX_EXPAND)


def _pairing(s: float, a: SeqWindow, b: SeqWindow) -> float:
    """<e^(sH) a, b> from the windows, without materializing the orbit."""
    if abs(s - round(s)) < INTEGER_EPS:
        shifted = integer_orbit(round(s), a)
        lo = max(shifted.n0, b.n0)
        hi = min(shifted.n_last, b.n_last)
        if lo > hi:
            return 0.0
        return float(np.dot(shifted.on_range(lo, hi - lo + 1),
                            b.on_range(lo, hi - lo + 1)))
    ms = np.arange(b.n0, b.n_last + 1)
    ns = np.arange(a.n0, a.n_last + 1)
    denom = ms[:, None] - ns[None, :] + s
    return float(math.sin(_PI * s) / _PI
                 * np.sum(b.values[:, None] * a.values[None, :] / denom))


def pairing_check(a: SeqWindow, b: SeqWindow, t: float, gamma: float = 0.5,
                  k_terms: int = 4000) -> Tuple[float, float]:
    """Scalar trajectory sampling at sub-unit spacing: returns the pairing
    <e^(tH) a, b> computed directly and through

        sum_k <e^((gamma k) H) a, b> sinc(t/gamma - k),  0 < gamma < 1.

    The pairing function of t is bounded of exponential type pi, so spacing
    gamma < 1 oversamples it and the cardinal series converges on compacts.
    Real t only; windows are consumed as given.
    """
    if not (0.0 < gamma < 1.0):
        raise ValueError("gamma must lie in (0, 1)")
    direct = _pairing(float(t), a, b)
    u = snap_integer(float(t) / gamma)
    ks = np.arange(-k_terms, k_terms + 1)
    kern = np.asarray([sinc(float(u - k)) for k in ks])
    live = np.nonzero(kern)[0]
    sampled = 0.0
    for i in live:
        sampled += _pairing(gamma * float(ks[i]), a, b) * float(kern[i])
    return direct, sampled

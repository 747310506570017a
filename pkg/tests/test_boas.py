import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bandlimit.boas import (
    bernstein_ratio,
    boas_derivative,
    boas_derivative_fast,
    series_tail_bound,
    truncation_halfwidth,
)
from bandlimit.errors import ToleranceError
from bandlimit.sampling import BandlimitedFn, make_reference

PI = math.pi


def closed_derivative(kind, sigma, r, x):
    cycle_sin = [math.sin, math.cos, lambda t: -math.sin(t), lambda t: -math.cos(t)]
    base = cycle_sin[r % 4] if kind == "sin" else cycle_sin[(r + 1) % 4]
    return sigma ** r * base(sigma * x)


class TestBoasDerivative:
    def test_sine_identity_at_zero(self):
        # first derivative of sin at 0 recovers sigma through the lattice sum
        # of 1/(k-1/2)^2
        for sigma in (1.0, 2.5):
            f = make_reference("sin", sigma)
            got = boas_derivative(f, 1, 0.0, k_terms=10_000)
            assert got == pytest.approx(sigma, abs=1e-4 * max(sigma, 1.0))

    def test_constant_annihilated(self):
        f = make_reference("const", PI)
        got = boas_derivative(f, 2, 0.37, k_terms=200_000)
        assert abs(got) <= 1e-10

    def test_cosine_second_derivative(self):
        sigma = 1.0
        f = make_reference("cos", sigma)
        got = boas_derivative(f, 2, 0.4, tol=1e-4)
        assert got == pytest.approx(-sigma ** 2 * math.cos(0.4 * sigma), abs=1e-4)

    def test_oracle_equivalence_low_orders(self):
        rng = np.random.default_rng(3)
        for kind in ("sin", "cos"):
            f = make_reference(kind, 1.0)
            for r in (1, 2, 3, 4):
                for x in rng.uniform(-5, 5, size=5):
                    got = boas_derivative(f, r, float(x), k_terms=10_000)
                    want = closed_derivative(kind, 1.0, r, float(x))
                    assert got == pytest.approx(want, abs=1e-3)

    def test_first_order_against_difference_oracle(self):
        # fourth-order central stencil as an independent route
        rng = np.random.default_rng(11)
        f = make_reference("cos", 1.3)
        step = 1e-2
        for x in rng.uniform(-5, 5, size=25):
            got = boas_derivative(f, 1, float(x), tol=1e-4)
            fd = (-float(f(x + 2 * step)) + 8 * float(f(x + step))
                  - 8 * float(f(x - step)) + float(f(x - 2 * step))) / (12 * step)
            assert got == pytest.approx(fd, abs=1e-4)

    def test_composition_matches_second_order(self):
        sigma = 1.0
        f = make_reference("sin", sigma)

        def first(x):
            x = np.atleast_1d(np.asarray(x, dtype=float))
            return np.array([boas_derivative(f, 1, float(t), tol=1e-5) for t in x])

        g = BandlimitedFn(sigma=sigma, sup_bound=sigma * (1 + 1e-4), eval=first)
        for x in (0.0, 0.6):
            twice = boas_derivative(g, 1, x, tol=1e-4)
            direct = boas_derivative(f, 2, x, tol=1e-4)
            assert twice == pytest.approx(direct, abs=3e-4)

    def test_translation_equivariance(self):
        sigma = 1.3
        f = make_reference("sin", sigma)
        x = 0.83
        shifted = make_reference("sin", sigma, phase=sigma * x)
        a = boas_derivative(f, 1, x, k_terms=2000)
        b = boas_derivative(shifted, 1, 0.0, k_terms=2000)
        assert a == pytest.approx(b, abs=1e-12)

    def test_norm_contract(self):
        for kind, sigma in (("sin", 1.0), ("cos", 2.0), ("fejer", 1.5)):
            f = make_reference(kind, sigma)
            for r in (1, 2, 3):
                got = boas_derivative(f, r, 0.21, tol=1e-5)
                assert abs(got) <= sigma ** r * f.sup_bound + 1e-4

    def test_unachievable_tolerance(self):
        f = make_reference("sin", 1.0)
        with pytest.raises(ToleranceError) as info:
            boas_derivative(f, 1, 0.0, tol=1e-12)
        assert info.value.achievable is not None

    def test_rejects_bad_order(self):
        f = make_reference("sin", 1.0)
        with pytest.raises(ValueError):
            boas_derivative(f, 0, 0.0, tol=1e-3)

    @given(st.floats(min_value=-4.0, max_value=4.0, allow_nan=False))
    @settings(max_examples=25, deadline=None)
    def test_first_order_tracks_cosine(self, x):
        f = make_reference("sin", 1.0)
        got = boas_derivative(f, 1, x, k_terms=3000)
        assert got == pytest.approx(math.cos(x), abs=1e-3)


class TestFastVariants:
    def test_even_constant_term_exercised(self):
        sigma = 1.0
        f = make_reference("cos", sigma)
        got = boas_derivative_fast(f, 2, 0.0, tol=1e-4)
        assert got == pytest.approx(-sigma ** 2, abs=1e-4)

    def test_even_matches_standard_off_special_points(self):
        # the even formula's constant term carries f(t); generic evaluation
        # points distinguish that from the bare constant
        f = make_reference("sin", 1.0)
        for t in (0.0, 0.31, -2.2):
            fast = boas_derivative_fast(f, 2, t, tol=1e-4)
            std = boas_derivative(f, 2, t, tol=1e-4)
            assert fast == pytest.approx(std, abs=2e-3)

    def test_odd_matches_standard(self):
        f = make_reference("sinc", 2.0)
        fast = boas_derivative_fast(f, 3, 0.0, tol=1e-4)
        std = boas_derivative(f, 3, 0.0, tol=1e-4)
        assert fast == pytest.approx(std, abs=2e-3)

    def test_odd_requires_derivative_handle(self):
        f = BandlimitedFn(sigma=1.0, sup_bound=1.0,
                          eval=lambda x: np.sin(np.asarray(x, dtype=float)))
        with pytest.raises(ValueError):
            boas_derivative_fast(f, 3, 0.0, tol=1e-3)

    def test_fast_needs_fewer_terms(self):
        for tol in (1e-3, 1e-6):
            for r in (2, 3, 4):
                k_fast = truncation_halfwidth("fast", r, 1.0, 1.0, tol)
                k_std = truncation_halfwidth("standard", r, 1.0, 1.0, tol)
                assert k_fast < k_std

    def test_tail_bounds_decrease(self):
        for variant in ("standard", "fast"):
            tails = [series_tail_bound(variant, 2, 1.0, 1.0, K)
                     for K in (10, 100, 1000)]
            assert tails[0] > tails[1] > tails[2]


class TestBernsteinRatio:
    def test_sine_extremal(self):
        sigma = 1.5
        f = make_reference("sin", sigma)
        grid = np.linspace(-6 / sigma, 6 / sigma, 301)
        ratio = bernstein_ratio(f, 1, math.inf, grid, tol=1e-4)
        assert ratio == pytest.approx(sigma, rel=1e-3)

    def test_fejer_below_rate(self):
        sigma = 1.0
        f = make_reference("fejer", sigma)
        grid = np.linspace(-40, 40, 1201)
        ratio = bernstein_ratio(f, 1, 2.0, grid, tol=1e-4)
        assert ratio <= sigma

    def test_constant_zero(self):
        f = make_reference("const", 1.0)
        grid = np.linspace(-5, 5, 101)
        for m in (1, 2):
            assert bernstein_ratio(f, m, math.inf, grid, tol=1e-4) == pytest.approx(0.0, abs=1e-4)

    def test_degenerate_grid(self):
        f = make_reference("sin", 1.0)
        with pytest.raises(ValueError):
            bernstein_ratio(f, 1, math.inf, np.array([0.0, 1.0]))

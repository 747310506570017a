import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bandlimit.errors import TruncationError
from bandlimit.sinckernel import (
    CoeffTable,
    boas_coefficient,
    boas_coefficient_grid,
    coefficient_table,
    coefficient_tail_bound,
    sinc,
    sinc_derivative,
    sinc_derivative_closed,
    sinc_derivative_grid,
    sinc_derivative_series,
    zero_sum_residual,
)

PI = math.pi


class TestSinc:
    def test_removable_singularity(self):
        assert sinc(0.0) == 1.0

    def test_integer_zeros_exact(self):
        for k in (1, -1, 2, -7, 100, -12345):
            assert sinc(float(k)) == 0.0

    def test_half(self):
        assert sinc(0.5) == pytest.approx(2.0 / PI, rel=1e-15)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            sinc(math.inf)
        with pytest.raises(ValueError):
            sinc(math.nan)

    @given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
    @settings(max_examples=300)
    def test_bounded_by_one(self, x):
        assert abs(sinc(x)) <= 1.0 + 1e-12

    @given(st.floats(min_value=1e-8, max_value=1e3, allow_nan=False))
    @settings(max_examples=200)
    def test_even(self, x):
        assert sinc(-x) == sinc(x)


class TestSincDerivative:
    def test_odd_orders_vanish_at_zero(self):
        for m in (1, 3, 5, 7):
            assert sinc_derivative(m, 0.0) == 0.0

    def test_even_orders_at_zero(self):
        for m in (2, 4, 6):
            want = (-1.0) ** (m // 2) * PI ** m / (m + 1)
            assert sinc_derivative(m, 0.0) == pytest.approx(want, rel=1e-15)

    def test_third_derivative_against_difference_oracle(self):
        # high-precision central stencil of plain sinc at step 1e-4
        import mpmath as mp

        x, hstep = mp.mpf("0.37"), mp.mpf("1e-4")
        with mp.workdps(40):
            def s(t):
                return mp.sin(mp.pi * t) / (mp.pi * t)

            stencil = (-s(x - 2 * hstep) / 2 + s(x - hstep)
                       - s(x + hstep) + s(x + 2 * hstep) / 2) / hstep ** 3
        oracle = float(stencil)
        value = sinc_derivative(3, 0.37)
        assert value == pytest.approx(oracle, abs=1e-6)
        # frozen from the oracle above
        assert value == pytest.approx(6.108159463901585, abs=1e-9)

    def test_rejects_negative_order(self):
        with pytest.raises(ValueError):
            sinc_derivative(-1, 0.3)

    def test_branch_agreement_near_origin(self):
        # the closed form self-guards its cancellation, so both evaluation
        # routes must agree deep inside the series region
        xs = np.logspace(-6, -2, 25)
        for m in range(0, 7):
            for x in xs:
                a = sinc_derivative_series(m, float(x))
                b = sinc_derivative_closed(m, float(x))
                assert abs(a - b) <= 1e-9, (m, x, a, b)

    def test_grid_matches_scalar(self):
        xs = np.array([-3.2, -0.51, -0.04, 0.0, 0.02, 0.6, 1.0, 7.25])
        for m in range(0, 5):
            grid = sinc_derivative_grid(m, xs)
            for x, g in zip(xs, grid):
                assert g == pytest.approx(sinc_derivative(m, float(x)), abs=1e-13)

    def test_proof_recurrences(self):
        # (2m-1) sinc^(2m-2)(1/2-k) = (k-1/2) sinc^(2m-1)(1/2-k)
        # 2m sinc^(2m-1)(-k) = k sinc^(2m)(-k)
        for m in (1, 2, 3):
            for k in range(-50, 51):
                lhs = (2 * m - 1) * sinc_derivative(2 * m - 2, 0.5 - k)
                rhs = (k - 0.5) * sinc_derivative(2 * m - 1, 0.5 - k)
                assert lhs == pytest.approx(rhs, abs=1e-9)
                lhs2 = 2 * m * sinc_derivative(2 * m - 1, float(-k))
                rhs2 = k * sinc_derivative(2 * m, float(-k))
                assert lhs2 == pytest.approx(rhs2, abs=1e-9)


class TestBoasCoefficient:
    def test_examples(self):
        assert boas_coefficient("odd", 1, 1) == pytest.approx(4.0 / PI, rel=1e-15)
        assert boas_coefficient("even", 1, 0) == pytest.approx(PI ** 2 / 3.0, rel=1e-15)
        for k in (1, -2, 3, 9):
            assert boas_coefficient("even", 1, k) == pytest.approx(2.0 / k ** 2, rel=1e-12)

    def test_first_order_closed_forms(self):
        for k in range(-100, 101):
            want = 1.0 / (PI * (k - 0.5) ** 2)
            assert boas_coefficient("odd", 1, k) == pytest.approx(want, rel=1e-13)
            if k != 0:
                assert boas_coefficient("even", 1, k) == pytest.approx(2.0 / k ** 2, rel=1e-13)

    def test_matches_kernel_derivatives(self):
        # a(m,k) = (-1)^(k+1) sinc^(2m-1)(1/2-k); b(m,k) = (-1)^(k+1) sinc^(2m)(-k)
        for m in (1, 2, 3):
            for k in range(-8, 9):
                a = boas_coefficient("odd", m, k)
                ref = (-1.0) ** (k + 1) * sinc_derivative(2 * m - 1, 0.5 - k)
                assert a == pytest.approx(ref, rel=1e-10, abs=1e-12)
                if k != 0:
                    b = boas_coefficient("even", m, k)
                    ref = (-1.0) ** (k + 1) * sinc_derivative(2 * m, float(-k))
                    assert b == pytest.approx(ref, rel=1e-10, abs=1e-12)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            boas_coefficient("odd", 0, 1)
        with pytest.raises(ValueError):
            boas_coefficient("weird", 1, 1)

    def test_absolute_sums_bracket(self):
        # partial absolute sums increase to pi^(2m-1) (odd) / pi^(2m) (even)
        for m in (1, 2, 3):
            for parity, target in (("odd", PI ** (2 * m - 1)), ("even", PI ** (2 * m))):
                prev = 0.0
                for K in (10, 100, 1000, 10000):
                    ks = np.arange(-K, K + 1)
                    total = float(np.sum(np.abs(boas_coefficient_grid(parity, m, ks))))
                    assert total >= prev
                    assert total <= target * (1.0 + 1e-12)
                    prev = total
                assert prev >= target - coefficient_tail_bound(parity, m, 10000)


class TestCoefficientTable:
    def test_odd_first_order_sum(self):
        table = coefficient_table("odd", 1, 1e-3)
        assert PI - 1e-3 <= table.abs_sum() <= PI

    def test_degenerate_tolerance(self):
        table = coefficient_table("even", 1, 1e9)
        assert table.halfwidth == 1

    def test_even_second_order_approaches_target(self):
        table = coefficient_table("even", 2, 1e-4)
        assert table.abs_sum() <= PI ** 4 * (1 + 1e-12)
        assert table.abs_sum() + table.tail >= PI ** 4

    def test_values_bit_identical(self):
        table = coefficient_table("odd", 2, 1e-1)
        for k, v in table.values.items():
            assert v == boas_coefficient("odd", 2, k)

    def test_tail_monotone_in_halfwidth(self):
        tails = [coefficient_tail_bound("even", 1, K) for K in (1, 10, 100, 1000)]
        assert all(a > b for a, b in zip(tails, tails[1:]))

    def test_unreachable_tolerance(self):
        with pytest.raises(TruncationError) as info:
            coefficient_table("odd", 3, 1e-12, max_halfwidth=10_000)
        assert info.value.achievable is not None
        assert info.value.achievable > 1e-12

    def test_immutable(self):
        table = coefficient_table("even", 1, 1e-2)
        with pytest.raises(AttributeError):
            table.tail = 0.0
        assert isinstance(table, CoeffTable)


class TestZeroSum:
    def test_half_point_first_order(self):
        assert zero_sum_residual(1, 0.5, 10_000) <= 1e-3

    def test_origin_second_order(self):
        assert zero_sum_residual(2, 0.0, 10_000) <= 1e-3

    def test_odd_symmetry_exact(self):
        for K in (1, 7, 100, 5000):
            assert zero_sum_residual(1, 0.0, K) == 0.0

    def test_decreases_with_halfwidth(self):
        big = zero_sum_residual(2, 0.3, 20_000)
        small = zero_sum_residual(2, 0.3, 500)
        assert big <= small + 1e-12

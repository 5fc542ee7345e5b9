"""Rigorous interval enclosures.

High-precision reference decimals were computed independently at 60-digit
working precision (mpmath) and frozen here as strings: the enclosure under
test must trap them.
"""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerbounds.enclosure import (DomainError, RatInterval, check_classic_at,
                                   check_certified_at, euler_number_interval,
                                   exp_interval, integer_nth_root,
                                   ln1p_interval, ln1p_to_width,
                                   normalized_euler_interval,
                                   nth_root_interval)
from eulerbounds.series import Variant

LN2 = F("0.693147180559945309417232121458176568075500134")
E_CONST = F("2.71828182845904523536028747135266249775724709")
EXP_MINUS_HALF = F("0.606530659712633423603799534991180453441918135")
NORMALIZED_AT = {  # (1/e)(1+1/n)^n for the oracle spot checks
    1: F("0.735758882342884643191047540322921734891622262"),
    2: F("0.827728742635745223589928482863286951753075045"),
    5: F("0.915401771055723357672573707768166305682760754"),
    10: F("0.954184526764230033080429180766614484538778166"),
}
TWO_OVER_E = NORMALIZED_AT[1]
E10_OVER_E = NORMALIZED_AT[10]

W30 = F(1, 10**30)


class TestRatInterval:
    def test_validation(self):
        with pytest.raises(ValueError):
            RatInterval(1, 0)

    def test_arithmetic(self):
        a, b = RatInterval(1, 2), RatInterval(F(-1, 2), 3)
        assert (a + b) == RatInterval(F(1, 2), 5)
        assert (a - b) == RatInterval(-2, F(5, 2))
        assert a.scale(-2) == RatInterval(-4, -2)
        assert (a * b) == RatInterval(-1, 6)
        assert b.midpoint == F(5, 4) and b.width == F(7, 2)

    def test_reciprocal(self):
        assert RatInterval(F(1, 2), 2).reciprocal() == RatInterval(F(1, 2), 2)
        with pytest.raises(ZeroDivisionError):
            RatInterval(-1, 1).reciprocal()

    def test_intersection_guards_soundness(self):
        with pytest.raises(ValueError):
            RatInterval(0, 1).intersect(RatInterval(2, 3))


class TestLogEnclosures:
    def test_alternating_bracket_examples(self):
        assert ln1p_interval(1, 2) == RatInterval(F(1, 2), F(5, 6))
        assert ln1p_interval(1, 3) == RatInterval(F(7, 12), F(5, 6))

    def test_bracket_contains_ln2(self):
        for k in range(2, 12):
            iv = ln1p_interval(1, k)
            assert iv.lo < LN2 < iv.hi

    @given(st.fractions(min_value=1, max_value=50, max_denominator=7),
           st.integers(min_value=2, max_value=12))
    @settings(max_examples=60, deadline=None)
    def test_bracket_width_bound(self, n, k):
        assert ln1p_interval(n, k).width <= F(1, k + 1) / n ** (k + 1)

    @given(st.fractions(min_value=1, max_value=50, max_denominator=7),
           st.integers(min_value=2, max_value=10))
    @settings(max_examples=60, deadline=None)
    def test_bracket_nested_in_k(self, n, k):
        outer, inner = ln1p_interval(n, k), ln1p_interval(n, k + 1)
        assert inner in outer

    def test_domain_guard(self):
        with pytest.raises(DomainError):
            ln1p_interval(F(1, 2), 4)

    def test_tight_log_contains_and_meets_width(self):
        for width in (F(1, 10**6), F(1, 10**20), F(1, 10**40)):
            iv = ln1p_to_width(1, width)
            assert iv.lo < LN2 < iv.hi and iv.width <= width

    def test_tight_log_nested_across_widths(self):
        for n in (F(1), F(3, 2), F(10)):
            coarse = ln1p_to_width(n, F(1, 10**8))
            fine = ln1p_to_width(n, F(1, 10**25))
            assert fine in coarse

    def test_tight_log_agrees_with_bracket(self):
        for n in (F(1), F(7, 3), F(12)):
            tight = ln1p_to_width(n, F(1, 10**30))
            assert tight in ln1p_interval(n, 2)


class TestExpInterval:
    def test_exp_zero_is_exact(self):
        assert exp_interval(RatInterval.point(0), 5) == RatInterval(1, 1)

    def test_exp_minus_half(self):
        iv = exp_interval(RatInterval.point(F(-1, 2)), 10)
        assert iv.width < F(1, 10**6)
        assert iv.lo < EXP_MINUS_HALF < iv.hi

    def test_domain_guard(self):
        with pytest.raises(DomainError):
            exp_interval(RatInterval(0, F(2, 3)), 5)
        with pytest.raises(ValueError):
            exp_interval(RatInterval.point(0), 1)

    @given(st.fractions(min_value=F(-1, 2), max_value=F(1, 2), max_denominator=40),
           st.fractions(min_value=F(-1, 2), max_value=F(1, 2), max_denominator=40),
           st.fractions(min_value=0, max_value=F(1, 8), max_denominator=40),
           st.integers(min_value=2, max_value=8))
    @settings(max_examples=60, deadline=None)
    def test_monotone_containment(self, lo, hi, shrink, m):
        if lo > hi:
            lo, hi = hi, lo
        outer = RatInterval(lo, hi)
        inner = RatInterval(min(lo + shrink, hi), hi)
        assert exp_interval(inner, m) in exp_interval(outer, m)

    def test_euler_number(self):
        iv = euler_number_interval(W30)
        assert iv.width <= W30 and iv.lo < E_CONST < iv.hi


class TestNormalizedEuler:
    def test_at_one(self):
        iv = normalized_euler_interval(1, W30)
        assert iv.width <= W30
        assert iv.lo < TWO_OVER_E < iv.hi
        assert abs(iv.midpoint - TWO_OVER_E) <= W30

    def test_at_ten(self):
        iv = normalized_euler_interval(10, W30)
        assert iv.lo < E10_OVER_E < iv.hi

    def test_oracle_agreement_within_width(self):
        for n, oracle in NORMALIZED_AT.items():
            iv = normalized_euler_interval(n, W30)
            assert iv.lo < oracle < iv.hi
            assert abs(iv.midpoint - oracle) <= W30

    def test_rational_argument(self):
        # exp((3/2) ln(5/3) - 1) at a non-integer point
        iv = normalized_euler_interval(F(3, 2), F(1, 10**20))
        assert iv.width <= F(1, 10**20)
        assert F("0.79") < iv.lo < iv.hi < F("0.80")

    def test_refinements_nested(self):
        for n in (F(1), F(7, 2), F(100)):
            w8 = normalized_euler_interval(n, F(1, 10**8))
            w20 = normalized_euler_interval(n, F(1, 10**20))
            w40 = normalized_euler_interval(n, F(1, 10**40))
            assert w40 in w20 and w20 in w8

    def test_domain_guard(self):
        with pytest.raises(DomainError):
            normalized_euler_interval(F(1, 2))


class TestChecks:
    def test_certified_at_one_dedup_holds(self):
        res = check_certified_at(1, Variant.DEDUP, W30)
        assert res.holds
        assert res.lower_value == F(3330241, 4769280)
        assert res.upper_value == F(314343859, 400619520)

    def test_certified_at_one_as_written_fails_upper(self):
        res = check_certified_at(1, Variant.AS_WRITTEN, W30)
        assert res.status == "fails" and res.side == "upper"
        assert res.upper_value == F(289024999, 400619520)

    def test_certified_holds_through_one_thousand(self):
        assert all(check_certified_at(n, Variant.DEDUP, W30).holds
                   for n in range(1, 1001))

    def test_certified_large_n(self):
        assert check_certified_at(1000, Variant.DEDUP, W30).holds
        # the doubled-term bound also fails far out, but only on the upper
        # side; the lower inequality is untouched by the variant
        res = check_certified_at(1000, Variant.AS_WRITTEN, W30)
        assert res.status == "fails" and res.side == "upper"
        assert res.enclosure.lo > res.lower_value

    def test_classic_small_n(self):
        res = check_classic_at(1, W30)
        assert res.holds
        assert (res.lower_value, res.upper_value) == (F(2, 3), F(3, 4))
        assert check_classic_at(2, W30).holds

    def test_classic_rejects_bad_n(self):
        with pytest.raises(DomainError):
            check_classic_at(0)


class TestRoots:
    @given(st.integers(min_value=0, max_value=10**24),
           st.integers(min_value=1, max_value=12))
    @settings(max_examples=80, deadline=None)
    def test_integer_nth_root_brackets(self, m, k):
        r = integer_nth_root(m, k)
        assert r**k <= m and (r + 1) ** k > m

    def test_perfect_roots_are_points(self):
        assert nth_root_interval(F(8, 27), 3) == RatInterval.point(F(2, 3))
        assert nth_root_interval(F(1), 7) == RatInterval.point(1)

    @given(st.fractions(min_value=F(1, 1000), max_value=1000, max_denominator=10**6),
           st.integers(min_value=1, max_value=10))
    @settings(max_examples=60, deadline=None)
    def test_root_interval_brackets_exactly(self, q, k):
        iv = nth_root_interval(q, k, F(1, 10**12))
        assert iv.lo**k <= q <= iv.hi**k
        assert iv.width <= F(1, 10**12)

    def test_root_domain_guard(self):
        with pytest.raises(DomainError):
            nth_root_interval(F(-1), 2)

"""The difference sequence, its exact sandwich, limits and rate tables.

Frozen decimals were computed independently at 60-digit working precision
(mpmath) from the defining expression (1/e)((n+1)^{n+1}/n^n - n^n/(n-1)^{n-1}).
"""

from fractions import Fraction as F

import pytest

from eulerbounds.keller import (DISPLAY_DENOMINATOR_CONSTANT, DegreeMismatch,
                                convergence_table, display_forms, keller_term,
                                sandwich_bounds, sandwich_limits,
                                sandwich_ratfuncs)
from eulerbounds.series import Variant, lower_bound, upper_bound

X2 = F("1.01166846322146638438769036794401738547598061")  # (11/4)/e
X10 = F("1.00041839499388026020051005447100731102878979")
RATE10 = F("0.0418394993880260200510054471007311028789789804")
RATE100 = F("0.0416683855118316248938978227516701544293207616")
RATE1000 = F("0.0416666838541761825595510603561809975583508154")


class TestKellerTerm:
    def test_first_term_encloses_exact_value(self):
        term = keller_term(2, F(1, 10**20))
        assert term.value.width <= F(1, 10**20)
        assert term.value.lo < X2 < term.value.hi

    def test_width_contract(self):
        for width in (F(1, 10**6), F(1, 10**25)):
            assert keller_term(10, width).value.width <= width

    def test_tenth_term(self):
        value = keller_term(10, F(1, 10**20)).value
        assert value.lo < X10 < value.hi

    def test_domain_guard(self):
        with pytest.raises(ValueError):
            keller_term(1)


class TestSandwich:
    def test_exact_values_at_two(self):
        # independent route: evaluate the bounds directly
        u, v = lower_bound(), upper_bound(Variant.DEDUP)
        lo, hi = sandwich_bounds(2)
        assert lo == 3 * u.eval(2) - 2 * v.eval(1)
        assert hi == 3 * v.eval(2) - 2 * u.eval(1)

    def test_ordering(self):
        for n in range(2, 101):
            lo, hi = sandwich_bounds(n, Variant.DEDUP)
            assert lo < hi

    def test_as_written_sandwich_inverts(self):
        # with the doubled correction the claimed upper side drops below the
        # lower side from n = 3 on: the squeeze is only coherent for the
        # single-term variant
        lo, hi = sandwich_bounds(2, Variant.AS_WRITTEN)
        assert lo < hi
        with pytest.raises(ArithmeticError):
            sandwich_bounds(3, Variant.AS_WRITTEN)

    def test_term_within_sandwich(self):
        for n in range(2, 51):
            lo, hi = sandwich_bounds(n, Variant.DEDUP)
            value = keller_term(n, F(1, 10**15)).value
            assert lo < value.lo and value.hi < hi

    def test_domain_guard(self):
        with pytest.raises(ValueError):
            sandwich_bounds(1)


class TestSymbolicLimits:
    @pytest.mark.parametrize("variant", [Variant.DEDUP, Variant.AS_WRITTEN])
    def test_limits(self, variant):
        assert sandwich_limits(variant) == (1, F(1, 24))

    def test_sandwich_ratfunc_degrees(self):
        low, high = sandwich_ratfuncs(Variant.DEDUP)
        assert low.num.degree() == low.den.degree()
        assert high.num.degree() == high.den.degree()

    def test_display_forms_reproduce_published_leading_terms(self):
        forms = {f.name: f.numerator for f in display_forms(Variant.DEDUP)}
        lower = forms["sandwich lower"]
        assert (lower.degree(), lower.leading(), lower.coeff(12)) == (
            13, 2508226560, -12959170560)
        upper = forms["sandwich upper"]
        assert (upper.degree(), upper.leading(), upper.coeff(12)) == (
            13, 2508226560, -10450944000)
        rate_lower = forms["rate lower"]
        assert (rate_lower.degree(), rate_lower.leading(), rate_lower.coeff(10)) == (
            11, 104509440, -539965440)
        # the published rate-upper display carries a garbled "+-" sign on
        # its second coefficient; the recomputation settles it as negative
        rate_upper = forms["rate upper"]
        assert (rate_upper.degree(), rate_upper.leading(), rate_upper.coeff(10)) == (
            11, 104509440, -435456000)

    def test_display_leading_terms_are_variant_independent(self):
        # the doubled correction only perturbs coefficients below n^10
        dd = {f.name: f.numerator for f in display_forms(Variant.DEDUP)}
        aw = {f.name: f.numerator for f in display_forms(Variant.AS_WRITTEN)}
        for name in dd:
            d = dd[name].degree()
            assert dd[name].coeff(d) == aw[name].coeff(d)
            assert dd[name].coeff(d - 1) == aw[name].coeff(d - 1)
        assert dd["sandwich lower"] != aw["sandwich lower"]

    def test_display_denominator_constant(self):
        assert DISPLAY_DENOMINATOR_CONSTANT == 17418240
        form = display_forms(Variant.DEDUP)[0]
        # leading coefficient of the stated denominator: 17418240 * 144
        assert form.denominator.leading() == 2508226560

    def test_ratio_of_leading_display_terms(self):
        forms = {f.name: f for f in display_forms(Variant.DEDUP)}
        for name in ("rate lower", "rate upper"):
            f = forms[name]
            assert f.numerator.leading() / f.denominator.leading() == F(1, 24)


class TestConvergenceTable:
    def test_frozen_rates_are_trapped(self):
        rows = convergence_table([10, 100, 1000], F(1, 10**12))
        for row, frozen in zip(rows, (RATE10, RATE100, RATE1000)):
            assert row.rate.lo < frozen < row.rate.hi
            assert row.contained

    def test_rate_approaches_one_24th(self):
        row = convergence_table([1000], F(1, 10**12))[0]
        assert abs(row.rate.midpoint - F(1, 24)) < F(1, 1000)

    def test_containment_small_n(self):
        for row in convergence_table(range(2, 21), F(1, 10**10)):
            assert row.contained

    def test_width_contract(self):
        row = convergence_table([50], F(1, 10**9))[0]
        assert row.rate.width <= F(1, 10**9)

    def test_degree_mismatch_guard_exists(self):
        # regression tripwire: a malformed rational function must raise
        from eulerbounds.keller import _ratfunc_limit
        from eulerbounds.algebra import Poly, RatFunc
        with pytest.raises(DegreeMismatch):
            _ratfunc_limit(RatFunc(Poly.one(), Poly.x()))

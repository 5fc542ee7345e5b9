"""Weighted arithmetic-geometric mean sums and sharpened Carleman weights.

The AM-GM step with positive auxiliary weights c_1..c_n,

    (a_1 ... a_n)^(1/n) <= (sum c_m a_m) / (n (c_1...c_n)^(1/n)),

summed over n and rearranged, turns any weight family whose normalized
tails x_n = sum_{k>=n} 1/(k (c_1...c_k)^(1/k)) converge into the bound
sum (a_1...a_n)^(1/n) <= sum c_n x_n a_n.  The classical choice
c_n = (n+1)^n / n^(n-1) telescopes: the geometric means are exactly n+1
and the tails exactly 1/n, so the effective weight is (1+1/n)^n -- the
classical constant-e inequality follows from (1+1/n)^n < e.

The certified upper bounds sharpen this: (1/e)(1+1/n)^n < v(n) gives the
weight family e*(12n+5)/(12n+11) (from the bare rational bound) and the
refined family e*((12n+5)/(12n+11) - eps_n).  Every weight comparison
made here is either an exact rational comparison or a rigorous enclosure
check; infinite sums are only ever reported as labeled finite-N
truncations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .enclosure import (DEFAULT_WIDTH, RatInterval, euler_number_interval,
                        normalized_euler_interval, nth_root_interval)
from .series import Variant, bare_optimal_bound, upper_bound


class MissingTailBound(ValueError):
    """Custom weights have no closed-form tail and none was supplied."""


# ---------------------------------------------------------------------------
# weight schemes and test sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightScheme:
    """One of the weight families compared by the inequality reports."""

    kind: str  # "polya" | "simple" | "refined" | "custom"
    variant: Optional[Variant] = None
    table: Optional[tuple[Fraction, ...]] = None

    @classmethod
    def polya(cls) -> "WeightScheme":
        return cls("polya")

    @classmethod
    def simple(cls) -> "WeightScheme":
        return cls("simple")

    @classmethod
    def refined(cls, variant: Variant = Variant.DEDUP) -> "WeightScheme":
        return cls("refined", variant=variant)

    @classmethod
    def custom(cls, weights: Iterable[Fraction]) -> "WeightScheme":
        tbl = tuple(Fraction(w) for w in weights)
        if any(w <= 0 for w in tbl):
            raise ValueError("custom weights must be strictly positive")
        return cls("custom", table=tbl)

    def describe(self) -> str:
        if self.kind == "refined":
            return f"refined({self.variant.value})"
        return self.kind


@dataclass(frozen=True)
class TestSequence:
    """Positive test sequences a_n with convergent sums."""

    __test__ = False  # not a pytest collection target

    kind: str  # "geometric" | "powerlaw" | "custom"
    ratio: Optional[Fraction] = None
    exponent: Optional[Fraction] = None
    values: Optional[tuple[Fraction, ...]] = None

    @classmethod
    def geometric(cls, ratio) -> "TestSequence":
        ratio = Fraction(ratio)
        if not 0 < ratio < 1:
            raise ValueError("geometric ratio must satisfy 0 < r < 1")
        return cls("geometric", ratio=ratio)

    @classmethod
    def power_law(cls, exponent) -> "TestSequence":
        exponent = Fraction(exponent)
        if exponent <= 1:
            raise ValueError("power-law exponent must exceed 1")
        if exponent.denominator != 1:
            raise ValueError("power-law exponents must be integers so the "
                             "terms stay rational")
        return cls("powerlaw", exponent=exponent)

    @classmethod
    def custom(cls, values: Iterable) -> "TestSequence":
        vals = tuple(Fraction(v) for v in values)
        if any(v <= 0 for v in vals):
            raise ValueError("custom sequence terms must be positive")
        return cls("custom", values=vals)

    def term(self, n: int) -> Fraction:
        if self.kind == "geometric":
            return self.ratio**n
        if self.kind == "powerlaw":
            return Fraction(1, n ** int(self.exponent))
        if n > len(self.values):
            raise IndexError(f"custom sequence has only {len(self.values)} terms")
        return self.values[n - 1]

    def geometric_mean_enclosure(self, n: int, width: Fraction) -> RatInterval:
        """Enclose (a_1 ... a_n)^(1/n) to the given width.

        Geometric: the product is r^(n(n+1)/2), so the mean is
        r^((n+1)/2) -- exact for odd n, an exact power times sqrt(r)
        otherwise.  Power law p: the mean is (n!)^(-p/n), one integer
        root.  Custom: root of the running product (quadratic cost; fine
        for the table sizes used here).
        """
        if self.kind == "geometric":
            r = self.ratio
            if (n + 1) % 2 == 0:
                return RatInterval.point(r ** ((n + 1) // 2))
            base = r ** (n // 2)
            return nth_root_interval(r, 2, width / base).scale(base)
        if self.kind == "powerlaw":
            p = self.exponent
            fact = 1
            for i in range(2, n + 1):
                fact *= i
            root = nth_root_interval(Fraction(fact**p.numerator), n * p.denominator,
                                     width)
            return root.reciprocal()
        prod = Fraction(1)
        for k in range(1, n + 1):
            prod *= self.term(k)
        return nth_root_interval(prod, n, width)

    def describe(self) -> str:
        if self.kind == "geometric":
            return f"geometric({self.ratio})"
        if self.kind == "powerlaw":
            return f"powerlaw({self.exponent})"
        return f"custom[{len(self.values)}]"


# ---------------------------------------------------------------------------
# the telescoping weight family
# ---------------------------------------------------------------------------


def telescoping_weight(n: int) -> Fraction:
    """c_n = (n+1)^n / n^(n-1)."""
    if n < 1:
        raise ValueError("weights are indexed from 1")
    return Fraction((n + 1) ** n, n ** (n - 1))


def polya_identities(n: int) -> tuple[Fraction, Fraction]:
    """((c_1...c_n)^(1/n), x_n) = (n+1, 1/n), exactly.

    The product of the telescoping weights collapses to (n+1)^n, a perfect
    n-th power, and the tail sum of 1/(k(k+1)) collapses to 1/n.  The
    closed forms are returned; the term-by-term identities are verified
    exhaustively in the test suite.
    """
    if n < 1:
        raise ValueError("indices start at 1")
    return Fraction(n + 1), Fraction(1, n)


def epsilon_term(n: int, variant: Variant = Variant.DEDUP) -> Fraction:
    """The correction eps_n subtracted from (12n+5)/(12n+11) by the
    refined weight family: exactly the inverse-power corrections of the
    upper bound, negated."""
    if n < 1:
        raise ValueError("indices start at 1")
    return bare_optimal_bound().eval(n) - upper_bound(variant).eval(n)


def weight_over_e(scheme: WeightScheme, n: int) -> Fraction:
    """Exact rational weight/e for the simple and refined families."""
    if scheme.kind == "simple":
        return bare_optimal_bound().eval(n)
    if scheme.kind == "refined":
        return upper_bound(scheme.variant).eval(n)
    raise ValueError(f"{scheme.kind} weights are not rational multiples of e")


def weight(scheme: WeightScheme, n: int,
           width: Fraction = DEFAULT_WIDTH) -> Union[Fraction, RatInterval]:
    """Effective weight for index n: exact for the telescoping family
    ((1+1/n)^n as a rational), an e-interval multiple otherwise."""
    if n < 1:
        raise ValueError("indices start at 1")
    if scheme.kind == "polya":
        return Fraction((n + 1) ** n, n**n)
    if scheme.kind in ("simple", "refined"):
        ratio = weight_over_e(scheme, n)
        return euler_number_interval(width / (ratio + 1)).scale(ratio)
    raise ValueError("custom weights carry no closed effective form; "
                     "use weighted_tail_bound")


# ---------------------------------------------------------------------------
# termwise weight chain
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainReport:
    """Per-index verification of the weight chain up to N.

    Validity links (these make the weighted inequalities TRUE):
      value_vs_refined : (1/e)(1+1/n)^n < refined weight / e
      value_vs_simple  : (1/e)(1+1/n)^n < (12n+5)/(12n+11)
      simple_vs_one    : (12n+5)/(12n+11) < 1
    first_failures maps each link to the first violating index, or None.

    The improvement ordering refined <= simple is equivalent to
    eps_n >= 0 and is tracked separately in ``non_improving``: those
    indices leave both weight families valid but mean the refined weight
    is locally weaker (this genuinely happens at n = 1 for the
    deduplicated variant).
    """

    N: int
    variant: Variant
    first_failures: tuple[tuple[str, Optional[int]], ...]
    non_improving: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return all(idx is None for _, idx in self.first_failures)

    def first_failure(self, link: str) -> Optional[int]:
        for name, idx in self.first_failures:
            if name == link:
                return idx
        raise KeyError(link)


def _strictly_below(n: int, value: Fraction, env: RatInterval,
                    width: Fraction) -> bool:
    """Decide (1/e)(1+1/n)^n < value, refining the enclosure if it
    straddles; the compared quantities are never equal (one side is
    irrational), so this terminates."""
    for _ in range(8):
        if env.hi < value:
            return True
        if env.lo >= value:
            return False
        width = width / 10**10
        env = normalized_euler_interval(n, width)
    raise ArithmeticError(f"could not separate enclosure from {value} at n={n}")


def termwise_weight_chain(N: int, variant: Variant = Variant.DEDUP) -> ChainReport:
    """Verify the weight chain for every n <= N.

    One enclosure per index decides both enclosure links in the common
    case: its width starts near the known asymptotic margin (the refined
    gap shrinks like n^-7) and refines only if a comparison straddles.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    fail_refined: Optional[int] = None
    fail_simple: Optional[int] = None
    fail_one: Optional[int] = None
    non_improving: list[int] = []
    for n in range(1, N + 1):
        refined = weight_over_e(WeightScheme.refined(variant), n)
        simple = Fraction(12 * n + 5, 12 * n + 11)
        start = Fraction(1, 64 * n**7)
        env = normalized_euler_interval(n, start)
        if fail_refined is None and not _strictly_below(n, refined, env, start):
            fail_refined = n
        if fail_simple is None and not _strictly_below(n, simple, env, start):
            fail_simple = n
        if fail_one is None and not simple < 1:
            fail_one = n
        if epsilon_term(n, variant) <= 0:
            non_improving.append(n)
    return ChainReport(N, variant,
                       (("value_vs_refined", fail_refined),
                        ("value_vs_simple", fail_simple),
                        ("simple_vs_one", fail_one)),
                       tuple(non_improving))


# ---------------------------------------------------------------------------
# finite-N inequality sums
# ---------------------------------------------------------------------------


def carleman_sums(seq: TestSequence, scheme: WeightScheme, N: int,
                  width: Fraction = DEFAULT_WIDTH) -> tuple[RatInterval, RatInterval]:
    """(lhs, rhs) enclosures of the finite-N truncations

        lhs = sum_{n<=N} (a_1...a_n)^(1/n),    rhs = sum_{n<=N} weight(n) a_n.

    Both are rigorous; comparing lhs.hi <= rhs.lo is therefore a rigorous
    check of the truncated inequality.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    per_term = width / N
    lhs = RatInterval.point(0)
    for n in range(1, N + 1):
        lhs = lhs + seq.geometric_mean_enclosure(n, per_term)

    if scheme.kind == "polya":
        total = Fraction(0)
        for n in range(1, N + 1):
            total += Fraction((n + 1) ** n, n**n) * seq.term(n)
        return lhs, RatInterval.point(total)
    if scheme.kind in ("simple", "refined"):
        total = Fraction(0)
        for n in range(1, N + 1):
            total += weight_over_e(scheme, n) * seq.term(n)
        rhs = euler_number_interval(width / (total + 1)).scale(total)
        return lhs, rhs
    raise ValueError("custom schemes are evaluated by weighted_tail_bound")


def classical_rhs(seq: TestSequence, N: int,
                  width: Fraction = DEFAULT_WIDTH) -> RatInterval:
    """e * sum_{n<=N} a_n, the unimproved comparison point."""
    total = Fraction(0)
    for n in range(1, N + 1):
        total += seq.term(n)
    return euler_number_interval(width / (total + 1)).scale(total)


# ---------------------------------------------------------------------------
# generalized weighted bound with explicit tails
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CarlemanTail:
    """x_n = sum_{k>=n} 1/(k (c_1...c_k)^(1/k)), exact when a closed form
    or an exact remainder made it so."""

    n: int
    value: RatInterval
    exact: bool


def weighted_tail_bound(scheme: WeightScheme, seq: TestSequence, N: int,
                   tail_remainder: Union[RatInterval, Fraction, None] = None,
                   width: Fraction = DEFAULT_WIDTH,
                   ) -> tuple[RatInterval, list[CarlemanTail]]:
    """The generalized weighted bound rhs = sum_{n<=N} c_n x_n a_n.

    For the telescoping family the tails are closed-form (x_n = 1/n
    exactly).  For custom tables the tail beyond N must be supplied by the
    caller: a Fraction r means the true remainder lies in [0, r]; a
    RatInterval is used as given.  Without either, MissingTailBound is
    raised (e.g. c_n = 1 makes the tail a harmonic series, where no finite
    bound exists).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if scheme.kind == "polya":
        tails = [CarlemanTail(n, RatInterval.point(Fraction(1, n)), True)
                 for n in range(1, N + 1)]
        total = Fraction(0)
        for n in range(1, N + 1):
            total += telescoping_weight(n) * Fraction(1, n) * seq.term(n)
        return RatInterval.point(total), tails
    if scheme.kind != "custom":
        raise ValueError("weighted_tail_bound handles the telescoping family and "
                         "custom tables; use carleman_sums for the others")
    if scheme.table is None or len(scheme.table) < N:
        raise ValueError(f"custom table must carry at least N={N} weights")
    if tail_remainder is None:
        raise MissingTailBound(
            "custom weights need a caller-supplied bound for the tail beyond N "
            "(and none exists when the tail diverges)")
    if isinstance(tail_remainder, RatInterval):
        remainder = tail_remainder
    else:
        remainder = RatInterval(0, Fraction(tail_remainder))

    per_term = width / (2 * N)
    terms: list[RatInterval] = []
    prod = Fraction(1)
    for k in range(1, N + 1):
        prod *= scheme.table[k - 1]
        geo = nth_root_interval(prod, k, per_term)
        terms.append(geo.reciprocal().scale(Fraction(1, k)))

    tails_rev: list[CarlemanTail] = []
    suffix = remainder
    exact = remainder.width == 0
    for k in range(N, 0, -1):
        suffix = suffix + terms[k - 1]
        exact = exact and terms[k - 1].width == 0
        tails_rev.append(CarlemanTail(k, suffix, exact))
    tails = list(reversed(tails_rev))

    rhs = RatInterval.point(0)
    for n in range(1, N + 1):
        rhs = rhs + tails[n - 1].value.scale(scheme.table[n - 1] * seq.term(n))
    return rhs, tails

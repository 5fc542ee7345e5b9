"""Rigorous rational-endpoint enclosures of (1/e)(1+1/x)^x and friends.

The trusted path is exact: every interval endpoint is a Fraction, every
rounding is outward, and no binary floating point is involved anywhere.
The primitives are

* alternating partial sums bracketing ln(1+1/n) (``ln1p_interval``),
* a faster all-positive-terms form of the same logarithm via
  ln((p+q)/p) = 2 atanh(q/(2p+q)), whose tail has an explicit geometric
  bound (``ln1p_to_width``) -- the alternating form converges like 1/k at
  n = 1, which is far too slow for the target widths used here;
* Taylor polynomials for exp with the explicit remainder bound
  |R| <= |s|^(m+1) / ((m+1)! (1-|s|))  on |s| <= 1/2 (``exp_interval``);
* integer n-th roots for enclosing k-th roots of rationals.

``normalized_euler_interval`` composes these with a fixed refinement
schedule and cumulative intersection, so a tighter request always returns
a subinterval of a looser one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .algebra import Scalar, rat_str
from .series import Variant, lower_bound, upper_bound

DEFAULT_WIDTH = Fraction(1, 10**30)


class DomainError(ValueError):
    """Argument outside the guaranteed-convergence domain of an enclosure."""


@dataclass(frozen=True)
class RatInterval:
    """Closed interval with exact rational endpoints, lo <= hi."""

    lo: Fraction
    hi: Fraction

    def __init__(self, lo: Scalar, hi: Scalar):
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError(f"inverted interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, v: Scalar) -> "RatInterval":
        v = Fraction(v)
        return cls(v, v)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, v) -> bool:
        if isinstance(v, RatInterval):
            return self.lo <= v.lo and v.hi <= self.hi
        return self.lo <= Fraction(v) <= self.hi

    def __add__(self, other: Union["RatInterval", Scalar]) -> "RatInterval":
        if isinstance(other, RatInterval):
            return RatInterval(self.lo + other.lo, self.hi + other.hi)
        return RatInterval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self) -> "RatInterval":
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other: Union["RatInterval", Scalar]) -> "RatInterval":
        return self + (-other if isinstance(other, RatInterval) else -Fraction(other))

    def __rsub__(self, other: Scalar) -> "RatInterval":
        return (-self) + other

    def scale(self, c: Scalar) -> "RatInterval":
        c = Fraction(c)
        if c >= 0:
            return RatInterval(self.lo * c, self.hi * c)
        return RatInterval(self.hi * c, self.lo * c)

    def __mul__(self, other: Union["RatInterval", Scalar]) -> "RatInterval":
        if not isinstance(other, RatInterval):
            return self.scale(other)
        products = [self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi]
        return RatInterval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> "RatInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("reciprocal of an interval containing 0")
        return RatInterval(1 / self.hi, 1 / self.lo)

    def intersect(self, other: "RatInterval") -> "RatInterval":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise ValueError("intersection of disjoint enclosures (soundness bug)")
        return RatInterval(lo, hi)

    def to_strings(self) -> tuple[str, str]:
        return rat_str(self.lo), rat_str(self.hi)


# ---------------------------------------------------------------------------
# logarithm enclosures
# ---------------------------------------------------------------------------


def ln1p_interval(n: Scalar, k: int) -> RatInterval:
    """Bracket ln(1 + 1/n) between consecutive partial sums S_k, S_{k+1}
    of sum_j (-1)^(j+1) / (j n^j).

    For n >= 1 the terms decrease strictly in absolute value, so the
    partial sums alternate around the limit and the width is at most
    1/((k+1) n^(k+1)).
    """
    n = Fraction(n)
    if n < 1:
        raise DomainError("alternating bracket needs n >= 1")
    if k < 2:
        raise ValueError("k must be >= 2")
    s = Fraction(0)
    sign = 1
    npow = Fraction(1)
    for j in range(1, k + 1):
        npow *= n
        s += Fraction(sign, j) / npow
        sign = -sign
    nxt = s + Fraction(sign, k + 1) / (npow * n)
    return RatInterval(min(s, nxt), max(s, nxt))


def ln1p_to_width(n: Scalar, width: Fraction) -> RatInterval:
    """Enclose ln(1 + 1/n) to the requested width for any rational n >= 1.

    Writes 1 + 1/n = (p+q)/p for n = p/q and uses
    ln((1+y)/(1-y)) = 2 atanh(y) with y = q/(2p+q) <= 1/3.  All series
    terms are positive, so the partial sum is a lower endpoint, and the
    tail after the y^J term is at most y^(J+2) / ((J+2)(1 - y^2)).
    Successive refinements are nested.
    """
    n = Fraction(n)
    if n < 1:
        raise DomainError("logarithm enclosure needs n >= 1")
    p, q = n.numerator, n.denominator
    y = Fraction(q, 2 * p + q)
    y2 = y * y
    one_minus = 1 - y2
    s = Fraction(0)
    yj = y
    j = 1
    while True:
        s += yj / j
        yj *= y2
        tail = yj / ((j + 2) * one_minus)
        if 2 * tail <= width:
            return RatInterval(2 * s, 2 * (s + tail))
        j += 2


# ---------------------------------------------------------------------------
# exponential enclosures
# ---------------------------------------------------------------------------


def _factorial(m: int) -> int:
    out = 1
    for i in range(2, m + 1):
        out *= i
    return out


def _exp_taylor(v: Fraction, m: int) -> Fraction:
    term = Fraction(1)
    acc = Fraction(1)
    for i in range(1, m + 1):
        term = term * v / i
        acc += term
    return acc


def exp_interval(s: RatInterval, m: int) -> RatInterval:
    """Enclose exp over s via the degree-m Taylor polynomial.

    Requires |s.lo|, |s.hi| <= 1/2 and m >= 2.  The remainder bound
    |R| <= a^(m+1) / ((m+1)! (1-a)) with a = max(|lo|, |hi|) is applied
    uniformly at both endpoints, which keeps the construction monotone:
    s inside s' gives a result inside the result for s'.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    a = max(abs(s.lo), abs(s.hi))
    if a > Fraction(1, 2):
        raise DomainError("exp enclosure needs |endpoints| <= 1/2")
    rem = a ** (m + 1) / (_factorial(m + 1) * (1 - a))
    return RatInterval(_exp_taylor(s.lo, m) - rem, _exp_taylor(s.hi, m) + rem)


def _exp_taylor_adaptive(v: Fraction, target: Fraction) -> tuple[Fraction, Fraction]:
    """(partial sum, tail bound) with tail bound <= target; |v| < 1."""
    term = Fraction(1)
    acc = Fraction(1)
    av = abs(v)
    i = 0
    while True:
        i += 1
        term = term * v / i
        acc += term
        # remaining terms are dominated by a geometric series of ratio
        # av/(i+1) starting at |term| * av/(i+1)
        ratio = av / (i + 1)
        tail = abs(term) * ratio / (1 - ratio)
        if tail <= target:
            return acc, tail


def _exp_interval_adaptive(s: RatInterval, target: Fraction) -> RatInterval:
    a = max(abs(s.lo), abs(s.hi))
    if a > Fraction(1, 2):
        raise DomainError("exp enclosure needs |endpoints| <= 1/2")
    lo_sum, lo_tail = _exp_taylor_adaptive(s.lo, target)
    hi_sum, hi_tail = _exp_taylor_adaptive(s.hi, target)
    rem = max(lo_tail, hi_tail)
    return RatInterval(lo_sum - rem, hi_sum + rem)


def euler_number_interval(width: Fraction = DEFAULT_WIDTH) -> RatInterval:
    """Enclose e as exp(1/2) squared, refined until the width bound holds."""
    half = RatInterval.point(Fraction(1, 2))
    best: Optional[RatInterval] = None
    for stage in range(64):
        target = Fraction(1, 10 ** (8 + 8 * stage))
        cur = _exp_interval_adaptive(half, target)
        cur = RatInterval(cur.lo * cur.lo, cur.hi * cur.hi)
        best = cur if best is None else best.intersect(cur)
        if best.width <= width:
            return best
    raise ArithmeticError("exp(1/2) refinement failed to reach the target width")


# ---------------------------------------------------------------------------
# the normalized sequence value  (1/e)(1+1/n)^n
# ---------------------------------------------------------------------------


def normalized_euler_interval(n: Scalar, target_width: Fraction = DEFAULT_WIDTH) -> RatInterval:
    """Enclose (1/e)(1+1/n)^n = exp(n ln(1+1/n) - 1) for rational n >= 1.

    Runs a fixed stage schedule (logarithm width 10^-(6+8i)/n, adaptive
    exponential tail 10^-(8+8i)) and intersects the stages, so results for
    tighter targets are contained in results for looser ones.  The
    exponent lies in (-1/2, 0) for n >= 1, inside the exp domain.
    """
    n = Fraction(n)
    if n < 1:
        raise DomainError("normalized sequence value needs n >= 1")
    best: Optional[RatInterval] = None
    for stage in range(64):
        ln_iv = ln1p_to_width(n, Fraction(1, 10 ** (6 + 8 * stage)) / n)
        exponent = ln_iv.scale(n) - 1
        cur = _exp_interval_adaptive(exponent, Fraction(1, 10 ** (8 + 8 * stage)))
        best = cur if best is None else best.intersect(cur)
        if best.width <= target_width:
            return best
    raise ArithmeticError("enclosure refinement failed to reach the target width")


# ---------------------------------------------------------------------------
# inequality checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one rigorous two-sided inequality check."""

    status: str  # "holds" | "fails" | "undecided"
    side: Optional[str]  # "lower" | "upper" when status == "fails"
    n: Fraction
    enclosure: RatInterval
    lower_value: Fraction
    upper_value: Fraction

    @property
    def holds(self) -> bool:
        return self.status == "holds"


def _two_sided_check(n: Fraction, lower: Fraction, upper: Fraction,
                     width: Fraction) -> CheckResult:
    env = normalized_euler_interval(n, width)
    if lower < env.lo and env.hi < upper:
        return CheckResult("holds", None, n, env, lower, upper)
    if env.hi <= lower:
        return CheckResult("fails", "lower", n, env, lower, upper)
    if upper <= env.lo:
        return CheckResult("fails", "upper", n, env, lower, upper)
    return CheckResult("undecided", None, n, env, lower, upper)


def check_certified_at(n: Scalar, variant: Variant = Variant.DEDUP,
                      width: Fraction = DEFAULT_WIDTH) -> CheckResult:
    """Check lower(n) < (1/e)(1+1/n)^n < upper_variant(n) rigorously.

    Comparisons against the exact rational bound values are exact; an
    Undecided outcome means the enclosure straddles a bound and the caller
    should retry with a smaller width.
    """
    n = Fraction(n)
    if n < 1:
        raise DomainError("the certified bounds require n >= 1")
    return _two_sided_check(n, lower_bound().eval(n), upper_bound(variant).eval(n), width)


def check_classic_at(n: int, width: Fraction = DEFAULT_WIDTH) -> CheckResult:
    """Check the classical bracket 2n/(2n+1) < (1/e)(1+1/n)^n < (2n+1)/(2n+2)."""
    if n < 1:
        raise DomainError("the classical bracket requires n >= 1")
    return _two_sided_check(Fraction(n), Fraction(2 * n, 2 * n + 1),
                            Fraction(2 * n + 1, 2 * n + 2), width)


# ---------------------------------------------------------------------------
# roots of rationals (used by the weighted-mean sums)
# ---------------------------------------------------------------------------


def integer_nth_root(m: int, k: int) -> int:
    """floor(m ** (1/k)) for nonnegative integer m, by integer Newton."""
    if m < 0 or k < 1:
        raise ValueError("integer_nth_root needs m >= 0, k >= 1")
    if m == 0:
        return 0
    if k == 1:
        return m
    x = 1 << ((m.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + m // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > m:
        x -= 1
    return x


def nth_root_interval(q: Fraction, k: int, width: Fraction = DEFAULT_WIDTH) -> RatInterval:
    """Enclose q ** (1/k) for rational q > 0 to the requested width.

    Perfect k-th powers come back as exact points.  Otherwise the root is
    scaled by a power of ten and bracketed between consecutive integers,
    entirely in integer arithmetic.
    """
    q = Fraction(q)
    if q <= 0:
        raise DomainError("n-th root enclosure needs a positive argument")
    if k < 1:
        raise ValueError("root index must be >= 1")
    rn = integer_nth_root(q.numerator, k)
    rd = integer_nth_root(q.denominator, k)
    if rn**k == q.numerator and rd**k == q.denominator:
        return RatInterval.point(Fraction(rn, rd))
    digits = 1
    while Fraction(1, 10**digits) > width:
        digits += 1
    scaled = q.numerator * 10 ** (digits * k) // q.denominator
    f = integer_nth_root(scaled, k)
    return RatInterval(Fraction(f, 10**digits), Fraction(f + 1, 10**digits))

"""Machine-checkable convexity/concavity certificates for the bound gaps.

For a candidate bound B the logarithmic gap is

    f(x) = x ln(1+1/x) - 1 - ln(B(x)),

whose second derivative is an exact rational function:

    f''(x) = -1/(x(x+1)^2) - (B''B - B'^2)/B^2.

If f'' > 0 on [1, oo) and f -> 0 at infinity, then f > 0 on [1, oo)
(a convex function with limit 0 cannot dip below 0, and strict convexity
rules out touching 0), i.e. the bound is a strict lower bound; the
concave mirror image proves strict upper bounds.

Positivity of a polynomial on a ray is certified by dividing out the
boundary root, Taylor-shifting to the base point and checking that all
coefficients share one sign -- a sufficient condition that happens to be
conclusive for every certified bound here.  When it is not conclusive the
prover escalates to segment certificates (a Moebius change of variables
maps [lo, hi) to [0, oo), where the same coefficient test applies),
bisecting up to a fixed depth, plus a shifted tail certificate.  A failed
certification never produces a wrong certificate; the prover then hunts
for an exact numeric refutation witness instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import Poly, RatFunc, Scalar, rat_str
from .enclosure import RatInterval, normalized_euler_interval
from .series import BoundSpec, Variant, log_gap_series, lower_bound, upper_bound

CERTIFICATE_FORMAT_VERSION = 1
MAX_BISECTION_DEPTH = 12
REFUTATION_WIDTH = Fraction(1, 10**40)
REFUTATION_GRID = tuple(Fraction(v) for v in
                        (1, Fraction(3, 2), 2, 3, 4, 5, 10, 100))


class DenominatorSignUnknown(ArithmeticError):
    """The denominator could not be certified positive on the ray."""


@dataclass(frozen=True)
class Segment:
    """Certified sign on [lo, hi): ``transformed`` is the polynomial in y
    after substituting x = (lo + hi*y)/(1+y), cleared of (1+y) powers; its
    coefficients all carry the claimed sign."""

    lo: Fraction
    hi: Fraction
    transformed: Poly


@dataclass(frozen=True)
class SignCertificate:
    """Proof that a rational function keeps one sign on [base_point, oo).

    The denominator is separately certified positive, so the claim reduces
    to the numerator:  cleared_numerator = (x - base_point)^multiplicity *
    shifted_poly(x - base_point) with every ``shifted_poly`` coefficient of
    the claimed sign (or zero) -- or, in the escalated form, a list of
    Moebius segment certificates covering [base_point, tail_point) with the
    shifted tail certificate covering the rest.  Strict sign holds for
    x > base_point, and at the base point too when multiplicity is 0.
    """

    base_point: Fraction
    claimed_sign: int
    cleared_numerator: Poly
    boundary_multiplicity: int
    shifted_poly: Poly
    segments: tuple[Segment, ...] = ()
    tail_point: Optional[Fraction] = None

    @property
    def is_simple(self) -> bool:
        return not self.segments


def _uniform_sign(p: Poly) -> Optional[int]:
    """+1/-1 when all coefficients share that sign (zeros allowed), else None."""
    sign = 0
    for c in p.coeffs:
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            return None
    return sign or None


def _moebius_transform(p: Poly, lo: Fraction, hi: Fraction) -> Poly:
    """(1+y)^deg * p((lo + hi*y)/(1+y)): sign on y >= 0 equals the sign of
    p on [lo, hi)."""
    d = p.degree()
    num = Poly((lo, hi))
    den = Poly((1, 1))
    out = Poly.zero()
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        out = out + (num**i) * (den ** (d - i)) * c
    return out


def _segment_certificates(p: Poly, lo: Fraction, hi: Fraction, sign: int,
                          depth: int) -> Optional[list[Segment]]:
    q = _moebius_transform(p, lo, hi)
    if _uniform_sign(q) == sign and q.coeff(0) != 0:
        return [Segment(lo, hi, q)]
    if depth == 0:
        return None
    mid = (lo + hi) / 2
    left = _segment_certificates(p, lo, mid, sign, depth - 1)
    if left is None:
        return None
    right = _segment_certificates(p, mid, hi, sign, depth - 1)
    if right is None:
        return None
    return left + right


def poly_sign_certificate(p: Poly, x0: Scalar,
                          max_depth: int = MAX_BISECTION_DEPTH) -> Optional[SignCertificate]:
    """Certify that p keeps one strict sign on (x0, oo) (weak at x0 only
    through the (x - x0)^m factor).  Returns None when no certificate is
    found; never returns a wrong certificate."""
    x0 = Fraction(x0)
    if p.is_zero:
        return None
    mult, reduced = p.factor_out_root(x0)
    shifted = reduced.shift(x0)
    sign = _uniform_sign(shifted)
    if sign is not None:
        return SignCertificate(x0, sign, p, mult, shifted)
    # escalation: the sign, if there is one, must match both the value at
    # x0 and the sign at infinity
    lead_sign = 1 if reduced.leading() > 0 else -1
    base_sign = 1 if reduced.eval(x0) > 0 else -1
    if lead_sign != base_sign:
        return None
    for j in range(max_depth + 1):
        tail = x0 + 2**j
        tail_shift = reduced.shift(tail)
        if _uniform_sign(tail_shift) == lead_sign:
            segs = _segment_certificates(reduced, x0, tail, lead_sign, max_depth)
            if segs is None:
                return None
            return SignCertificate(x0, lead_sign, p, mult, tail_shift,
                                   tuple(segs), tail)
    return None


def sign_certificate(h: RatFunc, x0: Scalar) -> Optional[SignCertificate]:
    """Sign certificate for a rational function on [x0, oo).

    The (canonical, positive-leading) denominator must first be certified
    positive with no boundary root; otherwise DenominatorSignUnknown is
    raised.  The returned certificate then speaks about the numerator.
    """
    x0 = Fraction(x0)
    den_cert = poly_sign_certificate(h.den, x0)
    if den_cert is None or den_cert.claimed_sign != 1 or den_cert.boundary_multiplicity:
        raise DenominatorSignUnknown(
            f"denominator not certifiably positive on [{x0}, oo)")
    return poly_sign_certificate(h.num, x0)


# ---------------------------------------------------------------------------
# the log-gap second derivative and the proof driver
# ---------------------------------------------------------------------------


def log_gap_second_derivative(bound: BoundSpec) -> RatFunc:
    """Exact second derivative of x ln(1+1/x) - 1 - ln(bound(x)).

    d^2/dx^2 [x ln(1+1/x)] = -1/(x(x+1)) + 1/(x+1)^2 = -1/(x(x+1)^2) is
    rational, so no transcendental terms survive."""
    x = Poly.x()
    base = RatFunc(Poly.constant(-1), x * (x + Poly.one()) ** 2)
    u = bound.as_ratfunc()
    du = u.derivative()
    ddu = du.derivative()
    return base - (ddu * u - du * du) / (u * u)


@dataclass(frozen=True)
class Refutation:
    """Exact witness: at x the enclosure lies strictly on the wrong side."""

    x: Fraction
    enclosure: RatInterval
    bound_value: Fraction


@dataclass(frozen=True)
class ProofReport:
    """Outcome of prove_bound: conclusion is 'proven' only when the sign
    certificate with the required orientation and the vanishing limit at
    infinity are both in hand."""

    bound: BoundSpec
    side: str  # "lower" | "upper"
    second_derivative: RatFunc
    certificate: Optional[SignCertificate]
    bound_positive: bool
    limit_at_infinity_ok: bool
    conclusion: str  # "proven" | "refuted" | "inconclusive"
    refutation: Optional[Refutation] = None

    @property
    def proven(self) -> bool:
        return self.conclusion == "proven"


def _required_sign(side: str) -> int:
    if side == "lower":
        return 1  # convex gap
    if side == "upper":
        return -1  # concave gap
    raise ValueError(f"side must be 'lower' or 'upper', not {side!r}")


def conclusion_from_checks(required_sign: int,
                           certificate: Optional[SignCertificate],
                           bound_positive: bool,
                           limit_ok: bool) -> bool:
    """The convexity-plus-vanishing-limit implication, as one guarded test.

    All three premises are needed: the certified sign with the right
    orientation, positivity of the bound (so the logarithm is defined on
    the whole ray), and the exact vanishing of the gap at infinity.
    """
    return (certificate is not None
            and certificate.claimed_sign == required_sign
            and bound_positive
            and limit_ok)


def _search_refutation(bound: BoundSpec, side: str) -> Optional[Refutation]:
    for x in REFUTATION_GRID:
        value = bound.eval(x)
        env = normalized_euler_interval(x, REFUTATION_WIDTH)
        if side == "upper" and env.lo >= value:
            return Refutation(x, env, value)
        if side == "lower" and env.hi <= value:
            return Refutation(x, env, value)
    return None


def prove_bound(bound: BoundSpec, side: str) -> ProofReport:
    """Prove or refute that bound(x) brackets (1/e)(1+1/x)^x on [1, oo).

    side='lower' claims bound(x) < (1/e)(1+1/x)^x, side='upper' the
    reverse.  'proven' needs the sign certificate of the right orientation
    plus the exact limit check; otherwise a fixed grid of rational sample
    points is scanned for an enclosure that strictly violates the claimed
    inequality, giving 'refuted' with an exact witness, else
    'inconclusive'.
    """
    required = _required_sign(side)
    one = Fraction(1)
    h = log_gap_second_derivative(bound)

    pos_cert = None
    try:
        pos_cert = sign_certificate(bound.as_ratfunc(), one)
    except DenominatorSignUnknown:
        pass
    bound_positive = (pos_cert is not None and pos_cert.claimed_sign == 1
                      and pos_cert.boundary_multiplicity == 0)

    certificate = None
    if bound_positive:  # ln(bound) must exist before its curvature means anything
        try:
            certificate = sign_certificate(h, one)
        except DenominatorSignUnknown:
            certificate = None

    order = max(2, bound.max_power())
    limit_ok = log_gap_series(bound, order)[0] == 0

    if conclusion_from_checks(required, certificate, bound_positive, limit_ok):
        return ProofReport(bound, side, h, certificate, bound_positive,
                           limit_ok, "proven")
    refutation = _search_refutation(bound, side)
    if refutation is not None:
        return ProofReport(bound, side, h, certificate, bound_positive,
                           limit_ok, "refuted", refutation)
    return ProofReport(bound, side, h, certificate, bound_positive,
                       limit_ok, "inconclusive")


def prove_lower() -> ProofReport:
    return prove_bound(lower_bound(), "lower")


def prove_upper(variant: Variant = Variant.DEDUP) -> ProofReport:
    return prove_bound(upper_bound(variant), "upper")


# ---------------------------------------------------------------------------
# cross-checks against the published coefficient tables
# ---------------------------------------------------------------------------

# Cleared numerator of the lower bound over 207360 x^5 (12x+11)
# (degree 6; note the absent x^4 term).
REFERENCE_LOWER_NUMERATOR = Poly(
    [-144155, -66708, 59184, -43200, 0, 1036800, 2488320])

# Cleared numerator of the deduplicated upper bound over
# 17418240 x^6 (12x+11) (degree 7; absent x^5 term).
REFERENCE_UPPER_NUMERATOR = Poly(
    [16549555, 5945040, -5603472, 4971456, -3628800, 0, 87091200, 209018880])

# Shifted numerator of the lower gap's second derivative: f''(x) equals
# this polynomial evaluated at x-1, over x^2 (x+1)^2 (12x+11)^2 P(x)^2.
REFERENCE_LOWER_CERT_NUMERATOR = Poly(
    [48685659681079707, 387888768643091163, 1374068561183884363,
     2856411438418498368, 3861333058156847712, 3547125026642062080,
     2242448726942859264, 963345615805707264, 269162452894408704,
     44174729709158400, 3234548057702400])

# Shifted numerator of the upper gap's second derivative, negated:
# g''(x) = -(this at x-1) / (x^2 (x+1)^2 (12x+11)^2 Q(x)^2).
REFERENCE_UPPER_CERT_NUMERATOR = Poly(
    [621810333384191039953, 5495336279092271136793, 22015820845590210733374,
     52587526363654958754048, 83107983906845638539984, 91197790053279643410048,
     70886916929730329339904, 39022307420738572320768, 14907444982230536515584,
     3763807019677591584768, 565244311814774194176, 38255330631116390400])


@dataclass(frozen=True)
class PolynomialMatch:
    name: str
    computed: Poly
    reference: Poly
    matches: bool


def _denominator_structure_ok(report: ProofReport, cleared: Poly) -> bool:
    """den(f'') must be x^2 (x+1)^2 (12x+11)^2 * cleared^2 up to scale."""
    x = Poly.x()
    target = (x**2) * ((x + Poly.one()) ** 2) * (Poly((11, 12)) ** 2) * cleared**2
    return report.second_derivative.den.primitive() == target.primitive()


def match_reference_polynomials(report: ProofReport) -> list[PolynomialMatch]:
    """Compare the recomputed proof polynomials with the published tables.

    Entries: the bound's cleared numerator, the squared-denominator
    structure of the second derivative, and the second derivative's
    shifted numerator.  The reference tables carry a positive overall
    sign on the lower side and a negative one on the upper side, so the
    sign of the cleared content is part of the match.
    """
    if report.side == "lower":
        ref_num = REFERENCE_LOWER_NUMERATOR
        ref_cert = REFERENCE_LOWER_CERT_NUMERATOR
        ref_sign = 1
    else:
        ref_num = REFERENCE_UPPER_NUMERATOR
        ref_cert = REFERENCE_UPPER_CERT_NUMERATOR
        ref_sign = -1

    _, bound_num, _ = report.bound.as_ratfunc().primitive_parts()
    content, shifted = report.second_derivative.num.shift(1).content_and_primitive()
    sign_ok = (content > 0) if ref_sign > 0 else (content < 0)
    return [
        PolynomialMatch("bound numerator (cleared)", bound_num, ref_num,
                        bound_num == ref_num),
        PolynomialMatch("second-derivative denominator structure",
                        report.second_derivative.den.primitive(),
                        Poly.zero(),
                        _denominator_structure_ok(report, ref_num)),
        PolynomialMatch("certificate shifted numerator", shifted, ref_cert,
                        sign_ok and shifted == ref_cert),
    ]


# ---------------------------------------------------------------------------
# plain-text certificate rendering
# ---------------------------------------------------------------------------


def render_certificate(report: ProofReport) -> str:
    """Versioned plain-text form of a proof report."""
    lines = [f"certificate-format {CERTIFICATE_FORMAT_VERSION}"]
    lines.append(f"bound: {report.bound.describe()}")
    lines.append(f"side: {report.side}")
    cert = report.certificate
    if cert is None:
        lines.append("sign-certificate: none")
    else:
        lines.append(f"sign: {'+1' if cert.claimed_sign > 0 else '-1'}")
        lines.append(f"boundary-multiplicity: {cert.boundary_multiplicity}")
        lines.append("shifted-coefficients: "
                     + " ".join(rat_str(c) for c in cert.shifted_poly.coeffs))
        if cert.segments:
            lines.append(f"segments: {len(cert.segments)} covering "
                         f"[{rat_str(cert.base_point)}, {rat_str(cert.tail_point)})")
    lines.append(f"bound-positive: {'yes' if report.bound_positive else 'no'}")
    lines.append("limit-at-infinity: "
                 + ("0 (exact)" if report.limit_at_infinity_ok else "nonzero"))
    if report.refutation is not None:
        r = report.refutation
        lines.append(f"witness: x = {rat_str(r.x)}, bound value {rat_str(r.bound_value)}, "
                     f"enclosure [{rat_str(r.enclosure.lo)}, {rat_str(r.enclosure.hi)}]")
    lines.append(f"conclusion: {report.conclusion}")
    return "\n".join(lines)

"""Certified interval evaluation of expressions over dyadic intervals.

Addition, subtraction, multiplication, abs, min and max are exact on
dyadic endpoints, so the only rounding happens at divisions, non-dyadic
constants and transcendentals; those round outward to the grid of the
working precision (2**-bits).  Every enclosure therefore contains the true
range of the expression over the queried interval, and widths shrink (never
grow) as the precision doubles or the interval shrinks.

The approximate comparison primitive decides "value > a or value < b" for
a < b by refining a point enclosure until its width beats the gap; it is
the computational content of every choice made downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import expr as E
from .dyadic import (
    Dyadic,
    DyadicInterval,
    ONE,
    ZERO,
    ceil_to_bits,
    floor_to_bits,
)
from .errors import (
    DepthExhausted,
    DivisionByPossibleZero,
    DomainError,
    RefinementBudgetExceeded,
)

DEFAULT_START_BITS = 32
DEFAULT_PREC_CAP = 4096
DEFAULT_SPLIT_DEPTH = 8

_TWO = Dyadic(2)
_MINUS_TWO = Dyadic(-2)

# Rational bracket for pi/2, used to detect sine extrema inside [-2, 2].
_HALF_PI_LO = Fraction("1.5707963267948966192313216916397514")
_HALF_PI_HI = Fraction("1.5707963267948966192313216916397515")


@dataclass(frozen=True, slots=True)
class Enclosure:
    """A certified bound [lo, hi] on the range of f over an interval."""

    lo: Dyadic
    hi: Dyadic
    precision: int

    def width(self) -> Dyadic:
        return self.hi - self.lo

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]@{self.precision}"


# -- interval combinators (exact) ---------------------------------------------


def _imul(a: Dyadic, b: Dyadic, c: Dyadic, d: Dyadic) -> tuple[Dyadic, Dyadic]:
    p1, p2, p3, p4 = a * c, a * d, b * c, b * d
    return min(p1, p2, p3, p4), max(p1, p2, p3, p4)


def _iabs(lo: Dyadic, hi: Dyadic) -> tuple[Dyadic, Dyadic]:
    if lo >= 0:
        return lo, hi
    if hi <= 0:
        return -hi, -lo
    return ZERO, max(-lo, hi)


def abs_diff_enclosure(ex: Enclosure, ey: Enclosure) -> Enclosure:
    """Enclosure of |u - v| for u in ex, v in ey."""
    lo, hi = _iabs(ex.lo - ey.hi, ex.hi - ey.lo)
    return Enclosure(lo, hi, min(ex.precision, ey.precision))


# -- transcendental point series ----------------------------------------------


def _exp_point(x: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    # Remainder after degree k is below 2|x|^(k+1)/(k+1)! once |x| <= (k+2)/2,
    # which k >= 3 guarantees on the supported range |x| <= 2.
    target = Fraction(1, 1 << (bits + 2))
    total = Fraction(1)
    term = Fraction(1)
    k = 0
    ax = abs(x)
    while True:
        k += 1
        term = term * x / k
        total += term
        if k >= 3:
            bound = 2 * ax ** (k + 1) / _factorial(k + 1)
            if bound <= target:
                return total - bound, total + bound


def _sin_point(x: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    # Lagrange remainder: |sin(x) - S_M(x)| <= |x|^(M+1)/(M+1)! for any M.
    target = Fraction(1, 1 << (bits + 2))
    total = Fraction(0)
    term = x
    degree = 1
    ax = abs(x)
    while True:
        total += term
        bound = ax ** (degree + 1) / _factorial(degree + 1)
        if bound <= target:
            return total - bound, total + bound
        nxt = degree + 2
        term = -term * x * x / (nxt * (nxt - 1))
        degree = nxt


def _cos_point(x: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    target = Fraction(1, 1 << (bits + 2))
    total = Fraction(0)
    term = Fraction(1)
    degree = 0
    ax = abs(x)
    while True:
        total += term
        bound = ax ** (degree + 1) / _factorial(degree + 1)
        if bound <= target:
            return total - bound, total + bound
        nxt = degree + 2
        term = -term * x * x / (nxt * (nxt - 1))
        degree = nxt


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _check_trans_domain(lo: Dyadic, hi: Dyadic, name: str) -> None:
    if lo < _MINUS_TWO or hi > _TWO:
        raise DomainError(f"{name} argument enclosure [{lo}, {hi}] outside [-2, 2]")


def _round_pair(lo: Fraction, hi: Fraction, bits: int) -> tuple[Dyadic, Dyadic]:
    return floor_to_bits(lo, bits), ceil_to_bits(hi, bits)


def _exp_interval(lo: Dyadic, hi: Dyadic, bits: int) -> tuple[Dyadic, Dyadic]:
    _check_trans_domain(lo, hi, "exp")
    out_lo, _ = _exp_point(lo.as_fraction(), bits)
    _, out_hi = _exp_point(hi.as_fraction(), bits)
    return _round_pair(out_lo, out_hi, bits)


def _sin_interval(lo: Dyadic, hi: Dyadic, bits: int) -> tuple[Dyadic, Dyadic]:
    _check_trans_domain(lo, hi, "sin")
    flo, fhi = lo.as_fraction(), hi.as_fraction()
    a_lo, a_hi = _sin_point(flo, bits)
    b_lo, b_hi = _sin_point(fhi, bits)
    out_lo, out_hi = min(a_lo, b_lo), max(a_hi, b_hi)
    if flo <= _HALF_PI_HI and fhi >= _HALF_PI_LO:
        out_hi = Fraction(1)
    if flo <= -_HALF_PI_LO and fhi >= -_HALF_PI_HI:
        out_lo = Fraction(-1)
    return _round_pair(out_lo, out_hi, bits)


def _cos_interval(lo: Dyadic, hi: Dyadic, bits: int) -> tuple[Dyadic, Dyadic]:
    _check_trans_domain(lo, hi, "cos")
    flo, fhi = lo.as_fraction(), hi.as_fraction()
    a_lo, a_hi = _cos_point(flo, bits)
    b_lo, b_hi = _cos_point(fhi, bits)
    out_lo, out_hi = min(a_lo, b_lo), max(a_hi, b_hi)
    if flo <= 0 <= fhi:
        out_hi = Fraction(1)
    return _round_pair(out_lo, out_hi, bits)


# -- evaluation ----------------------------------------------------------------


def _eval(node, lo: Dyadic, hi: Dyadic, bits: int) -> tuple[Dyadic, Dyadic]:
    if isinstance(node, E.Var):
        return lo, hi
    if isinstance(node, E.Const):
        value = node.value
        if value.denominator & (value.denominator - 1) == 0:
            d = Dyadic.from_fraction(value)
            return d, d
        return floor_to_bits(value, bits), ceil_to_bits(value, bits)
    if isinstance(node, E.Add):
        a, b = _eval(node.left, lo, hi, bits)
        c, d = _eval(node.right, lo, hi, bits)
        return a + c, b + d
    if isinstance(node, E.Sub):
        a, b = _eval(node.left, lo, hi, bits)
        c, d = _eval(node.right, lo, hi, bits)
        return a - d, b - c
    if isinstance(node, E.Mul):
        a, b = _eval(node.left, lo, hi, bits)
        c, d = _eval(node.right, lo, hi, bits)
        return _imul(a, b, c, d)
    if isinstance(node, E.Div):
        a, b = _eval(node.left, lo, hi, bits)
        c, d = _eval(node.right, lo, hi, bits)
        if not (c > 0 or d < 0):
            raise DivisionByPossibleZero(
                f"denominator enclosure [{c}, {d}] does not exclude 0 at {bits} bits"
            )
        fa, fb, fc, fd = (v.as_fraction() for v in (a, b, c, d))
        quots = (fa / fc, fa / fd, fb / fc, fb / fd)
        return floor_to_bits(min(quots), bits), ceil_to_bits(max(quots), bits)
    if isinstance(node, E.Neg):
        a, b = _eval(node.arg, lo, hi, bits)
        return -b, -a
    if isinstance(node, E.Abs):
        a, b = _eval(node.arg, lo, hi, bits)
        return _iabs(a, b)
    if isinstance(node, E.Min):
        a, b = _eval(node.left, lo, hi, bits)
        c, d = _eval(node.right, lo, hi, bits)
        return min(a, c), min(b, d)
    if isinstance(node, E.Max):
        a, b = _eval(node.left, lo, hi, bits)
        c, d = _eval(node.right, lo, hi, bits)
        return max(a, c), max(b, d)
    if isinstance(node, E.Exp):
        a, b = _eval(node.arg, lo, hi, bits)
        return _exp_interval(a, b, bits)
    if isinstance(node, E.Sin):
        a, b = _eval(node.arg, lo, hi, bits)
        return _sin_interval(a, b, bits)
    if isinstance(node, E.Cos):
        a, b = _eval(node.arg, lo, hi, bits)
        return _cos_interval(a, b, bits)
    raise TypeError(f"not an expression node: {node!r}")


def eval_enclosure(f, interval: DyadicInterval, bits: int = DEFAULT_START_BITS) -> Enclosure:
    """Sound enclosure of { f(t) : t in interval } at the given precision."""
    lo, hi = _eval(f, interval.lo, interval.hi, bits)
    return Enclosure(lo, hi, bits)


def point_enclosure(f, x: Dyadic, bits: int = DEFAULT_START_BITS) -> Enclosure:
    return eval_enclosure(f, DyadicInterval(x, x), bits)


# -- approximate comparison -----------------------------------------------------


@dataclass(frozen=True, slots=True)
class ComparisonResult:
    """Outcome of an approximate comparison against a < b.

    is_high certifies value > a (enclosure.lo > a); otherwise the result
    certifies value < b (enclosure.hi < b).
    """

    is_high: bool
    enclosure: Enclosure


def approx_compare(
    refine: Callable[[int], Enclosure],
    a: Dyadic,
    b: Dyadic,
    *,
    start_bits: int = DEFAULT_START_BITS,
    prec_cap: int = DEFAULT_PREC_CAP,
) -> ComparisonResult:
    """Decide value > a (High) or value < b (Low) for a < b.

    Doubles the working precision until the enclosure width is below b - a,
    then reads the answer off the enclosure; the returned certificate always
    supports the tag.
    """
    if not a < b:
        raise ValueError("approx_compare requires a < b")
    gap = b - a
    bits = start_bits
    while True:
        enc = refine(bits)
        if enc.width() < gap:
            return ComparisonResult(enc.lo > a, enc)
        if bits >= prec_cap:
            raise RefinementBudgetExceeded(
                f"enclosure width {enc.width()} still >= gap {gap} at {bits} bits"
            )
        bits = min(bits * 2, prec_cap)


# -- oscillation bounds and local moduli ----------------------------------------


def oscillation_upper(
    f,
    interval: DyadicInterval,
    bits: int = DEFAULT_START_BITS,
    split_depth: int = DEFAULT_SPLIT_DEPTH,
) -> Dyadic:
    """Certified upper bound on sup - inf of f over the interval.

    Plain interval evaluation overestimates the oscillation of non-monotone
    expressions, so the interval is bisected uniformly (doubling the piece
    count per round, up to 2**split_depth pieces) and the bound is the hull
    of the sub-enclosures; refinement stops early once a round brings no
    improvement.
    """
    pieces = [interval]
    best = None
    for _ in range(split_depth + 1):
        hull_lo = hull_hi = None
        for piece in pieces:
            enc = eval_enclosure(f, piece, bits)
            hull_lo = enc.lo if hull_lo is None else min(hull_lo, enc.lo)
            hull_hi = enc.hi if hull_hi is None else max(hull_hi, enc.hi)
        osc = hull_hi - hull_lo
        if best is not None and not osc < best:
            return best
        best = osc
        if best == 0:
            return best
        pieces = [half for piece in pieces for half in piece.halves()]
    return best


def local_modulus(
    f,
    around: DyadicInterval,
    epsilon: Dyadic,
    *,
    bits: int = DEFAULT_START_BITS,
    split_depth: int = DEFAULT_SPLIT_DEPTH,
    k_cap: int = 24,
) -> Dyadic:
    """Largest radius 2**-k (first k = 1, 2, ... to succeed) such that the
    certified oscillation of f on the radius ball around the midpoint of
    ``around`` (clipped to [0, 1]) is below epsilon."""
    mid = around.midpoint()
    for k in range(1, k_cap + 1):
        radius = Dyadic(1, k)
        ball = DyadicInterval(max(ZERO, mid - radius), min(ONE, mid + radius))
        if oscillation_upper(f, ball, bits, split_depth) < epsilon:
            return radius
    raise DepthExhausted(f"no radius down to 2^-{k_cap} certifies oscillation < {epsilon}")

"""Exact dyadic rational arithmetic and the level grids on [0, 1].

A dyadic is an integer mantissa over a power-of-two denominator,
``m / 2**e`` with ``e >= 0``.  All arithmetic here (+, -, *) is closed and
exact; division is deliberately absent (quotients only appear inside
interval enclosures, with outward rounding).
"""

from __future__ import annotations

import re
from fractions import Fraction

_DYADIC_RE = re.compile(r"^(-?\d+)/2\^(\d+)$")
_DECIMAL_RE = re.compile(r"^(-?\d+)(?:\.(\d+))?$")


class Dyadic:
    """An exact binary rational ``mantissa / 2**exponent``.

    Canonical form: the mantissa is odd, or zero (with exponent 0), or the
    exponent is already 0.  Equality and ordering are by value; instances
    are immutable by convention and safe to share.
    """

    __slots__ = ("m", "e")

    def __init__(self, mantissa: int, exponent: int = 0):
        if exponent < 0:
            # Normalize m / 2**-k to (m << k) / 2**0.
            mantissa <<= -exponent
            exponent = 0
        if mantissa == 0:
            exponent = 0
        else:
            trailing = (mantissa & -mantissa).bit_length() - 1
            shift = min(trailing, exponent)
            if shift:
                mantissa >>= shift
                exponent -= shift
        self.m = mantissa
        self.e = exponent

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_fraction(cls, value: Fraction) -> "Dyadic":
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not a dyadic rational")
        return cls(value.numerator, den.bit_length() - 1)

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """Parse ``m/2^e`` or a decimal literal whose value is dyadic."""
        text = text.strip()
        match = _DYADIC_RE.match(text)
        if match:
            return cls(int(match.group(1)), int(match.group(2)))
        match = _DECIMAL_RE.match(text)
        if match:
            frac = Fraction(text)
            den = frac.denominator
            if den & (den - 1):
                raise ValueError(f"{text!r} is not a dyadic rational")
            return cls(frac.numerator, den.bit_length() - 1)
        raise ValueError(f"cannot parse dyadic from {text!r}")

    # -- conversions -------------------------------------------------------

    def as_fraction(self) -> Fraction:
        return Fraction(self.m, 1 << self.e)

    def __float__(self) -> float:
        return self.m / (1 << self.e)

    def __str__(self) -> str:
        return f"{self.m}/2^{self.e}"

    def __repr__(self) -> str:
        return f"Dyadic({self.m}, {self.e})"

    # -- arithmetic (exact, closed) ----------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        e = self.e if self.e >= other.e else other.e
        return Dyadic((self.m << (e - self.e)) + (other.m << (e - other.e)), e)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        e = self.e if self.e >= other.e else other.e
        return Dyadic((self.m << (e - self.e)) - (other.m << (e - other.e)), e)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Dyadic(self.m * other.m, self.e + other.e)

    __rmul__ = __mul__

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.m, self.e)

    def __abs__(self) -> "Dyadic":
        return Dyadic(-self.m, self.e) if self.m < 0 else self

    def half(self) -> "Dyadic":
        return Dyadic(self.m, self.e + 1)

    def scaled_pow2(self, k: int) -> "Dyadic":
        """Exact value * 2**k for any integer k."""
        return Dyadic(self.m, self.e - k)

    # -- comparisons (exact, by value) --------------------------------------

    def _cmp(self, other: "Dyadic") -> int:
        lhs = self.m << (other.e - self.e) if other.e > self.e else self.m
        rhs = other.m << (self.e - other.e) if self.e > other.e else other.m
        return (lhs > rhs) - (lhs < rhs)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.m == other.m and self.e == other.e

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) < 0

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) <= 0

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) > 0

    def __ge__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) >= 0

    def __hash__(self):
        return hash((self.m, self.e))


def _coerce(value) -> "Dyadic":
    if isinstance(value, Dyadic):
        return value
    if isinstance(value, int):
        return Dyadic(value, 0)
    return NotImplemented


ZERO = Dyadic(0)
ONE = Dyadic(1)
HALF = Dyadic(1, 1)


def compare(a: Dyadic, b: Dyadic) -> int:
    """Exact three-way comparison: -1, 0 or +1."""
    return a._cmp(b)


def floor_to_bits(value: Fraction, bits: int) -> Dyadic:
    """Largest multiple of 2**-bits that is <= value (round toward -inf)."""
    scaled = value * (1 << bits)
    return Dyadic(scaled.numerator // scaled.denominator, bits)


def ceil_to_bits(value: Fraction, bits: int) -> Dyadic:
    """Smallest multiple of 2**-bits that is >= value (round toward +inf)."""
    scaled = value * (1 << bits)
    return Dyadic(-((-scaled.numerator) // scaled.denominator), bits)


def least_pow2_at_most(bound: Dyadic) -> int:
    """Least k >= 0 with 2**-k <= bound (bound must be positive)."""
    if bound.m <= 0:
        raise ValueError("bound must be positive")
    # Initial guess from bit lengths, then correct by exact comparison.
    k = max(0, bound.e - bound.m.bit_length() + 1)
    while Dyadic(1, k) > bound:
        k += 1
    while k > 0 and Dyadic(1, k - 1) <= bound:
        k -= 1
    return k


class DyadicInterval:
    """A closed interval with exact dyadic endpoints, lo <= hi."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Dyadic, hi: Dyadic):
        if lo > hi:
            raise ValueError(f"interval endpoints out of order: {lo} > {hi}")
        self.lo = lo
        self.hi = hi

    def width(self) -> Dyadic:
        return self.hi - self.lo

    def midpoint(self) -> Dyadic:
        return (self.lo + self.hi).half()

    def contains(self, x: Dyadic) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "DyadicInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def halves(self) -> tuple["DyadicInterval", "DyadicInterval"]:
        mid = self.midpoint()
        return DyadicInterval(self.lo, mid), DyadicInterval(mid, self.hi)

    def __eq__(self, other):
        if not isinstance(other, DyadicInterval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"

    def __repr__(self) -> str:
        return f"DyadicInterval({self.lo!r}, {self.hi!r})"


UNIT = DyadicInterval(ZERO, ONE)


def level_grid(n: int) -> list[Dyadic]:
    """The 2**n + 1 points {k / 2**n : 0 <= k <= 2**n}, ascending."""
    if n < 1:
        raise ValueError("level grids are defined for n >= 1")
    return [Dyadic(k, n) for k in range((1 << n) + 1)]


def interval_of_word(word: str) -> DyadicInterval:
    """The bisection cell addressed by a binary word.

    The empty word addresses [0, 1]; appending 0 or 1 takes the left or
    right half.  The cell's lower endpoint is the word's binary-fraction
    value and its width is 2**-len(word).
    """
    n = len(word)
    k = int(word, 2) if n else 0
    return DyadicInterval(Dyadic(k, n), Dyadic(k + 1, n))

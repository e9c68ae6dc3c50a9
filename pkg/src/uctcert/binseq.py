"""Finite binary words and their combinators.

Words are plain strings over {0, 1} (the empty word is ""), ordered
lexicographically with 0 < 1.  A word of length n names the grid point
``k / 2**n`` where k is the word read as a binary integer; two words are
packed into one by interleaving, and unpacked by the even/odd projections.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .dyadic import Dyadic
from .errors import EndpointNotRepresentable, LengthMismatch, NotOnGrid


def check_word(word: str) -> str:
    """Validate that a string is a binary word; returns it unchanged."""
    if word.strip("01") != "":
        raise ValueError(f"not a binary word: {word!r}")
    return word


def word_to_dyadic(word: str) -> Dyadic:
    """Binary-fraction value of a word: sum of bit(i) * 2**-(i+1).

    The empty word maps to 0.  Injective among words of any one fixed
    length; appending zeros does not change the value.
    """
    n = len(word)
    return Dyadic(int(word, 2) if n else 0, n)


def dyadic_to_word(x: Dyadic, n: int) -> str:
    """The unique length-n word whose binary-fraction value is x.

    Defined for x = k / 2**n with 0 <= k <= 2**n - 1.  The right endpoint 1
    is not representable at any length; off-grid values are rejected.
    """
    if n < 0:
        raise ValueError("word length must be >= 0")
    if x == 1:
        raise EndpointNotRepresentable(f"1 has no length-{n} word")
    if x < 0 or x > 1:
        raise NotOnGrid(f"{x} lies outside [0, 1]")
    if x.e > n:
        raise NotOnGrid(f"{x} is not a multiple of 1/2^{n}")
    k = x.m << (n - x.e)
    return format(k, f"0{n}b") if n else ""


def interleave(a: str, b: str) -> str:
    """Pack two equal-length words into one, a on even positions, b on odd."""
    if len(a) != len(b):
        raise LengthMismatch(f"lengths differ: {len(a)} vs {len(b)}")
    return "".join(x + y for x, y in zip(a, b))


def proj0(word: str) -> str:
    """Even positions (left inverse of interleave; total on odd lengths)."""
    return word[0::2]


def proj1(word: str) -> str:
    """Odd positions (right inverse of interleave; total on odd lengths)."""
    return word[1::2]


def downward_closure(words: Iterable[str]) -> set[str]:
    """All prefixes of the given words, the words themselves included."""
    closed: set[str] = set()
    for word in words:
        for i in range(len(word) + 1):
            closed.add(word[:i])
    return closed


def is_prefix_closed(words: set[str]) -> str | None:
    """Return an offending word if the set is not prefix-closed, else None.

    Deterministic: candidates are examined shortest-first, then lexically.
    """
    for word in sorted(words, key=lambda w: (len(w), w)):
        if word and word[:-1] not in words:
            return word
    return None


@dataclass(frozen=True)
class BoundedStream:
    """A binary sequence known up to a declared depth.

    prefix(m) is a prefix of prefix(n) whenever m <= n <= max_depth.
    """

    word: str
    max_depth: int

    def __post_init__(self):
        check_word(self.word)
        if len(self.word) != self.max_depth:
            raise ValueError("stream word must have length max_depth")

    def prefix(self, n: int) -> str:
        if not 0 <= n <= self.max_depth:
            raise ValueError(f"prefix length {n} outside [0, {self.max_depth}]")
        return self.word[:n]

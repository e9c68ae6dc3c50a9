"""Shared fixtures and independent oracles.

The oracles here evaluate expressions exactly over Fractions and enumerate
trees explicitly; they deliberately do not share code with the enclosure
or search paths they are used to check.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from uctcert import expr as E
from uctcert.dyadic import Dyadic


# -- exact evaluation oracle (division-free corpus plus exact division) --------


def exact_eval(node, x: Fraction) -> Fraction:
    if isinstance(node, E.Var):
        return x
    if isinstance(node, E.Const):
        return node.value
    if isinstance(node, E.Add):
        return exact_eval(node.left, x) + exact_eval(node.right, x)
    if isinstance(node, E.Sub):
        return exact_eval(node.left, x) - exact_eval(node.right, x)
    if isinstance(node, E.Mul):
        return exact_eval(node.left, x) * exact_eval(node.right, x)
    if isinstance(node, E.Div):
        return exact_eval(node.left, x) / exact_eval(node.right, x)
    if isinstance(node, E.Neg):
        return -exact_eval(node.arg, x)
    if isinstance(node, E.Abs):
        return abs(exact_eval(node.arg, x))
    if isinstance(node, E.Min):
        return min(exact_eval(node.left, x), exact_eval(node.right, x))
    if isinstance(node, E.Max):
        return max(exact_eval(node.left, x), exact_eval(node.right, x))
    raise NotImplementedError(f"oracle cannot evaluate {type(node).__name__}")


def exact_abs_diff(node, x: Dyadic, y: Dyadic) -> Fraction:
    return abs(exact_eval(node, x.as_fraction()) - exact_eval(node, y.as_fraction()))


# -- corpus ---------------------------------------------------------------------


def _random_cubic(rng: random.Random):
    coeffs = [Fraction(rng.randint(-8, 8), 8) for _ in range(4)]
    x = E.Var()
    node = E.Const(coeffs[0])
    node = E.Add(node, E.Mul(E.Const(coeffs[1]), x))
    node = E.Add(node, E.Mul(E.Const(coeffs[2]), E.Mul(x, x)))
    node = E.Add(node, E.Mul(E.Const(coeffs[3]), E.Mul(x, E.Mul(x, x))))
    label = "+".join(f"({c})x^{k}" for k, c in enumerate(coeffs))
    return label, node


def make_corpus() -> list[tuple[str, object]]:
    """The 12 corpus expressions: three linear maps, three shape cases,
    one constant and five seeded random cubics with dyadic coefficients."""
    rng = random.Random(0xC0FFEE)
    corpus = [
        ("x", E.parse("x")),
        ("2*x", E.parse("2*x")),
        ("4*x", E.parse("4*x")),
        ("abs(x-1/2)", E.parse("abs(x-1/2)")),
        ("min(x,1-x)", E.parse("min(x,1-x)")),
        ("x*x", E.parse("x*x")),
        ("5/8", E.parse("5/8")),
    ]
    for _ in range(5):
        corpus.append(_random_cubic(rng))
    assert len(corpus) == 12
    return corpus


@pytest.fixture(scope="session")
def corpus():
    return make_corpus()


# -- random prefix-closed trees ---------------------------------------------------


def random_prefix_closed(rng: random.Random, depth: int, keep: float) -> set[str]:
    words = {""}
    frontier = [""]
    for _ in range(depth):
        nxt = []
        for word in frontier:
            for bit in "01":
                if rng.random() < keep:
                    child = word + bit
                    words.add(child)
                    nxt.append(child)
        frontier = nxt
        if not frontier:
            break
    return words

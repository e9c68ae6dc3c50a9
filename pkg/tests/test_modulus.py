from __future__ import annotations

from fractions import Fraction

import pytest

from uctcert.dyadic import Dyadic, UNIT, ZERO, interval_of_word
from uctcert.errors import DepthExhausted
from uctcert.expr import parse
from uctcert.modulus import (
    ModulusConfig,
    build_faithful_tree,
    extract_modulus,
    extract_modulus_detailed,
    greedy_descent,
    membership_of,
    node_witness,
    verify_modulus,
)
from uctcert.witness import WitnessReport

from conftest import exact_abs_diff


def test_node_witness_examples():
    report = node_witness(parse("x"), Dyadic(1, 1), "", 4)
    assert report.found
    assert exact_abs_diff(parse("x"), report.x, report.y) > Fraction(1, 4)
    assert abs(report.x - report.y) < Dyadic(1)

    assert not node_witness(parse("5/8"), Dyadic(1, 2), "0", 4).found
    assert not node_witness(parse("x"), Dyadic(4), "", 4).found


def test_node_witness_draws_grid_from_cell():
    cell = interval_of_word("10")
    report = node_witness(parse("4*x"), Dyadic(1, 2), "10", 4)
    assert report.found
    assert cell.contains(report.x) and cell.contains(report.y)
    assert abs(report.x - report.y) < cell.width()


def test_membership_examples():
    f = parse("x")
    eps = Dyadic(1, 2)

    # A found pair whose oscillation equals eps must land In (eps > eps/2).
    found = WitnessReport(outcome="found", depth=4, x=ZERO, y=Dyadic(1, 2), flip_level=1)
    verdict, cert = membership_of(f, eps, found)
    assert verdict == "in"
    assert cert.lo > eps.scaled_pow2(-2)

    none = WitnessReport(outcome="none_up_to", depth=4)
    assert membership_of(f, eps, none) == ("out", None)

    # Oscillation eps/8 sits below the lower margin eps/4.
    weak = WitnessReport(outcome="found", depth=4, x=ZERO, y=Dyadic(1, 5), flip_level=1)
    verdict, cert = membership_of(f, eps, weak)
    assert verdict == "out"
    assert cert.hi < eps.half()


def test_verify_certified():
    result = verify_modulus(parse("x"), Dyadic(1, 2), Dyadic(1, 3))
    assert result.kind == "certified"
    assert result.max_osc_upper < Dyadic(1, 2)
    assert result.resolution_exp == 4

    const = verify_modulus(parse("5/8"), Dyadic(1, 3), Dyadic(1, 1))
    assert const.kind == "certified" and const.max_osc_upper == ZERO


def test_verify_counterexample():
    result = verify_modulus(parse("x"), Dyadic(1, 2), Dyadic(1, 1))
    assert result.kind == "counterexample"
    assert (result.x, result.y) == (ZERO, Dyadic(3, 3))
    assert abs(result.x - result.y) < Dyadic(1, 1)
    assert result.cert.lo > Dyadic(1, 2)
    assert exact_abs_diff(parse("x"), result.x, result.y) > Fraction(1, 4)


def test_verify_inconclusive_at_exact_boundary():
    # delta = eps for the identity: the open condition is true but its
    # closure fails, so region bounds can never settle on either side.
    result = verify_modulus(parse("x"), Dyadic(1, 2), Dyadic(1, 2))
    assert result.kind == "inconclusive"


def test_verify_preconditions():
    with pytest.raises(ValueError):
        verify_modulus(parse("x"), Dyadic(1, 2), Dyadic(3, 2))  # delta > 1/2
    with pytest.raises(ValueError):
        verify_modulus(parse("x"), Dyadic(1, 2), ZERO)
    with pytest.raises(ValueError):
        verify_modulus(parse("x"), ZERO, Dyadic(1, 2))


def test_verify_resolution_override():
    cfg = ModulusConfig(resolution_exp=6)
    result = verify_modulus(parse("x"), Dyadic(1, 2), Dyadic(1, 3), cfg)
    assert result.kind == "certified" and result.resolution_exp == 6


def test_extract_constant():
    cert = extract_modulus(parse("7"), Dyadic(1, 1))
    assert cert.delta_exp == 1 and cert.certified
    assert cert.depth_used == 0 and cert.xi_interval == UNIT
    assert cert.max_osc_upper == ZERO


def test_extract_identity_both_strategies():
    eps = Dyadic(1, 2)
    for strategy in ("greedy", "faithful"):
        cert = extract_modulus(parse("x"), eps, ModulusConfig(strategy=strategy))
        assert cert.certified and cert.strategy == strategy
        assert Dyadic(1, cert.delta_exp) <= Dyadic(1, 2)
        # Independent re-check at one level finer resolution.
        recheck = verify_modulus(
            parse("x"),
            eps,
            cert.delta,
            ModulusConfig(resolution_exp=cert.resolution_exp + 1),
        )
        assert recheck.kind == "certified"


def test_extract_abs_kink():
    cert = extract_modulus(parse("abs(x-1/2)"), Dyadic(1, 3))
    assert cert.certified and cert.delta_exp >= 3


def test_extract_with_division():
    # Exercises outward rounding end to end: gamma certificates, membership
    # comparisons and verifier bounds all carry nonzero enclosure widths.
    f = parse("1/(x+1)")
    cert = extract_modulus(f, Dyadic(1, 3))
    assert cert.certified
    # Steepest descent of 1/(x+1) is at 0, so the path should focus there.
    assert cert.xi_interval.lo == ZERO
    recheck = verify_modulus(
        f, Dyadic(1, 3), cert.delta, ModulusConfig(resolution_exp=cert.resolution_exp + 1)
    )
    assert recheck.kind == "certified"

    report = node_witness(f, Dyadic(1, 2), "", 4)
    assert report.found
    assert exact_abs_diff(f, report.x, report.y) > Fraction(1, 4)
    assert report.cert.lo.as_fraction() <= exact_abs_diff(f, report.x, report.y)


def test_extract_monotone_usability():
    eps = Dyadic(1, 2)
    for text in ("x", "x*x", "abs(x-1/2)", "min(x,1-x)"):
        f = parse(text)
        cert = extract_modulus(f, eps)
        halved = verify_modulus(f, eps, cert.delta.half())
        assert halved.kind == "certified", text


def test_verify_rejects_too_coarse_resolution():
    cfg = ModulusConfig(resolution_exp=2)
    with pytest.raises(ValueError):
        verify_modulus(parse("x"), Dyadic(1, 2), Dyadic(1, 3), cfg)


def test_verify_refuses_intractable_partition():
    with pytest.raises(DepthExhausted):
        verify_modulus(parse("x"), Dyadic(1, 2), Dyadic(1, 30))


def test_faithful_membership_margins():
    eps = Dyadic(1, 2)
    nodes, levels = build_faithful_tree(parse("x"), eps, ModulusConfig(strategy="faithful"))
    in_words = {w for level in levels for w in level}
    assert in_words  # identity map has violating pairs at eps/2
    for node in nodes:
        assert node.membership in ("in", "out")
        if node.membership == "in":
            assert node.cert is not None and node.cert.lo > eps.scaled_pow2(-2)
            assert node.report.found
            assert abs(node.report.x - node.report.y) < node.interval.width()
        elif node.cert is not None:
            assert node.cert.hi < eps.half()


def test_greedy_descent_path():
    nodes, word = greedy_descent(parse("x"), Dyadic(1, 2), ModulusConfig())
    assert word == "00"
    _, none_word = greedy_descent(parse("7"), Dyadic(1, 2), ModulusConfig())
    assert none_word is None


def test_extract_depth_exhausted():
    with pytest.raises(DepthExhausted):
        extract_modulus(parse("4*x"), Dyadic(1, 2), ModulusConfig(delta_exp_cap=2))


def test_certificate_json_shape():
    cert, diagnostics = extract_modulus_detailed(parse("x"), Dyadic(1, 2))
    out = cert.to_json_dict()
    assert list(out) == [
        "epsilon",
        "delta_exp",
        "strategy",
        "xi_interval",
        "depth_used",
        "verification",
    ]
    assert out["epsilon"] == "1/2^2"
    assert out["verification"]["certified"] is True
    assert out["xi_interval"] == ["0/2^0", "1/2^2"]
    assert diagnostics["path_word"] == "00"

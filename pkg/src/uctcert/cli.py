"""Command-line interface with bit-exact JSON output.

Every number printed is an exact dyadic string, never floating point, so
identical command lines produce byte-identical output.  Exit codes: 0 for
found/certified, 2 for none-up-to/counterexample, 3 for inconclusive or
exhausted budgets, 1 for argument and input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .binseq import (
    check_word,
    dyadic_to_word,
    interleave,
    proj0,
    proj1,
    word_to_dyadic,
)
from .dyadic import Dyadic, interval_of_word, level_grid
from .enclosure import DEFAULT_PREC_CAP
from .errors import DepthExhausted, RefinementBudgetExceeded
from .expr import parse as parse_expr
from .modulus import (
    ModulusConfig,
    extract_modulus_detailed,
    verify_modulus,
)
from .trees import (
    DEFAULT_MAX_DEPTH,
    UNBOUNDED,
    load_tree,
    longest_path,
    lpp_reduction,
    tree_height,
    tree_to_obj,
    wkl_path,
)
from .witness import find_witnesses


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _default_prec_cap() -> int:
    raw = os.environ.get("UCT_PREC_CAP")
    if raw is None:
        return DEFAULT_PREC_CAP
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"UCT_PREC_CAP must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise ValueError("UCT_PREC_CAP must be positive")
    return value


def _positive_dyadic(text: str) -> Dyadic:
    value = Dyadic.parse(text)
    if not value > 0:
        raise ValueError(f"expected a positive dyadic, got {text!r}")
    return value


def _positive(name: str, value: int | None) -> int | None:
    if value is not None and value < 1:
        raise ValueError(f"{name} must be positive")
    return value


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--prec-cap",
        type=int,
        default=None,
        help="precision cap in bits (default 4096, or UCT_PREC_CAP)",
    )
    parser.add_argument(
        "--transcendentals",
        action="store_true",
        help="enable sin/cos/exp in expressions",
    )
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="as_json", action="store_true", default=None)
    fmt.add_argument("--text", dest="as_json", action="store_false")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uctcert",
        description="Certified moduli of uniform continuity on [0,1], exact to the bit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encode", help="word/dyadic combinators")
    enc_sub = enc.add_subparsers(dest="op", required=True)
    p = enc_sub.add_parser("g", help="binary-fraction value of a word")
    p.add_argument("word")
    _add_common(p)
    p = enc_sub.add_parser("decode", help="length-n word of a grid dyadic")
    p.add_argument("value")
    p.add_argument("length", type=int)
    _add_common(p)
    p = enc_sub.add_parser("sum", help="interleave two equal-length words")
    p.add_argument("left")
    p.add_argument("right")
    _add_common(p)
    p = enc_sub.add_parser("proj0", help="even positions of a word")
    p.add_argument("word")
    _add_common(p)
    p = enc_sub.add_parser("proj1", help="odd positions of a word")
    p.add_argument("word")
    _add_common(p)
    p = enc_sub.add_parser("interval", help="bisection cell of a word")
    p.add_argument("word")
    _add_common(p)
    p = enc_sub.add_parser("grid", help="level-n grid points")
    p.add_argument("level", type=int)
    _add_common(p)

    tre = sub.add_parser("tree", help="path search on tree files")
    _add_common(tre)
    tre.add_argument("op", choices=["longest", "wkl", "height", "reduce"])
    tre.add_argument("file")
    tre.add_argument("--depth", type=int, default=DEFAULT_MAX_DEPTH)
    tre.add_argument(
        "--check-lpp",
        action="store_true",
        help="enumerate and assert the longest-path law",
    )

    wit = sub.add_parser("witness", help="search for a violating pair")
    _add_common(wit)
    wit.add_argument("--expr", required=True)
    wit.add_argument("--eps", required=True)
    wit.add_argument("--delta", required=True)
    wit.add_argument("--max-depth", type=int, default=8)
    wit.add_argument("--trace", action="store_true")

    mod = sub.add_parser("modulus", help="extract a certified modulus")
    _add_common(mod)
    mod.add_argument("--expr", required=True)
    mod.add_argument("--eps", required=True)
    mod.add_argument("--strategy", choices=["greedy", "faithful"], default="greedy")
    mod.add_argument("--max-depth", type=int, default=None)
    mod.add_argument("--inner-depth", type=int, default=4)
    mod.add_argument("--trace", action="store_true")

    ver = sub.add_parser("verify", help="check a candidate modulus")
    _add_common(ver)
    ver.add_argument("--expr", required=True)
    ver.add_argument("--eps", required=True)
    ver.add_argument("--delta", required=True)
    ver.add_argument("--resolution-exp", type=int, default=None)

    return parser


def _emit_scalar(value: str, as_json: bool) -> None:
    print(_dumps(value) if as_json else value)


def _emit_list(values: list[str], as_json: bool) -> None:
    if as_json:
        print(_dumps(values))
    else:
        print("[" + ", ".join(values) + "]")


def _run_encode(args) -> int:
    as_json = bool(args.as_json)  # encode defaults to text
    if args.op == "g":
        _emit_scalar(str(word_to_dyadic(check_word(args.word))), as_json)
    elif args.op == "decode":
        _emit_scalar(dyadic_to_word(Dyadic.parse(args.value), args.length), as_json)
    elif args.op == "sum":
        _emit_scalar(interleave(check_word(args.left), check_word(args.right)), as_json)
    elif args.op == "proj0":
        _emit_scalar(proj0(check_word(args.word)), as_json)
    elif args.op == "proj1":
        _emit_scalar(proj1(check_word(args.word)), as_json)
    elif args.op == "interval":
        cell = interval_of_word(check_word(args.word))
        _emit_list([str(cell.lo), str(cell.hi)], as_json)
    elif args.op == "grid":
        _emit_list([str(p) for p in level_grid(args.level)], as_json)
    return 0


def _check_lpp_law(tree, result, depth: int) -> None:
    height = tree_height(tree, depth)
    bound = depth if height is UNBOUNDED else height
    for n in range(depth + 1):
        if not tree.member(result.prefix(n)) and bound >= n:
            raise AssertionError(f"longest-path law violated at prefix length {n}")


def _run_tree(args) -> int:
    as_json = args.as_json is not False  # tree defaults to json
    if args.depth < 0:
        raise ValueError("--depth must be >= 0")
    tree = load_tree(args.file)
    if args.op in ("longest", "wkl"):
        if args.op == "longest":
            result = longest_path(tree, args.depth)
        else:
            result = wkl_path(tree, args.depth)
        payload = result.to_json_dict()
        if args.op == "longest" and args.check_lpp:
            _check_lpp_law(tree, result, args.depth)
            payload["lpp_law"] = "holds"
        if as_json:
            print(_dumps(payload))
        else:
            status = "full_depth" if result.full_depth else f"longest={result.longest_len}"
            print(f"{result.word} {status}")
        return 0
    if args.op == "height":
        height = tree_height(tree, args.depth)
        value = "unbounded" if height is UNBOUNDED else height
        print(_dumps({"height": value}) if as_json else str(value))
        return 0
    # reduce
    obj = tree_to_obj(lpp_reduction(tree, args.depth), args.depth)
    if as_json:
        print(_dumps(obj))
    else:
        print(" ".join(w if w else '""' for w in obj["words"]))
    return 0


def _run_witness(args) -> int:
    as_json = args.as_json is not False
    f = parse_expr(args.expr, transcendentals=args.transcendentals)
    eps = _positive_dyadic(args.eps)
    delta = _positive_dyadic(args.delta)
    _positive("--max-depth", args.max_depth)
    prec_cap = _positive(
        "--prec-cap", args.prec_cap if args.prec_cap is not None else _default_prec_cap()
    )
    report = find_witnesses(f, eps, delta, args.max_depth, prec_cap=prec_cap)
    if as_json:
        print(_dumps(report.to_json_dict(include_trace=args.trace)))
    elif report.found:
        print(f"found x={report.x} y={report.y} flip_level={report.flip_level}")
    else:
        print(f"none_up_to depth={report.depth}")
    return 0 if report.found else 2


def _run_modulus(args) -> int:
    as_json = args.as_json is not False
    f = parse_expr(args.expr, transcendentals=args.transcendentals)
    eps = _positive_dyadic(args.eps)
    prec_cap = _positive(
        "--prec-cap", args.prec_cap if args.prec_cap is not None else _default_prec_cap()
    )
    cfg = ModulusConfig(
        strategy=args.strategy,
        max_depth=_positive("--max-depth", args.max_depth),
        inner_depth=_positive("--inner-depth", args.inner_depth),
        prec_cap=prec_cap,
    )
    certificate, diagnostics = extract_modulus_detailed(f, eps, cfg)
    payload = certificate.to_json_dict()
    if args.trace:
        trace = {
            "path_word": diagnostics["path_word"],
            "candidate_exp": diagnostics["candidate_exp"],
            "delta_local": (
                str(diagnostics["delta_local"])
                if diagnostics["delta_local"] is not None
                else None
            ),
        }
        if diagnostics["level_sizes"] is not None:
            trace["level_sizes"] = diagnostics["level_sizes"]
        payload["trace"] = trace
    if as_json:
        print(_dumps(payload))
    else:
        print(f"delta=1/2^{certificate.delta_exp} certified")
    return 0


def _run_verify(args) -> int:
    as_json = args.as_json is not False
    f = parse_expr(args.expr, transcendentals=args.transcendentals)
    eps = _positive_dyadic(args.eps)
    delta = _positive_dyadic(args.delta)
    prec_cap = _positive(
        "--prec-cap", args.prec_cap if args.prec_cap is not None else _default_prec_cap()
    )
    cfg = ModulusConfig(
        prec_cap=prec_cap,
        resolution_exp=_positive("--resolution-exp", args.resolution_exp),
    )
    result = verify_modulus(f, eps, delta, cfg)
    if result.kind == "certified":
        payload = {
            "result": "certified",
            "resolution_exp": result.resolution_exp,
            "max_osc_upper": str(result.max_osc_upper),
        }
        code = 0
    elif result.kind == "counterexample":
        payload = {
            "result": "counterexample",
            "x": str(result.x),
            "y": str(result.y),
            "cert_lo": str(result.cert.lo),
        }
        code = 2
    else:
        payload = {"result": "inconclusive", "resolution_exp": result.resolution_exp}
        code = 3
    if as_json:
        print(_dumps(payload))
    else:
        print(payload["result"])
    return code


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "encode":
            return _run_encode(args)
        if args.command == "tree":
            return _run_tree(args)
        if args.command == "witness":
            return _run_witness(args)
        if args.command == "modulus":
            return _run_modulus(args)
        if args.command == "verify":
            return _run_verify(args)
        parser.error(f"unknown command {args.command!r}")
    except (DepthExhausted, RefinementBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

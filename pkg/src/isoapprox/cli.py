"""Command-line front end.

Exit status: 0 on success, 1 on a validation or precondition failure,
2 on I/O or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cone import certify, eval_expr, expr_from_json, expr_to_json, node_count
from .construct import Construction
from .errors import ParseError, ValidationError
from .funcspace import Family, GroundFunction, generates, upset_generators
from .pl import PROVIDERS
from .poset import Poset
from .rational import fmt, to_rational
from .verify import SuiteConfig, run_suite

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed JSON: {exc}") from exc


def _write_json(path, obj) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def load_poset(path) -> Poset:
    d = _read_json(path)
    if not isinstance(d, dict):
        raise ParseError(f"{path}: expected a JSON object")
    return Poset.from_json(d)


def load_family(P: Poset, path) -> Family:
    d = _read_json(path)
    if not isinstance(d, dict):
        raise ParseError(f"{path}: expected a JSON object")
    return Family.from_json(P, d)


def load_function(path) -> GroundFunction:
    d = _read_json(path)
    try:
        return GroundFunction.of(d["values"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"{path}: bad function document: {exc}") from exc


def _index_list(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated indices, got {text!r}") from exc


def _positive_rational(text: str):
    try:
        q = to_rational(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if q <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return q


def _value_table(P: Poset, values) -> str:
    return "\n".join(f"  {P.label(m):>8}  {fmt(v)}" for m, v in enumerate(values))


def cmd_validate(args) -> int:
    P = load_poset(args.poset)
    print(f"valid poset: {P.n} elements, {P.relation_size()} related pairs, {len(P.covers())} covers")
    return EXIT_OK


def cmd_gen_upsets(args) -> int:
    P = load_poset(args.poset)
    S = upset_generators(P)
    _write_json(args.output, S.to_json(str(args.poset)))
    print(f"wrote {len(S)} upset indicators", file=sys.stderr)
    return EXIT_OK


def cmd_check_generates(args) -> int:
    P = load_poset(args.poset)
    S = load_family(P, args.family)
    res = generates(P, S)
    if res:
        print("true")
        return EXIT_OK
    a, b = res.witness
    print(f"false: witness ({P.label(a)}, {P.label(b)}): {P.label(a)} is not below {P.label(b)}, "
          f"yet every member has f({P.label(a)}) <= f({P.label(b)})")
    return EXIT_INVALID


def cmd_separate(args) -> int:
    P = load_poset(args.poset)
    S = load_family(P, args.family)
    sep = Construction(P, S, args.provider).separate_sets(args.zero_on, args.one_on)
    _write_json(args.output, expr_to_json(sep.expr))
    print(f"certificate nodes: {node_count(sep.expr)}")
    print(_value_table(P, sep.values))
    return EXIT_OK


def cmd_approximate(args) -> int:
    P = load_poset(args.poset)
    S = load_family(P, args.family)
    f = load_function(args.target)
    build = Construction(P, S, args.provider, check=True)
    rep = build.approximate(f, eps=args.eps, n=args.n)
    _write_json(args.output, rep.to_json())
    print(f"n: {rep.n}")
    print(f"bound: {fmt(rep.bound)}")
    print(f"error: {fmt(rep.error)}")
    print(f"certificate nodes: {node_count(rep.F_expr)}")
    return EXIT_OK


def cmd_replay(args) -> int:
    P = load_poset(args.poset)
    S = load_family(P, args.family)
    d = _read_json(args.certificate)
    if isinstance(d, dict) and "F" in d:
        expr = expr_from_json(d["F"])
        claimed = GroundFunction.of(d["F_values"])
        res = certify(P, S, expr, claimed)
        if not res:
            print(f"mismatch at element {P.label(res.index)}: report {fmt(res.expected)}, replay {fmt(res.got)}")
            return EXIT_INVALID
        print("certificate replays to the reported values")
        print(_value_table(P, claimed))
        return EXIT_OK
    values = eval_expr(P, S, expr_from_json(d))
    print(_value_table(P, values))
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = SuiteConfig(
        seed=args.seed,
        trials=args.trials,
        max_poset_size=args.max_size,
        n_values=tuple(args.n_list),
        provider=args.provider,
    )
    out = run_suite(cfg)
    _write_json(args.output, out.to_json(cfg))
    return EXIT_OK if out.passed else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isoapprox",
        description="Certified approximation of isotone functions on finite posets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="load and validate a poset file")
    p.add_argument("poset")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("gen-upsets", help="write the upset-indicator family of a poset")
    p.add_argument("poset")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_gen_upsets)

    p = sub.add_parser("check-generates", help="does the family generate the order?")
    p.add_argument("poset")
    p.add_argument("family")
    p.set_defaults(func=cmd_check_generates)

    p = sub.add_parser("separate", help="certificate equal to 0 on one set and 1 on another")
    p.add_argument("poset")
    p.add_argument("family")
    p.add_argument("--zero-on", type=_index_list, required=True)
    p.add_argument("--one-on", type=_index_list, required=True)
    p.add_argument("--provider", choices=PROVIDERS, default="pl")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_separate)

    p = sub.add_parser("approximate", help="certified approximation of a target function")
    p.add_argument("poset")
    p.add_argument("family")
    p.add_argument("target")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--eps", type=_positive_rational)
    g.add_argument("--n", type=int)
    p.add_argument("--provider", choices=PROVIDERS, default="pl")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_approximate)

    p = sub.add_parser("replay", help="evaluate a certificate or check an approximation report")
    p.add_argument("poset")
    p.add_argument("family")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("verify", help="run the randomized verification suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--max-size", type=int, default=30)
    p.add_argument("--n-list", type=_index_list, default=list(range(1, 11)))
    p.add_argument("--provider", choices=PROVIDERS, default="pl")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValidationError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

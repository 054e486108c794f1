"""``munnlab`` command-line interface.

Exit codes: 0 success, 2 invalid input, 3 modular case, 4 classifier
disagreement, 5 budget exceeded.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from typing import Sequence

from . import __version__
from .errors import InvalidInput, MunnLabError
from .problem import ProblemSpec, load_problem, parse_problem, problem_from_dict
from .report import (
    census_report,
    classify_report,
    decompose_report,
    dumps,
    graph_dot,
    graph_report,
    summary_lines,
)

EXIT_OK = 0


def parse_caps(text: str) -> tuple[int, int]:
    """'3/2' or '3,2' -> (3, 2): caps on dim V_0 and on each F_k-dimension of V_k."""
    for sep in "/,":
        if sep in text:
            a, b = text.split(sep, 1)
            break
    else:
        a = b = text
    try:
        caps = (int(a), int(b))
    except ValueError:
        raise InvalidInput(f"bad caps {text!r}; expected e.g. 3/2") from None
    if min(caps) < 0:
        raise InvalidInput("caps must be non-negative")
    return caps


def parse_triples(text: str) -> list[list[int]]:
    """'1,1,1;2,1,1' -> [[1,1,1],[2,1,1]]; the empty string is the empty set."""
    out = []
    for chunk in filter(None, (c.strip() for c in text.replace(" ", "").split(";"))):
        try:
            t = [int(x) for x in chunk.strip("()").split(",")]
        except ValueError:
            raise InvalidInput(f"bad triple {chunk!r}") from None
        if len(t) != 3:
            raise InvalidInput(f"triple {chunk!r} needs three entries")
        out.append(t)
    return out


def _problem(args) -> ProblemSpec:
    sources = [x for x in (args.problem, args.triples, args.group) if x is not None]
    if len(sources) != 1:
        raise InvalidInput("give exactly one of a problem file, --triples or --group")
    if args.problem is not None:
        if args.problem == "-":
            spec = parse_problem(sys.stdin.read(), "json" if args.stdin_json else "toml")
        else:
            spec = load_problem(args.problem)
    elif args.triples is not None:
        spec = problem_from_dict({"raw_triples": parse_triples(args.triples)})
    else:
        sandwich = [["e"]] if args.sandwich is None else [
            [x.strip() for x in row.split(",")] for row in args.sandwich.split(";")
        ]
        spec = problem_from_dict({"group": {"builtin": args.group}, "sandwich": sandwich})
    changes = {}
    if args.seed is not None:
        changes["seed"] = args.seed
    if args.char is not None:
        changes.update(mode="explicit", char=args.char)
    if args.split:
        changes.update(mode="split", char=None)
    return dataclasses.replace(spec, **changes) if changes else spec


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        sys.stdout.write(dumps(report))
    else:
        sys.stdout.write("\n".join(summary_lines(report)) + "\n")


def cmd_decompose(args) -> int:
    _emit(decompose_report(_problem(args)), args.json)
    return EXIT_OK


def cmd_classify(args) -> int:
    caps = parse_caps(args.caps) if args.caps else None
    report = classify_report(_problem(args), caps, args.census_char, args.force)
    _emit(report, args.json)
    if not report["agreement"]:
        print("error: classifiers disagree", file=sys.stderr)
        return 4
    return EXIT_OK


def cmd_graph(args) -> int:
    spec = _problem(args)
    if args.json:
        _emit(graph_report(spec), True)
    else:
        # DOT is the default rendering of this command; --dot is accepted for symmetry
        sys.stdout.write(graph_dot(spec))
    return EXIT_OK


def cmd_census(args) -> int:
    caps = parse_caps(args.caps or "3/2")
    report = census_report(_problem(args), caps, args.census_char, args.force)
    _emit(report, args.json)
    return EXIT_OK


def cmd_selfcheck(args) -> int:
    from .selfcheck import run_selfcheck

    ok = True
    for name, passed, detail in run_selfcheck(seed=args.seed or 0):
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
    return EXIT_OK if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="munnlab",
        description="Representation type of Munn algebras and finite Rees matrix semigroups.",
    )
    parser.add_argument("--version", action="version", version=f"munnlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("problem", nargs="?", help="problem file (.toml or .json; '-' for stdin)")
        p.add_argument("--triples", help="raw triple set, e.g. '1,1,1;2,1,1'")
        p.add_argument("--group", help="builtin group, e.g. 'cyclic(3)'")
        p.add_argument("--sandwich", help="sandwich rows for --group, e.g. 'e,0;0,0'")
        p.add_argument("--stdin-json", action="store_true", help="read JSON from stdin")
        p.add_argument("--json", action="store_true", help="emit the JSON report")
        p.add_argument("--seed", type=int, default=None, help="random seed (default 0)")
        p.add_argument("--char", type=int, default=None, help="explicit characteristic")
        p.add_argument("--split", action="store_true", help="use a splitting characteristic")

    def census_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--caps", help="census caps 'a/b': dim V_0 <= a, dim V_k <= b")
        p.add_argument("--census-char", type=int, default=2, choices=(2, 3))
        p.add_argument("--force", action="store_true", help="run the census on non-Dynkin graphs")

    p = sub.add_parser("decompose", help="Wedderburn components of kG")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("classify", help="full pipeline with both verdicts")
    common(p)
    census_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("graph", help="valued graph as DOT (or JSON)")
    common(p)
    p.add_argument("--dot", action="store_true", help="emit DOT (the default)")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("census", help="count indecomposable modules within caps")
    common(p)
    census_flags(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("selfcheck", help="run the worked examples")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MunnLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

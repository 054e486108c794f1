"""Quick end-to-end checks on the worked examples, for ``munnlab selfcheck``."""

from __future__ import annotations

from typing import Callable, Iterator

from .errors import ModularCase
from .group_algebra import check_wedderburn, split_char, wedderburn
from .groups import group_builtin
from .module_cat import enumerate_indecomposables
from .munn import rees_make, triples
from .rep_type import classify_by_graph, classify_munn, classify_rees
from .valued_graph import classify_components, graph_from_triples


def _c3_char5() -> tuple[bool, str]:
    wd = wedderburn(group_builtin("cyclic(3)"), 5)
    check_wedderburn(wd)
    got = wd.summary()
    return got == [(1, 1, 1), (2, 1, 2)], f"(d,c,u) = {got}"


def _c3_split() -> tuple[bool, str]:
    G = group_builtin("cyclic(3)")
    p = split_char(G)
    got = wedderburn(G, p).summary()
    return p == 7 and got == [(1, 1, 1)] * 3, f"char {p}, (d,c,u) = {got}"


def _s3_char3() -> tuple[bool, str]:
    try:
        wedderburn(group_builtin("symmetric(3)"), 3)
    except ModularCase:
        return True, "modular case rejected"
    return False, "modular case accepted"


def _rees(spec: str, char: int, sandwich, kind: str, case: str) -> Callable[[], tuple[bool, str]]:
    def run() -> tuple[bool, str]:
        G = group_builtin(spec)
        S = rees_make(G, len(sandwich), len(sandwich[0]), sandwich)
        T = triples(S, char)
        v = classify_rees(T, G.order)
        g = classify_by_graph(T)
        ok = v.kind == g.kind == kind and v.evidence == case
        return ok, f"T = {T}, {v.kind} [{v.evidence}], graph {g.kind}"

    return run


def _raw(T, kind: str) -> Callable[[], tuple[bool, str]]:
    def run() -> tuple[bool, str]:
        v, g = classify_munn(T), classify_by_graph(T)
        return v.kind == g.kind == kind, f"{v.kind} [{v.evidence}], graph {g.kind}"

    return run


def _euclidean() -> tuple[bool, str]:
    (c,) = classify_components(graph_from_triples([(2, 1, 1)]))
    ok = c.kind == "Euclidean" and c.null_root == (1, 1, 1) and c.corank == 1
    return ok, f"{c.kind} {c.name}, null root {c.null_root}"


def _census(T, caps, expected: int) -> Callable[[], tuple[bool, str]]:
    def run() -> tuple[bool, str]:
        c = enumerate_indecomposables(T, caps, 2)
        return c.count == expected == c.expected, f"count {c.count}, expected {c.expected}"

    return run


CHECKS: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("decompose C3 over F5", _c3_char5),
    ("decompose C3 split", _c3_split),
    ("S3 over F3 is modular", _s3_char3),
    ("C1 2x2 [[e,0],[0,0]]", _rees("cyclic(1)", 2, [["e", "0"], ["0", "0"]], "Finite", "rees-1a")),
    ("C2 2x2 all e over F5", _rees("cyclic(2)", 5, [["e", "e"], ["e", "e"]], "Tame", "rees-2a")),
    ("raw {(1,2,2)}", _raw([(1, 2, 2)], "Wild")),
    ("Euclidean {(2,1,1)}", _euclidean),
    ("census {(1,1,1)} caps 3/2", _census([(1, 1, 1)], (3, 2), 5)),
    ("census {(1,1,0)} caps 2/2", _census([(1, 1, 0)], (2, 2), 3)),
]


def run_selfcheck(seed: int = 0) -> Iterator[tuple[str, bool, str]]:
    for name, check in CHECKS:
        try:
            ok, detail = check()
        except Exception as exc:  # report, do not abort the run
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        yield name, ok, detail

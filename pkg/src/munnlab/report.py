"""The pipeline behind the CLI and its JSON reports.

decompose -> triples -> graph -> classify -> optional census.  Reports are
plain dicts serialized with sorted keys, so the same problem and seed give a
byte-identical document.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Any

from . import __version__
from .errors import ClassifierDisagreement, InvalidInput
from .group_algebra import component_rank, group_algebra_field, wedderburn
from .module_cat import enumerate_indecomposables
from .munn import ReesSemigroup, TripleSet, rees_make, triples, union_data
from .problem import ProblemSpec, choose_char
from .rep_type import (
    RepTypeVerdict,
    classify_by_graph,
    classify_munn,
    classify_rees,
    classify_union,
)
from .valued_graph import DYNKIN, classify_components, graph_as_dict, graph_from_triples, to_dot

SCHEMA_VERSION = "1.0"


def load_schema() -> dict:
    text = resources.files("munnlab").joinpath("report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _verdict(v: RepTypeVerdict) -> dict:
    out: dict[str, Any] = {"kind": v.kind, "case": v.evidence}
    if v.notes:
        out["notes"] = list(v.notes)
    return out


@dataclass
class Analysis:
    """Everything computed for one problem."""

    spec: ProblemSpec
    char: int | None
    semigroups: list[ReesSemigroup]
    components: list[dict]
    triples: TripleSet

    def field_dict(self) -> dict:
        return {"mode": self.spec.mode, "char": self.char}


def _semigroup(G, sandwich) -> ReesSemigroup:
    return rees_make(G, len(sandwich), len(sandwich[0]), sandwich)


def _component_rows(S: ReesSemigroup, char: int, seed: int, part: int) -> tuple[list[dict], TripleSet]:
    wd = wedderburn(S.group, group_algebra_field(S.group, char), seed)
    rows = []
    for k, comp in enumerate(wd):
        r = component_rank(S.sandwich, comp)
        rows.append(
            {
                "part": part,
                "index": k,
                "d": comp.d,
                "c": comp.c,
                "u": comp.u,
                "r": r,
                "m": S.P * comp.c - r,
                "n": S.Q * comp.c - r,
            }
        )
    return rows, triples(S, char, seed, wd)


def analyse(spec: ProblemSpec) -> Analysis:
    if spec.kind == "triples":
        return Analysis(spec, spec.char, [], [], spec.triple_set())
    groups = spec.groups()
    char = choose_char(spec, groups)
    if spec.kind == "rees":
        sgs = [_semigroup(groups[0], spec.sandwich)]
    else:
        sgs = [_semigroup(G, p.sandwich) for G, p in zip(groups, spec.parts)]
    comps: list[dict] = []
    T = TripleSet()
    for i, S in enumerate(sgs):
        rows, Ti = _component_rows(S, char, spec.seed, i)
        comps += rows
        T = T + Ti
    return Analysis(spec, char, sgs, comps, T)


def decompose_report(spec: ProblemSpec) -> dict:
    if spec.kind == "triples":
        raise InvalidInput("decompose needs a group")
    groups = spec.groups()
    char = choose_char(spec, groups)
    out = []
    for i, G in enumerate(groups):
        wd = wedderburn(G, group_algebra_field(G, char), spec.seed)
        out.append(
            {
                "part": i,
                "group": G.name,
                "order": G.order,
                "classes": len(G.conjugacy_classes),
                "components": [{"index": k, "d": c.d, "c": c.c, "u": c.u} for k, c in enumerate(wd)],
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "munnlab", "version": __version__},
        "command": "decompose",
        "problem": spec.to_dict(),
        "field": {"mode": spec.mode, "char": char},
        "decomposition": out,
    }


def verdicts(a: Analysis) -> tuple[dict, bool]:
    T = a.triples
    graph = classify_by_graph(T)
    munn = classify_munn(T)
    munn_literal = classify_munn(T, literal=True)
    out: dict[str, Any] = {"graph": {"kind": graph.kind, "case": graph.evidence}, "munn": _verdict(munn)}
    literal = {"munn": _verdict(munn_literal)}
    kinds = {graph.kind, munn.kind}
    if a.spec.kind == "rees":
        S = a.semigroups[0]
        th = classify_rees(T, S.group.order)
        literal["theorem"] = _verdict(classify_rees(T, S.group.order, literal=True))
    elif a.spec.kind == "union":
        parts = [(S, a.char) for S in a.semigroups]
        U = union_data(parts, a.spec.seed)
        th = classify_union(U)
        literal["theorem"] = _verdict(classify_union(U, literal=True))
        out["union"] = {"T_gt": U.T_gt, "T_lt": U.T_lt, "T0": _triples(U.T0), "T1": _triples(U.T1)}
    else:
        th = munn
        literal["theorem"] = literal["munn"]
    kinds.add(th.kind)
    out["theorem"] = _verdict(th)
    out["literal"] = literal
    return out, len(kinds) == 1


def _triples(T: TripleSet) -> list[list[int]]:
    return [list(t) for t in T.canonical()]


def classify_report(spec: ProblemSpec, census_caps: tuple[int, int] | None = None,
                    census_char: int = 2, force: bool = False) -> dict:
    a = analyse(spec)
    g = graph_from_triples(a.triples)
    classes = classify_components(g)
    v, agree = verdicts(a)
    report: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "munnlab", "version": __version__},
        "command": "classify",
        "problem": spec.to_dict(),
        "field": a.field_dict(),
        "wedderburn": a.components,
        "triples": _triples(a.triples),
        "graph": graph_as_dict(g, classes),
        "verdicts": v,
        "agreement": agree,
    }
    if census_caps is not None:
        report["census"] = census_section(a.triples, census_caps, census_char, force)
    return report


def census_section(T: TripleSet, caps: tuple[int, int], char: int = 2, force: bool = False) -> dict:
    classes = classify_components(graph_from_triples(T))
    if not force and any(c.kind != DYNKIN for c in classes):
        raise InvalidInput("census refused: the valued graph is not Dynkin (use --force)")
    c = enumerate_indecomposables(T, tuple(caps), char)
    return {
        "caps": list(caps),
        "char": char,
        "count": c.count,
        "expected": c.expected,
        "match": c.match,
        "enumerated": c.enumerated,
        "dimension_vectors": [list(m.dimension_vector) for m in c.modules],
    }


def census_report(spec: ProblemSpec, caps: tuple[int, int], char: int = 2, force: bool = False) -> dict:
    a = analyse(spec)
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "munnlab", "version": __version__},
        "command": "census",
        "problem": spec.to_dict(),
        "field": a.field_dict(),
        "triples": _triples(a.triples),
        "census": census_section(a.triples, caps, char, force),
    }


def graph_dot(spec: ProblemSpec) -> str:
    return to_dot(graph_from_triples(analyse(spec).triples))


def graph_report(spec: ProblemSpec) -> dict:
    a = analyse(spec)
    g = graph_from_triples(a.triples)
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "munnlab", "version": __version__},
        "command": "graph",
        "problem": spec.to_dict(),
        "field": a.field_dict(),
        "triples": _triples(a.triples),
        "graph": graph_as_dict(g, classify_components(g)),
        "dot": to_dot(g),
    }


def require_agreement(report: dict) -> dict:
    if report.get("agreement") is False:
        v = report["verdicts"]
        raise ClassifierDisagreement(
            f"theorem {v['theorem']['kind']} ({v['theorem']['case']}) vs graph {v['graph']['kind']}"
        )
    return report


def summary_lines(report: dict) -> list[str]:
    """Human-readable rendering of a report."""
    lines = []
    fld = report.get("field", {})
    if fld.get("char") is not None:
        lines.append(f"field: F_{fld['char']} ({fld['mode']})")
    for part in report.get("decomposition", []):
        lines.append(f"group {part['group']} (order {part['order']}, {part['classes']} classes)")
        lines.append("  k  d  c  u")
        for c in part["components"]:
            lines.append(f"  {c['index']:<2} {c['d']:<2} {c['c']:<2} {c['u']}")
    if report.get("wedderburn"):
        lines.append("components:")
        lines.append("  part k  d  c  u  r  m  n")
        for c in report["wedderburn"]:
            lines.append(
                f"  {c['part']:<4} {c['index']:<2} {c['d']:<2} {c['c']:<2} {c['u']:<2} "
                f"{c['r']:<2} {c['m']:<2} {c['n']}"
            )
    if "triples" in report:
        ts = ", ".join(f"({d},{m},{n})" for d, m, n in report["triples"]) or "empty"
        lines.append(f"triples: {{{ts}}}")
    if "graph" in report:
        for c in report["graph"]["components"]:
            extra = f" null root {tuple(c['null_root'])}" if c["null_root"] else ""
            name = f" {c['name']}" if c["name"] else ""
            lines.append(f"component {{{', '.join(c['vertices'])}}}: {c['kind']}{name}{extra}")
    if "verdicts" in report:
        v = report["verdicts"]
        lines.append(f"theorem: {v['theorem']['kind']} [{v['theorem']['case']}]")
        lines.append(f"graph:   {v['graph']['kind']}")
        for note in v["theorem"].get("notes", []):
            lines.append(f"note: {note}")
        lines.append(f"agreement: {'yes' if report['agreement'] else 'NO'}")
    if "census" in report:
        c = report["census"]
        exp = "n/a" if c["expected"] is None else c["expected"]
        lines.append(
            f"census over F_{c['char']} caps {c['caps'][0]}/{c['caps'][1]}: "
            f"{c['count']} indecomposables, expected {exp}"
        )
    return lines

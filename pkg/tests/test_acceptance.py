"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines.  Every
check is exact (tolerance 0); the time limits are pinned below.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from pathlib import Path

import jsonschema
import numpy as np

from munnlab.cli import main
from munnlab.errors import ModularCase
from munnlab.group_algebra import (
    as_algebra_grid,
    check_wedderburn,
    component_rank,
    group_algebra_field,
    regular_block_rank,
    wedderburn,
)
from munnlab.groups import catalog, group_builtin
from munnlab.module_cat import (
    enumerate_indecomposables,
    find_isomorphism,
    from_graph_rep,
    hom_space,
    in_ideal_J,
    phi_on_morphism,
    random_graph_rep,
    random_mod_plus,
    to_graph_rep,
)
from munnlab.munn import TripleExtractor, rees_make, single_part_union, triple_set, union_data
from munnlab.problem import choose_char, load_problem
from munnlab.report import load_schema
from munnlab.rep_type import (
    classify_by_graph,
    classify_munn,
    classify_rees,
    classify_union,
    triple_sets_up_to,
)
from munnlab.valued_graph import classify_components, graph_from_triples

TOLERANCE = 0  # all comparisons are exact
LIMITS = {1: 10.0, 2: 30.0, 3: 60.0, 4: 120.0, 5: 60.0, 6: 60.0, 7: 1.0, 8: 5.0}
SEED = 0
PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def report(n: int, ok: bool, elapsed: float, detail: str) -> None:
    within = elapsed < LIMITS[n]
    status = "PASS" if ok and within else "FAIL"
    print(f"\n{status} criterion {n}: {detail} [{elapsed:.2f}s, limit {LIMITS[n]:.0f}s]")
    assert ok, detail
    assert within, f"criterion {n} took {elapsed:.2f}s, limit {LIMITS[n]}s"


def test_criterion_1_wedderburn_suite():
    t0 = time.perf_counter()
    cases, failures = 0, []
    for spec in catalog(12):
        G = group_builtin(spec)
        for p in (5, 7, 11, 13):
            if G.order % p == 0:
                continue
            wd = wedderburn(G, group_algebra_field(G, p), SEED)
            try:
                check_wedderburn(wd)
            except Exception as exc:
                failures.append(f"{spec}/F{p}: {exc}")
            if sum(c.c * c.c * c.d for c in wd) != G.order or sum(c.d for c in wd) != len(G.conjugacy_classes):
                failures.append(f"{spec}/F{p}: dimension count")
            cases += 1
    ok = not failures and cases > 0
    report(1, ok, time.perf_counter() - t0, f"{cases} (group, char) pairs, {len(failures)} failures {failures[:3]}")


def test_criterion_2_rank_identity():
    t0 = time.perf_counter()
    rng = random.Random(SEED)
    groups = [group_builtin(s) for s in catalog(8)]
    literal_bad, corrected_bad, diff_bad, example = 0, 0, 0, None
    for _ in range(200):
        G = rng.choice(groups)
        P, Q = rng.randint(1, 3), rng.randint(1, 3)
        grid = [[rng.choice([None, *range(G.order)]) for _ in range(Q)] for _ in range(P)]
        if all(x is None for row in grid for x in row):
            grid[0][0] = G.identity
        p = next(q for q in itertools.count(2) if all(q % k for k in range(2, q)) and G.order % q)
        field = group_algebra_field(G, p)
        wd = wedderburn(G, field, SEED)
        mu = as_algebra_grid(G, field, grid)
        ranks = [component_rank(mu, comp) for comp in wd]
        full = regular_block_rank(mu)
        literal = sum(r * c.u * c.c for r, c in zip(ranks, wd))
        corrected = sum(r * c.u for r, c in zip(ranks, wd))
        if full != literal:
            literal_bad += 1
            example = example or (G.name, grid, full, literal)
        corrected_bad += full != corrected
        for r, c in zip(ranks, wd):
            m, n = P * c.c - r, Q * c.c - r
            diff_bad += m - n != (P - Q) * c.c
    ok = literal_bad == 0 and diff_bad == 0
    detail = (
        f"rank == sum r*u*c failed on {literal_bad}/200 (first: {example}); "
        f"rank == sum r*u failed on {corrected_bad}/200; m-n identity failed {diff_bad} times"
    )
    report(2, ok, time.perf_counter() - t0, detail)


BOUNDARY = [
    ([(1, 1, 1)], "Finite"),
    ([(1, 1, 1), (1, 1, 1)], "Tame"),
    ([(2, 1, 1)], "Tame"),
    ([(1, 2, 0)], "Tame"),
    ([(1, 0, 2)], "Tame"),
    ([(1, 1, 0)] * 4, "Tame"),
    ([(1, 0, 1)] * 4, "Tame"),
    ([(1, 1, 0)] * 5, "Wild"),
    ([(1, 0, 1)] * 5, "Wild"),
    ([(2, 1, 0), (2, 1, 0)], "Tame"),
]


def test_criterion_3_classifier_agreement():
    t0 = time.perf_counter()
    sets = triple_sets_up_to(8, 4)
    bad = [T for T in sets if classify_munn(T).kind != classify_by_graph(T).kind]
    literal_bad = sum(classify_munn(T, literal=True).kind != classify_by_graph(T).kind for T in sets)
    boundary_bad = [
        T for T, kind in BOUNDARY if not (classify_munn(T).kind == classify_by_graph(T).kind == kind)
    ]
    ok = not bad and not boundary_bad
    detail = (
        f"{len(sets)} triple sets, {len(bad)} disagreements, boundary failures {boundary_bad}; "
        f"without supplementary clauses {literal_bad} would disagree"
    )
    report(3, ok, time.perf_counter() - t0, detail)


def test_criterion_4_rees_consistency():
    t0 = time.perf_counter()
    total, bad = 0, []
    seen: dict[tuple, bool] = {}
    for spec in catalog(6):
        G = group_builtin(spec)
        entries = [None, G.identity] + ([G.first_generator] if G.order > 1 else [])
        p = next(q for q in (2, 3, 5, 7) if G.order % q)
        extract = TripleExtractor(G, p, SEED)
        for P, Q in itertools.product(range(1, 4), repeat=2):
            for cells in itertools.product(entries, repeat=P * Q):
                if all(x is None for x in cells):
                    continue
                grid = [cells[i * Q:(i + 1) * Q] for i in range(P)]
                T = extract(grid)
                total += 1
                key = (T.canonical(), G.order, (P > Q) - (P < Q))
                if key not in seen:
                    kinds = {
                        classify_rees(T, G.order).kind,
                        classify_munn(T).kind,
                        classify_by_graph(T).kind,
                    }
                    union = classify_union(single_part_union(T, G.order, P, Q)).kind
                    seen[key] = len(kinds) == 1 and union == classify_munn(T).kind
                if not seen[key]:
                    bad.append((spec, grid))
    # the single-part union through real semigroup data, on a sample
    rng = random.Random(SEED)
    for _ in range(50):
        G = group_builtin(rng.choice(catalog(6)))
        P, Q = rng.randint(1, 3), rng.randint(1, 3)
        grid = [[rng.choice([None, G.identity, G.first_generator]) for _ in range(Q)] for _ in range(P)]
        grid[0][0] = G.identity
        p = next(q for q in (2, 3, 5, 7) if G.order % q)
        S = rees_make(G, P, Q, grid)
        U = union_data([(S, p)], SEED)
        if classify_union(U).kind != classify_munn(U.all_triples).kind:
            bad.append((G.name, grid))
    ok = not bad and total > 0
    report(4, ok, time.perf_counter() - t0, f"{total} semigroups, {len(bad)} disagreements {bad[:2]}")


def test_criterion_5_census_vs_roots():
    t0 = time.perf_counter()
    a = enumerate_indecomposables([(1, 1, 1)], (3, 2), 2)
    b = enumerate_indecomposables([(1, 1, 0)], (2, 2), 2)
    ok = (a.count, a.expected, b.count, b.expected) == (5, 5, 3, 3)
    detail = f"{{(1,1,1)}}: {a.count} (expected {a.expected}); {{(1,1,0)}}: {b.count} (expected {b.expected})"
    report(5, ok, time.perf_counter() - t0, detail)


FUNCTOR_SETS = [
    [(1, 1, 1)],
    [(2, 1, 1)],
    [(1, 1, 0), (1, 0, 1)],
    [(1, 2, 0)],
    [(1, 1, 1), (1, 1, 0)],
]


def _sample(basis, rng, count):
    if len(basis) <= 4:
        yield from basis.elements()
        return
    p = basis.source.p
    for _ in range(count):
        yield basis.combine([rng.randrange(p) for _ in range(len(basis))])


def test_criterion_6_functor_suite():
    t0 = time.perf_counter()
    rng = random.Random(SEED)
    caps = (2, 1)
    counts = {"psi_phi": 0, "phi_psi": 0, "j_square": 0, "phi_kernel": 0}
    failures = []
    for i in range(100):
        T = FUNCTOR_SETS[i % len(FUNCTOR_SETS)]
        p = 2 if i % 2 == 0 else 3
        V = random_mod_plus(T, caps, p, rng)
        W = random_mod_plus(T, caps, p, rng)
        if find_isomorphism(V, from_graph_rep(to_graph_rep(V))) is None:
            failures.append(("psi_phi", i))
        counts["psi_phi"] += 1
        R = random_graph_rep(T, caps, p, rng)
        if not to_graph_rep(from_graph_rep(R)).same_data(R):
            failures.append(("phi_psi", i))
        counts["phi_psi"] += 1
        for X, Y in ((V, W), (V, V)):
            for phi in _sample(hom_space(X, Y), rng, 12):
                if phi_on_morphism(phi, X, Y).is_zero() != in_ideal_J(phi, X, Y):
                    failures.append(("phi_kernel", i))
                counts["phi_kernel"] += 1
        J_vw = [f for f in _sample(hom_space(V, W), rng, 12) if in_ideal_J(f, V, W)]
        J_wv = [f for f in _sample(hom_space(W, V), rng, 12) if in_ideal_J(f, W, V)]
        for f, g in itertools.product(J_vw, J_wv):
            if not g.compose(f, p).is_zero():
                failures.append(("j_square", i))
            counts["j_square"] += 1
    ok = not failures
    report(6, ok, time.perf_counter() - t0, f"checks {counts}, failures {failures[:3]}")


def test_criterion_7_euclidean_witness():
    t0 = time.perf_counter()
    T = triple_set([(2, 1, 1)])
    classes = classify_components(graph_from_triples(T))
    ok = (
        len(classes) == 1
        and classes[0].kind == "Euclidean"
        and classes[0].corank == 1
        and tuple(classes[0].null_root) == (1, 1, 1)
        and classify_munn(T).kind == classify_by_graph(T).kind == "Tame"
    )
    c = classes[0]
    detail = f"{len(classes)} component {c.name}, corank {c.corank}, null root {c.null_root}, Tame via both routes"
    report(7, ok, time.perf_counter() - t0, detail)


def test_criterion_8_cli_end_to_end(capsys):
    t0 = time.perf_counter()
    schema = load_schema()
    expected = {"c1_finite.toml": "Finite", "c2_tame.toml": "Tame", "wild_122.toml": "Wild"}
    problems = []
    for name, kind in expected.items():
        path = str(PROBLEMS / name)
        outs = []
        for _ in range(2):
            code = main(["classify", path, "--json"])
            outs.append((code, capsys.readouterr().out))
        doc = json.loads(outs[0][1])
        try:
            jsonschema.validate(doc, schema)
            valid = True
        except jsonschema.ValidationError:
            valid = False
        if not (
            outs[0] == outs[1] and outs[0][0] == 0 and valid and doc["agreement"]
            and doc["verdicts"]["theorem"]["kind"] == kind
        ):
            problems.append(name)
    # documented exit codes for the failure paths
    codes = {
        2: main(["classify", "--triples", "1,1"]),
        3: main(["decompose", "--group", "symmetric(3)", "--char", "3"]),
        5: main(["census", "--triples", "1,2,0", "--caps", "9/9", "--force"]),
    }
    capsys.readouterr()
    bad_codes = {k: v for k, v in codes.items() if k != v}
    ok = not problems and not bad_codes
    report(8, ok, time.perf_counter() - t0, f"3 worked problems, failing {problems}, exit code mismatches {bad_codes}")

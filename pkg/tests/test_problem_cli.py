from __future__ import annotations

import json
from pathlib import Path

import jsonschema
import pytest

from munnlab import report as report_mod
from munnlab.cli import main, parse_caps, parse_triples
from munnlab.errors import InvalidInput
from munnlab.problem import choose_char, load_problem, parse_problem, problem_from_dict
from munnlab.report import load_schema
from munnlab.rep_type import RepTypeVerdict

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- problem files ----------------------------------------------------------------


@pytest.mark.parametrize("path", sorted(PROBLEMS.glob("*.toml")), ids=lambda p: p.stem)
def test_round_trip_is_idempotent(path):
    spec = load_problem(path)
    again = parse_problem(spec.to_json(), "json")
    assert again == spec
    assert again.to_json() == spec.to_json()


def test_integer_sandwich_entries_become_indices():
    spec = problem_from_dict({"group": "cyclic(2)", "sandwich": [[1, "0"]]})
    assert spec.sandwich == (("#1", "0"),)


@pytest.mark.parametrize(
    "data",
    [
        {},
        {"raw_triples": [[1, 1, 1]], "sandwich": [["e"]], "group": "cyclic(1)"},
        {"sandwich": [["e"]]},
        {"raw_triples": [[1, 1]]},
        {"raw_triples": [[0, 1, 1]]},
        {"field": {"char": 4}, "raw_triples": []},
        {"field": {"mode": "magic"}, "raw_triples": []},
        {"group": {"builtin": "cyclic(2)", "table": [[0]]}, "sandwich": [["e"]]},
        {"group": "cyclic(2)", "sandwich": []},
        {"parts": []},
    ],
)
def test_invalid_problems(data):
    with pytest.raises(InvalidInput):
        problem_from_dict(data)


def test_parse_errors():
    with pytest.raises(InvalidInput):
        parse_problem("sandwich = [", "toml")
    with pytest.raises(InvalidInput):
        load_problem(PROBLEMS / "does_not_exist.toml")


@pytest.mark.parametrize(
    "group,mode,char",
    [("cyclic(1)", "auto", 2), ("cyclic(2)", "auto", 3), ("symmetric(3)", "auto", 5),
     ("cyclic(3)", "split", 7), ("symmetric(3)", "split", 7), ("cyclic(4)", "split", 5),
     ("dihedral(4)", "split", 5)],
)
def test_choose_char(group, mode, char):
    spec = problem_from_dict({"group": group, "sandwich": [["e"]], "field": {"mode": mode}})
    assert choose_char(spec, spec.groups()) == char


def test_flag_parsers():
    assert parse_caps("3/2") == parse_caps("3,2") == (3, 2)
    assert parse_caps("4") == (4, 4)
    with pytest.raises(InvalidInput):
        parse_caps("a/b")
    assert parse_triples("1,1,1; (2,1,1)") == [[1, 1, 1], [2, 1, 1]]
    assert parse_triples("") == []
    with pytest.raises(InvalidInput):
        parse_triples("1,1")


# -- reports ------------------------------------------------------------------------


@pytest.mark.parametrize("path", sorted(PROBLEMS.glob("*.toml")), ids=lambda p: p.stem)
def test_classify_reports_are_schema_valid_and_byte_stable(capsys, path):
    code, first, _ = run(capsys, "classify", str(path), "--json")
    assert code == 0
    _, second, _ = run(capsys, "classify", str(path), "--json")
    assert first == second
    doc = json.loads(first)
    jsonschema.validate(doc, load_schema())
    assert doc["agreement"] is True


def test_other_commands_schema_valid(capsys):
    schema = load_schema()
    for argv in (
        ["decompose", "--group", "cyclic(3)", "--char", "5", "--json"],
        ["graph", "--triples", "2,1,1", "--json"],
        ["census", "--triples", "1,1,1", "--caps", "3/2", "--json"],
        ["classify", "--triples", "1,1,1", "--caps", "3/2", "--json"],
    ):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        jsonschema.validate(json.loads(out), schema)


def test_decompose_examples(capsys):
    _, out, _ = run(capsys, "decompose", "--group", "cyclic(3)", "--char", "5", "--json")
    comps = json.loads(out)["decomposition"][0]["components"]
    assert sorted((c["d"], c["c"], c["u"]) for c in comps) == [(1, 1, 1), (2, 1, 2)]
    _, out, _ = run(capsys, "decompose", "--group", "cyclic(3)", "--split", "--json")
    doc = json.loads(out)
    assert doc["field"]["char"] == 7 and len(doc["decomposition"][0]["components"]) == 3


def test_classify_examples(capsys):
    _, out, _ = run(capsys, "classify", str(PROBLEMS / "c1_finite.toml"), "--json")
    doc = json.loads(out)
    assert doc["verdicts"]["theorem"] == {"kind": "Finite", "case": "rees-1a"}
    assert [c["name"] for c in doc["graph"]["components"]] == ["A3"]
    _, out, _ = run(capsys, "classify", str(PROBLEMS / "c2_tame.toml"), "--json")
    assert json.loads(out)["verdicts"]["theorem"] == {"kind": "Tame", "case": "rees-2a"}
    _, out, _ = run(capsys, "classify", str(PROBLEMS / "wild_122.toml"), "--json")
    assert json.loads(out)["verdicts"]["theorem"]["kind"] == "Wild"


def test_text_output(capsys):
    code, out, _ = run(capsys, "classify", str(PROBLEMS / "c1_finite.toml"))
    assert code == 0
    assert "theorem: Finite [rees-1a]" in out and "agreement: yes" in out


def test_graph_dot(capsys):
    _, out, _ = run(capsys, "graph", "--triples", "1,1,1", "--dot")
    assert out.startswith("digraph") and out.count("->") == 2
    _, out, _ = run(capsys, "graph", "--triples", "2,1,1")
    assert 'label="(1,2)"' in out and 'label="(2,1)"' in out
    _, out, _ = run(capsys, "graph", "--triples", "")
    assert "->" not in out and out.count("[label=") == 2


def test_census_examples(capsys):
    _, out, _ = run(capsys, "census", "--triples", "1,1,1", "--caps", "3/2", "--json")
    c = json.loads(out)["census"]
    assert (c["count"], c["expected"], c["match"]) == (5, 5, True)
    _, out, _ = run(capsys, "census", "--triples", "1,1,0", "--caps", "2/2", "--json")
    c = json.loads(out)["census"]
    assert (c["count"], c["expected"]) == (3, 3)


def test_stdin_json(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO('{"raw_triples": [[1, 1, 1]]}'))
    code, out, _ = run(capsys, "classify", "-", "--stdin-json", "--json")
    assert code == 0 and json.loads(out)["verdicts"]["theorem"]["kind"] == "Finite"


# -- exit codes ---------------------------------------------------------------------


def test_exit_invalid_input(capsys):
    assert run(capsys, "classify", "--triples", "1,1")[0] == 2
    assert run(capsys, "classify")[0] == 2
    assert run(capsys, "census", "--triples", "2,1,1")[0] == 2
    assert run(capsys, "decompose", "--triples", "1,1,1")[0] == 2


def test_exit_modular(capsys):
    code, _, err = run(capsys, "decompose", "--group", "symmetric(3)", "--char", "3")
    assert code == 3 and "error" in err


def test_exit_disagreement(capsys, monkeypatch):
    monkeypatch.setattr(report_mod, "classify_by_graph", lambda T: RepTypeVerdict("Wild", "graph"))
    code, _, err = run(capsys, "classify", "--triples", "1,1,1")
    assert code == 4 and "disagree" in err


def test_exit_budget(capsys):
    code, _, _ = run(capsys, "census", "--triples", "1,2,0", "--caps", "9/9", "--force")
    assert code == 5


def test_selfcheck(capsys):
    code, out, _ = run(capsys, "selfcheck")
    assert code == 0
    assert out.count("PASS") == len(out.strip().splitlines())

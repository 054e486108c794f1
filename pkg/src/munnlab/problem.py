"""Problem descriptions: TOML for hand-written files, JSON for machine use.

A problem has exactly one of

* ``group`` + ``sandwich``: a single Rees matrix semigroup;
* ``parts``: a union of pairwise annihilating Rees semigroups, each with its
  own ``group`` and ``sandwich``;
* ``raw_triples``: an explicit triple set for direct Munn classification.

Example::

    sandwich = [["e", "0"], ["0", "0"]]

    [field]
    mode = "auto"        # explicit | auto | split

    [group]
    builtin = "cyclic(1)"

A group is ``{builtin = "dihedral(4)"}`` or ``{table = [[...]], labels = [...]}``.
Sandwich entries are strings: ``"0"`` is the zero of G^0, any other token is
an element label or ``"#i"`` (element index i).
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field as dc_field
from math import lcm
from pathlib import Path
from typing import Any

from .errors import InvalidInput
from .exact_linalg.field import is_prime
from .groups import FiniteGroup, exponent, group_builtin, group_from_table
from .munn import TripleSet, triple_set

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - exercised on 3.10
    import tomli as tomllib

FIELD_MODES = ("explicit", "auto", "split")


@dataclass(frozen=True)
class GroupSpec:
    builtin: str | None = None
    table: tuple[tuple[int, ...], ...] | None = None
    labels: tuple[str, ...] | None = None

    def build(self, max_order: int | None = None) -> FiniteGroup:
        kw = {} if max_order is None else {"max_order": max_order}
        if self.builtin is not None:
            return group_builtin(self.builtin, **kw)
        return group_from_table(
            [list(r) for r in self.table], list(self.labels) if self.labels else None, **kw
        )

    def to_dict(self) -> dict:
        if self.builtin is not None:
            return {"builtin": self.builtin}
        out: dict[str, Any] = {"table": [list(r) for r in self.table]}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out


@dataclass(frozen=True)
class PartSpec:
    group: GroupSpec
    sandwich: tuple[tuple[str, ...], ...]

    def to_dict(self) -> dict:
        return {"group": self.group.to_dict(), "sandwich": [list(r) for r in self.sandwich]}


@dataclass(frozen=True)
class ProblemSpec:
    mode: str = "auto"
    char: int | None = None
    group: GroupSpec | None = None
    sandwich: tuple[tuple[str, ...], ...] | None = None
    parts: tuple[PartSpec, ...] | None = None
    raw_triples: tuple[tuple[int, int, int], ...] | None = None
    seed: int = 0
    max_order: int | None = None
    name: str | None = None
    extra: dict = dc_field(default_factory=dict, compare=False)

    @property
    def kind(self) -> str:
        if self.raw_triples is not None:
            return "triples"
        if self.parts is not None:
            return "union"
        return "rees"

    def groups(self) -> list[FiniteGroup]:
        if self.kind == "rees":
            return [self.group.build(self.max_order)]
        if self.kind == "union":
            return [p.group.build(self.max_order) for p in self.parts]
        return []

    def triple_set(self) -> TripleSet:
        if self.raw_triples is None:
            raise InvalidInput("this problem has no raw triples")
        return triple_set(self.raw_triples)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {}
        if self.name is not None:
            out["name"] = self.name
        out["seed"] = self.seed
        fld: dict[str, Any] = {"mode": self.mode}
        if self.char is not None:
            fld["char"] = self.char
        out["field"] = fld
        if self.max_order is not None:
            out["max_order"] = self.max_order
        if self.kind == "rees":
            out["group"] = self.group.to_dict()
            out["sandwich"] = [list(r) for r in self.sandwich]
        elif self.kind == "union":
            out["parts"] = [p.to_dict() for p in self.parts]
        else:
            out["raw_triples"] = [list(t) for t in self.raw_triples]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def choose_char(spec: ProblemSpec, groups: list[FiniteGroup]) -> int:
    """Characteristic for the problem: explicit, auto or split."""
    if spec.mode == "explicit":
        if spec.char is None:
            raise InvalidInput("explicit field mode needs a characteristic")
        return spec.char
    orders = [G.order for G in groups] or [1]
    if spec.mode == "auto":
        p = 2
        while not is_prime(p) or any(n % p == 0 for n in orders):
            p += 1
        return p
    ex = lcm(*[exponent(G) for G in groups]) if groups else 1
    p = ex + 1
    while not is_prime(p):
        p += ex
    return p


# -- parsing ----------------------------------------------------------------------


def _sandwich(raw) -> tuple[tuple[str, ...], ...]:
    if not isinstance(raw, list) or not raw or not all(isinstance(r, list) and r for r in raw):
        raise InvalidInput("sandwich must be a non-empty list of non-empty rows")
    out = []
    for row in raw:
        cells = []
        for x in row:
            if isinstance(x, bool) or not isinstance(x, (str, int)):
                raise InvalidInput(f"bad sandwich entry {x!r}")
            # integers are element indices; 0 would be ambiguous with the zero
            cells.append(x if isinstance(x, str) else f"#{x}")
        out.append(tuple(cells))
    return tuple(out)


def _group(raw) -> GroupSpec:
    if isinstance(raw, str):
        return GroupSpec(builtin=raw)
    if not isinstance(raw, dict):
        raise InvalidInput("group must be a builtin string or a table")
    if ("builtin" in raw) == ("table" in raw):
        raise InvalidInput("group needs exactly one of 'builtin' and 'table'")
    if "builtin" in raw:
        if not isinstance(raw["builtin"], str):
            raise InvalidInput("group builtin must be a string such as 'cyclic(3)'")
        return GroupSpec(builtin=raw["builtin"].replace(" ", ""))
    table = raw["table"]
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise InvalidInput("group table must be a list of rows")
    labels = raw.get("labels")
    if labels is not None and not (isinstance(labels, list) and all(isinstance(x, str) for x in labels)):
        raise InvalidInput("group labels must be strings")
    try:
        rows = tuple(tuple(int(x) for x in r) for r in table)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"group table entries must be integers: {exc}") from exc
    return GroupSpec(table=rows, labels=tuple(labels) if labels is not None else None)


def _int(raw, what: str) -> int:
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise InvalidInput(f"{what} must be an integer")
    return raw


def problem_from_dict(data: dict) -> ProblemSpec:
    if not isinstance(data, dict):
        raise InvalidInput("a problem is a table of keys")
    fld = data.get("field", {})
    if isinstance(fld, int):
        fld = {"mode": "explicit", "char": fld}
    if not isinstance(fld, dict):
        raise InvalidInput("field must be a table")
    char = fld.get("char")
    mode = fld.get("mode", "explicit" if char is not None else "auto")
    if mode not in FIELD_MODES:
        raise InvalidInput(f"field mode must be one of {FIELD_MODES}")
    if char is not None:
        char = _int(char, "field char")
        if not is_prime(char):
            raise InvalidInput(f"characteristic {char} is not prime")
    present = [k for k in ("sandwich", "parts", "raw_triples") if k in data]
    if len(present) != 1:
        raise InvalidInput("a problem needs exactly one of group+sandwich, parts, raw_triples")
    kw: dict[str, Any] = {
        "mode": mode,
        "char": char,
        "seed": _int(data.get("seed", 0), "seed"),
        "name": data.get("name"),
    }
    if "max_order" in data:
        kw["max_order"] = _int(data["max_order"], "max_order")
    kind = present[0]
    if kind == "sandwich":
        if "group" not in data:
            raise InvalidInput("a sandwich needs a group")
        kw["group"] = _group(data["group"])
        kw["sandwich"] = _sandwich(data["sandwich"])
    elif "group" in data:
        raise InvalidInput("'group' is only allowed together with 'sandwich'")
    elif kind == "parts":
        parts = data["parts"]
        if not isinstance(parts, list) or not parts:
            raise InvalidInput("parts must be a non-empty list")
        out = []
        for p in parts:
            if not isinstance(p, dict) or "group" not in p or "sandwich" not in p:
                raise InvalidInput("each part needs a group and a sandwich")
            out.append(PartSpec(_group(p["group"]), _sandwich(p["sandwich"])))
        kw["parts"] = tuple(out)
    else:
        raw = data["raw_triples"]
        if not isinstance(raw, list) or not all(isinstance(t, list) and len(t) == 3 for t in raw):
            raise InvalidInput("raw_triples must be a list of [d, m, n] triples")
        kw["raw_triples"] = tuple(tuple(_int(x, "triple entry") for x in t) for t in raw)
        triple_set(kw["raw_triples"])  # validates
    known = {"field", "seed", "name", "max_order", "group", "sandwich", "parts", "raw_triples", "census"}
    kw["extra"] = {k: v for k, v in data.items() if k not in known}
    return ProblemSpec(**kw)


def parse_problem(text: str, fmt: str = "toml") -> ProblemSpec:
    try:
        data = json.loads(text) if fmt == "json" else tomllib.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise InvalidInput(f"cannot parse problem: {exc}") from exc
    return problem_from_dict(data)


def load_problem(path: str | Path) -> ProblemSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    return parse_problem(text, "json" if path.suffix.lower() == ".json" else "toml")

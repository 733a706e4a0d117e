"""Canonical JSON forms for every artifact the CLI reads or writes.

All orders and points are decimal strings so arbitrarily large integers
survive the trip; small structural integers (depths, levels, matrix indices,
sequence entries) stay bare.  Output is deterministic: sorted keys, compact
separators, no floats anywhere.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .blockspace import BlockSpace, FiniteMetricSpace
from .equivalence import TowerBijection, VerificationReport
from .errors import MalformedInput
from .ktheory import K0Class
from .roeops import BlockTuple, PropagationOperator
from .supernatural import INFINITE, SupernaturalNumber, Tower


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"invalid JSON: {e}") from e


def _expect(cond: bool, msg: str):
    if not cond:
        raise MalformedInput(msg)


def _as_object(obj, what: str, keys: set[str]) -> dict:
    _expect(isinstance(obj, dict), f"{what} must be a JSON object")
    _expect(set(obj) == keys, f"{what} must have exactly the keys {sorted(keys)}")
    return obj


def _parse_uint(value, what: str) -> int:
    _expect(isinstance(value, str) and value.isdigit(), f"{what} must be a decimal string")
    return int(value)


def _parse_small_int(value, what: str) -> int:
    _expect(isinstance(value, int) and not isinstance(value, bool), f"{what} must be an integer")
    return value


# -- towers and supernatural numbers --------------------------------------

def tower_to_obj(t: Tower) -> dict:
    return {"prefix": [str(r) for r in t.prefix], "tail": [str(r) for r in t.tail]}


def tower_from_obj(obj) -> Tower:
    obj = _as_object(obj, "tower", {"prefix", "tail"})
    _expect(isinstance(obj["prefix"], list) and isinstance(obj["tail"], list),
            "tower prefix/tail must be lists")
    prefix = tuple(_parse_uint(r, "ratio") for r in obj["prefix"])
    tail = tuple(_parse_uint(r, "ratio") for r in obj["tail"])
    try:
        return Tower(prefix, tail)
    except ValueError as e:
        raise MalformedInput(str(e)) from e


def sn_to_obj(s: SupernaturalNumber) -> dict:
    def fmt(e):
        return "inf" if e == INFINITE else str(e)

    return {
        "exponents": {str(p): fmt(e) for p, e in s.exponents.items()},
        "default": fmt(s.default_exponent),
    }


def sn_from_obj(obj) -> SupernaturalNumber:
    obj = _as_object(obj, "supernatural number", {"exponents", "default"})
    _expect(isinstance(obj["exponents"], dict), "exponents must be an object")

    def parse_exp(v, what):
        if v == "inf":
            return INFINITE
        return _parse_uint(v, what)

    exps = {}
    for p, e in obj["exponents"].items():
        exps[_parse_uint(p, "prime")] = parse_exp(e, f"exponent of {p}")
    try:
        return SupernaturalNumber(exps, parse_exp(obj["default"], "default"))
    except ValueError as e:
        raise MalformedInput(str(e)) from e


# -- metric spaces ----------------------------------------------------------

def metric_space_to_obj(m: FiniteMetricSpace) -> dict:
    return {"size": m.size, "distances": [list(row) for row in m.distances]}


def metric_space_from_obj(obj) -> FiniteMetricSpace:
    obj = _as_object(obj, "metric space", {"size", "distances"})
    size = _parse_small_int(obj["size"], "size")
    _expect(isinstance(obj["distances"], list), "distances must be a list of rows")
    rows = []
    for row in obj["distances"]:
        _expect(isinstance(row, list), "distances must be a list of rows")
        rows.append(tuple(_parse_small_int(v, "distance") for v in row))
    try:
        return FiniteMetricSpace(size, tuple(rows))
    except ValueError as e:
        raise MalformedInput(str(e)) from e


# -- K0 classes -------------------------------------------------------------

def k0_to_obj(a: K0Class) -> dict:
    return {
        "context": tower_to_obj(a.context),
        "prefix": list(a.prefix),
        "period": list(a.period),
    }


def k0_from_obj(obj) -> K0Class:
    obj = _as_object(obj, "K0 class", {"context", "prefix", "period"})
    context = tower_from_obj(obj["context"])
    _expect(isinstance(obj["prefix"], list) and isinstance(obj["period"], list),
            "prefix/period must be lists")
    prefix = tuple(_parse_small_int(v, "entry") for v in obj["prefix"])
    period = tuple(_parse_small_int(v, "entry") for v in obj["period"])
    try:
        return K0Class(context, prefix, period)
    except ValueError as e:
        raise MalformedInput(str(e)) from e


# -- bijections -------------------------------------------------------------

def bijection_to_obj(b: TowerBijection) -> dict:
    flat = []
    for x, y in enumerate(b.mapping):
        flat += [str(x), str(y)]
    return {
        "source": tower_to_obj(b.source),
        "target": tower_to_obj(b.target),
        "depth": b.depth,
        "levels": [[n, m] for n, m in b.levels],
        "map": flat,
    }


def bijection_from_obj(obj) -> TowerBijection:
    obj = _as_object(obj, "bijection", {"source", "target", "depth", "levels", "map"})
    source = tower_from_obj(obj["source"])
    target = tower_from_obj(obj["target"])
    depth = _parse_small_int(obj["depth"], "depth")
    _expect(isinstance(obj["levels"], list), "levels must be a list")
    levels = []
    for pair in obj["levels"]:
        _expect(isinstance(pair, list) and len(pair) == 2, "each level must be a pair")
        levels.append((_parse_small_int(pair[0], "level"), _parse_small_int(pair[1], "level")))
    flat = obj["map"]
    _expect(isinstance(flat, list) and len(flat) % 2 == 0, "map must be a flat pair list")
    assignments = {}
    for i in range(0, len(flat), 2):
        x = _parse_uint(flat[i], "source point")
        y = _parse_uint(flat[i + 1], "image point")
        _expect(x not in assignments, f"source point {x} assigned twice")
        assignments[x] = y
    _expect(set(assignments) == set(range(len(assignments))),
            "map sources must cover 0..N-1 exactly")
    mapping = tuple(assignments[x] for x in range(len(assignments)))
    try:
        return TowerBijection(source, target, depth, tuple(levels), mapping)
    except ValueError as e:
        raise MalformedInput(str(e)) from e


def report_to_obj(r: VerificationReport) -> dict:
    return {
        "passed": r.passed,
        "injective": r.injective,
        "levels": [
            {
                "level": c.level,
                "modulus": c.modulus,
                "bound": c.bound,
                "within_bound": c.within_bound,
                "decomposition": c.decomposition_ok,
                "order_divides": c.order_divides,
            }
            for c in r.levels
        ],
    }


# -- operators ---------------------------------------------------------------

def _scalar_to_str(v: Fraction) -> str:
    return str(v)


_SCALAR_RE = re.compile(r"-?\d+(/[1-9]\d*)?$")


def _scalar_from_str(s, what: str) -> Fraction:
    _expect(isinstance(s, str) and _SCALAR_RE.fullmatch(s) is not None,
            f"{what} must be a string like '-3' or '3/4'")
    return Fraction(s)


def space_to_obj(s: BlockSpace) -> dict:
    return {"tower": tower_to_obj(s.tower), "depth": s.depth}


def space_from_obj(obj) -> BlockSpace:
    obj = _as_object(obj, "space", {"tower", "depth"})
    tower = tower_from_obj(obj["tower"])
    depth = _parse_small_int(obj["depth"], "depth")
    try:
        return BlockSpace(tower, depth)
    except ValueError as e:
        raise MalformedInput(str(e)) from e


def operator_to_obj(t: PropagationOperator) -> dict:
    entries = [[r, c, _scalar_to_str(v)] for (r, c), v in sorted(t.entries.items())]
    return {"space": space_to_obj(t.space), "entries": entries}


def operator_from_obj(obj) -> PropagationOperator:
    obj = _as_object(obj, "operator", {"space", "entries"})
    space = space_from_obj(obj["space"])
    _expect(isinstance(obj["entries"], list), "entries must be a list")
    entries = {}
    for item in obj["entries"]:
        _expect(isinstance(item, list) and len(item) == 3, "each entry must be [row, col, value]")
        r = _parse_small_int(item[0], "row")
        c = _parse_small_int(item[1], "col")
        _expect((r, c) not in entries, f"entry ({r}, {c}) given twice")
        entries[(r, c)] = _scalar_from_str(item[2], f"entry ({r}, {c})")
    try:
        return PropagationOperator(space, entries)
    except ValueError as e:
        raise MalformedInput(str(e)) from e


def blocktuple_to_obj(bt: BlockTuple) -> dict:
    return {
        "space": space_to_obj(bt.space),
        "level": bt.level,
        "blocks": [
            [[r, c, _scalar_to_str(v)] for (r, c), v in sorted(blk.items())]
            for blk in bt.blocks
        ],
    }

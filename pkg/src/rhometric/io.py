"""File formats: spaces, relations, preorders and topologies as JSON; paths as CSV."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any

from .constructions import EquivRelation
from .extended_reals import ExtReal, parse_ext, render_ext
from .paths import LineKind, PLPath, StepPath
from .space import FiniteRhoSpace, StructuralError
from .symmetry import Preorder
from .topology import FiniteTopology

__all__ = [
    "ParseError",
    "entry_to_json",
    "entry_from_json",
    "label_to_json",
    "label_from_json",
    "space_to_json",
    "space_from_json",
    "dump_space",
    "load_space",
    "relation_from_json",
    "relation_to_json",
    "preorder_to_json",
    "preorder_from_json",
    "topology_to_json",
    "topology_from_json",
    "load_path",
    "dump_pl_path",
    "dump_step_path",
]


class ParseError(ValueError):
    """Input that does not follow one of the file formats."""


def entry_to_json(v: ExtReal) -> int | str:
    # integers stay JSON numbers; everything else is an exact string
    if v.is_finite and v.value.denominator == 1:
        return int(v.value)
    return render_ext(v)


def entry_from_json(v: Any) -> ExtReal:
    if isinstance(v, bool) or v is None:
        raise ParseError(f"bad matrix entry {v!r}")
    if isinstance(v, float):
        # json floats are parsed exactly via parse_float, this only catches stray values
        raise ParseError(f"binary float entry {v!r}; write it as a string")
    try:
        return parse_ext(v)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def label_from_json(p: Any):
    # labels: strings, integers, decimals (read as exact rationals), {"q": "p/q"}, or lists of labels
    if isinstance(p, list):
        return tuple(label_from_json(q) for q in p)
    if isinstance(p, dict) and set(p) == {"q"} and isinstance(p["q"], str):
        try:
            q = Fraction(p["q"])
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational label {p!r}") from None
        return int(q) if q.denominator == 1 else q
    if isinstance(p, Fraction):
        return int(p) if p.denominator == 1 else p
    if isinstance(p, (dict, float, bool)) or p is None:
        raise ParseError(f"unsupported point label {p!r}")
    return p


def label_to_json(p: Any):
    if isinstance(p, tuple):
        return [label_to_json(q) for q in p]
    if isinstance(p, Fraction):
        return p.numerator if p.denominator == 1 else {"q": f"{p.numerator}/{p.denominator}"}
    return p


def _loads(text: str) -> Any:
    try:
        # decimals in the file become exact rationals, never floats
        return json.loads(text, parse_float=lambda s: Fraction(s))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def space_to_json(space: FiniteRhoSpace) -> dict:
    return {
        "points": [label_to_json(p) for p in space.points],
        "rho": [[entry_to_json(v) for v in row] for row in space.rho],
    }


def space_from_json(data: Any) -> FiniteRhoSpace:
    if not isinstance(data, dict) or "points" not in data or "rho" not in data:
        raise ParseError('a space file is an object with "points" and "rho"')
    points, rho = data["points"], data["rho"]
    if not isinstance(points, list) or not isinstance(rho, list) or any(not isinstance(r, list) for r in rho):
        raise ParseError('"points" must be a list and "rho" a list of rows')
    labels = [label_from_json(p) for p in points]
    try:
        return FiniteRhoSpace(labels, [[entry_from_json(v) for v in row] for row in rho])
    except StructuralError as exc:
        raise ParseError(str(exc)) from None


def dump_space(space: FiniteRhoSpace) -> str:
    return json.dumps(space_to_json(space), indent=None) + "\n"


def load_space(text: str) -> FiniteRhoSpace:
    return space_from_json(_loads(text))


def relation_to_json(rel: EquivRelation) -> list:
    return [[label_to_json(p) for p in c] for c in rel.classes]


def relation_from_json(text: str) -> EquivRelation:
    data = _loads(text)
    if not isinstance(data, list) or any(not isinstance(c, list) for c in data):
        raise ParseError("a relation file is a list of classes (lists of labels)")
    return EquivRelation([[label_from_json(p) for p in c] for c in data])


def preorder_to_json(p: Preorder) -> dict:
    """Adjacency lists: each point with the points it precedes (itself included)."""
    return {
        "points": [label_to_json(x) for x in p.points],
        "adjacency": [[label_to_json(p.points[j]) for j, r in enumerate(row) if r] for row in p.related],
    }


def preorder_from_json(text: str) -> Preorder:
    data = _loads(text)
    if not isinstance(data, dict) or "points" not in data or "adjacency" not in data:
        raise ParseError('a preorder file is an object with "points" and "adjacency"')
    pts = [label_from_json(x) for x in data["points"]]
    adj = data["adjacency"]
    if not isinstance(adj, list) or len(adj) != len(pts):
        raise ParseError("one adjacency list per point")
    pos = {x: i for i, x in enumerate(pts)}
    rel = [[False] * len(pts) for _ in pts]
    for i, row in enumerate(adj):
        for y in row:
            y = label_from_json(y)
            if y not in pos:
                raise ParseError(f"unknown point {y!r} in adjacency")
            rel[i][pos[y]] = True
    try:
        return Preorder(pts, rel)
    except StructuralError as exc:
        raise ParseError(str(exc)) from None


def topology_to_json(t: FiniteTopology) -> dict:
    return {
        "points": [label_to_json(p) for p in t.points],
        "opens": [[label_to_json(p) for p in s] for s in t.rendered()],
    }


def topology_from_json(text: str) -> FiniteTopology:
    data = _loads(text)
    if not isinstance(data, dict) or "points" not in data or "opens" not in data:
        raise ParseError('a topology file is an object with "points" and "opens"')
    pts = tuple(label_from_json(x) for x in data["points"])
    pos = {x: i for i, x in enumerate(pts)}
    masks = set()
    for s in data["opens"]:
        m = 0
        for x in s:
            x = label_from_json(x)
            if x not in pos:
                raise ParseError(f"unknown point {x!r} in open set")
            m |= 1 << pos[x]
        masks.add(m)
    try:
        return FiniteTopology(pts, frozenset(masks))
    except StructuralError as exc:
        raise ParseError(str(exc)) from None


# ---------------------------------------------------------------------------
# paths


def _frac(cell: str) -> Fraction:
    try:
        return Fraction(cell.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not an exact number: {cell!r}") from None


def load_path(text: str, space: FiniteRhoSpace | None = None, kind: LineKind | str = LineKind.RHO):
    """Parse a path CSV.

    Header ``t,y`` gives a PL path into the line ``kind``; header ``t,point``
    gives a step path in ``space``, one row per visit with its start time
    (the first row at ``t = 0``).  Point cells are matched against the
    space's labels by their text.
    """
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r and any(c.strip() for c in r)]
    if not rows:
        raise ParseError("empty path file")
    header = [c.strip().lower() for c in rows[0]]
    body = rows[1:]
    if any(len(r) != 2 for r in body):
        raise ParseError("every path row has exactly two cells")
    if header == ["t", "y"]:
        try:
            return PLPath(tuple(_frac(r[0]) for r in body), tuple(_frac(r[1]) for r in body), LineKind(kind))
        except StructuralError as exc:
            raise ParseError(str(exc)) from None
    if header == ["t", "point"]:
        if space is None:
            raise ParseError("a step path needs a space")
        by_text = {str(p): p for p in space.points}
        times = [_frac(r[0]) for r in body]
        if not times or times[0] != 0:
            raise ParseError("the first visit starts at t = 0")
        visits = []
        for r in body:
            name = r[1].strip()
            if name not in by_text:
                raise ParseError(f"unknown point {name!r}")
            visits.append(by_text[name])
        try:
            return StepPath(space, tuple(visits), tuple(times[1:]))
        except StructuralError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError('path header must be "t,y" or "t,point"')


def _render_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dump_pl_path(p: PLPath) -> str:
    lines = ["t,y"] + [f"{_render_q(t)},{_render_q(y)}" for t, y in zip(p.times, p.values)]
    return "\n".join(lines) + "\n"


def dump_step_path(p: StepPath) -> str:
    times = (Fraction(0),) + p.switches
    lines = ["t,point"] + [f"{_render_q(t)},{x}" for t, x in zip(times, p.visits)]
    return "\n".join(lines) + "\n"

"""Limits, colimits, tensor product and exponential of finite rho-spaces."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Sequence

from .closure import min_plus_closure, walk_from_successors
from .extended_reals import NEG_INF, POS_INF, ZERO, ExtReal, esum_all, render_ext
from .space import (
    CapExceeded,
    FiniteRhoSpace,
    NotLipschitz,
    PointMap,
    StructuralError,
    lipschitz_status,
    require_valid,
)

__all__ = [
    "PRODUCT_CAP",
    "MAP_CAP",
    "EquivRelation",
    "ChainWitness",
    "QuotientResult",
    "terminal",
    "delta_singleton",
    "empty_space",
    "product",
    "tensor",
    "coproduct",
    "equalizer",
    "quotient",
    "exponential",
    "curry",
    "uncurry",
    "one_lipschitz_maps",
]

PRODUCT_CAP = int(os.environ.get("RHOMETRIC_CAP", 4096))
MAP_CAP = 10**6


def terminal() -> FiniteRhoSpace:
    """The rho-singleton, chaotic: the terminal object."""
    return FiniteRhoSpace(("*",), [[NEG_INF]])


def delta_singleton() -> FiniteRhoSpace:
    """The delta-singleton: unit of the tensor product."""
    return FiniteRhoSpace(("*",), [[ZERO]])


def empty_space() -> FiniteRhoSpace:
    return FiniteRhoSpace((), ())


def _carrier(spaces: Sequence[FiniteRhoSpace], cap: int | None):
    cap = PRODUCT_CAP if cap is None else cap
    size = prod(len(s) for s in spaces)
    if size > cap:
        raise CapExceeded(f"cartesian carrier has {size} points; cap is {cap}")
    for s in spaces:
        require_valid(s)
    idx = list(itertools.product(*(range(len(s)) for s in spaces)))
    labels = [tuple(s.points[i] for s, i in zip(spaces, t)) for t in idx]
    return idx, labels


def product(spaces: Sequence[FiniteRhoSpace], cap: int | None = None) -> FiniteRhoSpace:
    """Cartesian product with the sup (l-infinity type) metric."""
    spaces = list(spaces)
    if not spaces:
        return terminal()
    idx, labels = _carrier(spaces, cap)
    rows = [
        [max(s.rho[a][b] for s, a, b in zip(spaces, u, v)) for v in idx]
        for u in idx
    ]
    return FiniteRhoSpace(labels, rows)


def tensor(spaces: Sequence[FiniteRhoSpace], cap: int | None = None) -> FiniteRhoSpace:
    """Cartesian carrier with the sum (l1 type) metric; the empty tensor is the unit."""
    spaces = list(spaces)
    if not spaces:
        return delta_singleton()
    idx, labels = _carrier(spaces, cap)
    rows = [
        [esum_all(s.rho[a][b] for s, a, b in zip(spaces, u, v)) for v in idx]
        for u in idx
    ]
    return FiniteRhoSpace(labels, rows)


def coproduct(spaces: Sequence[FiniteRhoSpace]) -> FiniteRhoSpace:
    """Disjoint union, labels ``(i, x)``; ``inf`` between different summands."""
    spaces = list(spaces)
    for s in spaces:
        require_valid(s)
    labels = [(i, p) for i, s in enumerate(spaces) for p in s.points]
    where = [(i, a) for i, s in enumerate(spaces) for a in range(len(s))]
    rows = [
        [spaces[i].rho[a][b] if i == j else POS_INF for (j, b) in where]
        for (i, a) in where
    ]
    return FiniteRhoSpace(labels, rows)


def equalizer(f: PointMap, g: PointMap) -> tuple[FiniteRhoSpace, PointMap]:
    """Subspace where ``f`` and ``g`` agree, with its inclusion."""
    if f.source != g.source or f.target != g.target:
        raise StructuralError("equalizer needs parallel maps")
    X = require_valid(f.source)
    keep = [i for i in range(len(X)) if f.assignment[i] == g.assignment[i]]
    sub = FiniteRhoSpace([X.points[i] for i in keep], [[X.rho[i][j] for j in keep] for i in keep])
    return sub, PointMap(sub, X, tuple(keep))


# ---------------------------------------------------------------------------
# quotients


@dataclass(frozen=True)
class EquivRelation:
    """A partition of a space's points, given as classes of labels."""

    classes: tuple

    def __init__(self, classes: Sequence[Sequence]):
        object.__setattr__(self, "classes", tuple(tuple(c) for c in classes))

    @classmethod
    def identity(cls, space: FiniteRhoSpace) -> "EquivRelation":
        return cls([[p] for p in space.points])

    @classmethod
    def from_pairs(cls, space: FiniteRhoSpace, pairs) -> "EquivRelation":
        """The equivalence generated by ``pairs`` (union-find)."""
        parent = {p: p for p in space.points}

        def find(p):
            while parent[p] != p:
                parent[p] = parent[parent[p]]
                p = parent[p]
            return p

        for a, b in pairs:
            space.index(a), space.index(b)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
        groups: dict = {}
        for p in space.points:
            groups.setdefault(find(p), []).append(p)
        return cls(list(groups.values()))

    def check(self, space: FiniteRhoSpace) -> list[int]:
        """Class index of every point; raises unless the classes partition the space."""
        owner = [None] * len(space)
        for c, members in enumerate(self.classes):
            if not members:
                raise StructuralError("equivalence classes must be nonempty")
            for p in members:
                i = space.index(p)
                if owner[i] is not None:
                    raise StructuralError(f"point {p!r} lies in two classes")
                owner[i] = c
        missing = [space.points[i] for i, o in enumerate(owner) if o is None]
        if missing:
            raise StructuralError(f"points not covered by any class: {missing}")
        return owner


@dataclass(frozen=True)
class ChainWitness:
    """A minimising chain ``x1, x2, ..., x2n`` for a quotient value.

    ``steps`` holds the metric steps ``(x_{2j-1}, x_{2j})``; consecutive steps
    are linked by the relation (``x_{2j} R x_{2j+1}``).
    """

    steps: tuple
    total: ExtReal

    @property
    def points(self) -> tuple:
        return tuple(p for step in self.steps for p in step)

    def render(self) -> str:
        parts = []
        for j, (a, b) in enumerate(self.steps):
            if j:
                parts.append("~")
            parts.append(f"{a} -> {b}")
        return " ".join(parts) + f" : {render_ext(self.total)}"


@dataclass(frozen=True)
class QuotientResult:
    space: FiniteRhoSpace
    projection: PointMap
    witnesses: dict  # (class_i, class_j) -> ChainWitness, finite values only


def quotient(space: FiniteRhoSpace, rel: EquivRelation) -> QuotientResult:
    """Greatest metric on the classes making the projection 1-Lipschitz.

    The value between two classes is the infimum over chains alternating metric
    steps and free jumps inside a class.  Collapsing each class to a node whose
    arcs are the least member-to-member costs turns this into a walk infimum,
    solved by :func:`min_plus_closure`.
    """
    require_valid(space)
    owner = rel.check(space)
    m = len(rel.classes)
    arcs = [[POS_INF] * m for _ in range(m)]
    best = [[None] * m for _ in range(m)]
    for i, ci in enumerate(owner):
        for j, cj in enumerate(owner):
            v = space.rho[i][j]
            if v < arcs[ci][cj]:
                arcs[ci][cj] = v
                best[ci][cj] = (space.points[i], space.points[j])
    dist, succ = min_plus_closure(arcs, with_successors=True)
    labels = [c if len(c) > 1 else c[0] for c in rel.classes]
    q = FiniteRhoSpace(labels, dist)
    witnesses = {}
    for a in range(m):
        for b in range(m):
            if dist[a][b].is_finite:
                walk = walk_from_successors(succ, a, b)
                steps = tuple(best[u][v] for u, v in zip(walk, walk[1:]))
                total = esum_all(space.d(x, y) for x, y in steps)
                witnesses[(a, b)] = ChainWitness(steps, total)
    return QuotientResult(q, PointMap(space, q, tuple(owner)), witnesses)


# ---------------------------------------------------------------------------
# exponential and the tensor-hom adjunction


def one_lipschitz_maps(Y: FiniteRhoSpace, Z: FiniteRhoSpace, cap: int = MAP_CAP):
    """All 1-Lipschitz assignments ``Y -> Z`` as tuples of target indices."""
    require_valid(Y)
    require_valid(Z)
    total = len(Z) ** len(Y)
    if total > cap:
        raise CapExceeded(f"{total} candidate maps; cap is {cap}")
    ry, rz = Y.rho, Z.rho
    n = len(Y)
    out = []
    for a in itertools.product(range(len(Z)), repeat=n):
        if all(ry[i][j] >= rz[a[i]][a[j]] for i in range(n) for j in range(n)):
            out.append(a)
    return out


def exponential(Y: FiniteRhoSpace, Z: FiniteRhoSpace, cap: int = MAP_CAP) -> FiniteRhoSpace:
    """1-Lipschitz maps ``Y -> Z`` with the sup metric ``max_y rho_Z(h y, k y)``.

    Points are labelled by the tuple of image labels.  For empty ``Y`` the single
    empty map gets ``-inf`` (empty sup is the bottom of the lattice).
    """
    maps = one_lipschitz_maps(Y, Z, cap)
    rz = Z.rho
    labels = [tuple(Z.points[i] for i in h) for h in maps]
    rows = [
        [max((rz[h[y]][k[y]] for y in range(len(Y))), default=NEG_INF) for k in maps]
        for h in maps
    ]
    return FiniteRhoSpace(labels, rows)


@lru_cache(maxsize=4096)
def _tensor_pair(X: FiniteRhoSpace, Y: FiniteRhoSpace) -> FiniteRhoSpace:
    return tensor([X, Y])


@lru_cache(maxsize=4096)
def _exponential_cached(Y: FiniteRhoSpace, Z: FiniteRhoSpace, cap: int) -> FiniteRhoSpace:
    return exponential(Y, Z, cap)


def _require_one_lipschitz(f: PointMap, what: str) -> None:
    if not lipschitz_status(f, 1):
        raise NotLipschitz(f"{what} is not 1-Lipschitz")


def curry(f: PointMap, X: FiniteRhoSpace, Y: FiniteRhoSpace, cap: int = MAP_CAP) -> PointMap:
    """``f: X (x) Y -> Z`` to ``g: X -> Z^Y`` with ``g(x)(y) = f(x, y)``."""
    if len(f.source) != len(X) * len(Y) or f.source != _tensor_pair(X, Y):
        raise StructuralError("curry needs a map out of tensor([X, Y])")
    _require_one_lipschitz(f, "f")
    Z = f.target
    E = _exponential_cached(Y, Z, cap)
    ny = len(Y)
    assignment = []
    for x in range(len(X)):
        label = tuple(Z.points[f.assignment[x * ny + y]] for y in range(ny))
        assignment.append(E.index(label))
    return PointMap(X, E, tuple(assignment))


def uncurry(g: PointMap, X: FiniteRhoSpace, Y: FiniteRhoSpace, Z: FiniteRhoSpace) -> PointMap:
    """Inverse of :func:`curry`."""
    if g.source != X:
        raise StructuralError("uncurry needs a map out of X")
    _require_one_lipschitz(g, "g")
    T = _tensor_pair(X, Y)
    assignment = []
    for x in range(len(X)):
        h = g.target.points[g.assignment[x]]
        for y in range(len(Y)):
            assignment.append(Z.index(h[y]))
    return PointMap(T, Z, tuple(assignment))

"""Reflective and coreflective symmetrizations and the two induced preorders."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .closure import min_plus_closure
from .extended_reals import NEG_INF, POS_INF, ZERO
from .space import FiniteRhoSpace, StructuralError, require_valid

__all__ = [
    "reflective_sym",
    "coreflective_sym",
    "Preorder",
    "reflective_preorder",
    "coreflective_preorder",
    "mt_inf",
    "mt_0",
]


def reflective_sym(space: FiniteRhoSpace) -> FiniteRhoSpace:
    """Greatest symmetric metric below ``rho``.

    Infimum over step paths of the costs ``min(rho(a, b), rho(b, a))``, i.e. the
    min-plus closure of the pointwise minimum with its transpose.  A point can
    become flat here even when it is regular in ``rho``.
    """
    require_valid(space)
    r = space.rho
    n = len(r)
    low = [[min(r[i][j], r[j][i]) for j in range(n)] for i in range(n)]
    return space.with_rho(min_plus_closure(low))


def coreflective_sym(space: FiniteRhoSpace) -> FiniteRhoSpace:
    """Least symmetric metric above ``rho``: the pointwise maximum with the transpose."""
    require_valid(space)
    r = space.rho
    n = len(r)
    return space.with_rho([[max(r[i][j], r[j][i]) for j in range(n)] for i in range(n)])


@dataclass(frozen=True)
class Preorder:
    """A reflexive, transitive relation stored as a boolean matrix.

    ``related[i][j]`` reads "point ``i`` precedes point ``j``".
    """

    points: tuple
    related: tuple

    def __init__(self, points: Sequence, related: Sequence[Sequence[bool]]):
        pts = tuple(points)
        n = len(pts)
        if len(set(pts)) != n:
            raise StructuralError("duplicate preorder labels")
        if len(related) != n or any(len(row) != n for row in related):
            raise StructuralError(f"relation must be a {n}x{n} boolean matrix")
        rel = tuple(tuple(bool(v) for v in row) for row in related)
        for i in range(n):
            if not rel[i][i]:
                raise StructuralError(f"relation is not reflexive at {pts[i]!r}")
        for i in range(n):
            for k in range(n):
                if rel[i][k]:
                    for j in range(n):
                        if rel[k][j] and not rel[i][j]:
                            raise StructuralError(
                                f"relation is not transitive at ({pts[i]!r}, {pts[k]!r}, {pts[j]!r})"
                            )
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "related", rel)

    def __len__(self) -> int:
        return len(self.points)

    def precedes(self, x, y) -> bool:
        return self.related[self.points.index(x)][self.points.index(y)]

    def pairs(self) -> list[tuple]:
        n = len(self.points)
        return [(self.points[i], self.points[j]) for i in range(n) for j in range(n) if self.related[i][j]]


def reflective_preorder(space: FiniteRhoSpace) -> Preorder:
    """``x`` precedes ``x'`` when the transition costs less than ``inf``."""
    require_valid(space)
    return Preorder(space.points, [[not v.is_pos_inf for v in row] for row in space.rho])


def coreflective_preorder(space: FiniteRhoSpace) -> Preorder:
    """``x`` precedes ``x'`` when the way back gains: ``rho(x', x) <= 0``."""
    require_valid(space)
    r = space.rho
    n = len(r)
    return Preorder(space.points, [[r[j][i] <= ZERO for j in range(n)] for i in range(n)])


def mt_inf(p: Preorder) -> FiniteRhoSpace:
    """Flat space: ``-inf`` where ``y`` precedes ``y'``, ``inf`` otherwise."""
    return FiniteRhoSpace(p.points, [[NEG_INF if v else POS_INF for v in row] for row in p.related])


def mt_0(p: Preorder) -> FiniteRhoSpace:
    """Delta-space: entry ``(y, y')`` is 0 when ``y'`` precedes ``y``, ``inf`` otherwise.

    The variables are reversed with respect to :func:`mt_inf`, so that
    ``coreflective_preorder(mt_0(p)) == p``.
    """
    rel = p.related
    n = len(rel)
    return FiniteRhoSpace(p.points, [[ZERO if rel[j][i] else POS_INF for j in range(n)] for i in range(n)])

"""Finite topologies generated by the forward and backward cost balls."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .extended_reals import ZERO, ext
from .space import CapExceeded, FiniteRhoSpace, StructuralError, opposite, require_valid
from .symmetry import coreflective_sym, reflective_sym

__all__ = [
    "OPEN_SET_CAP",
    "FiniteTopology",
    "Comparison",
    "future_ball",
    "past_ball",
    "future_local_base",
    "future_topology",
    "past_topology",
    "reflective_topology",
    "coreflective_topology",
    "compare",
    "topology_from_basis",
]

OPEN_SET_CAP = 1 << 16


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class FiniteTopology:
    """Open sets of a finite carrier, stored as bitmasks over point positions."""

    points: tuple
    opens: frozenset

    def __post_init__(self):
        n = len(self.points)
        full = (1 << n) - 1
        opens = frozenset(self.opens)
        if 0 not in opens or full not in opens:
            raise StructuralError("a topology contains the empty set and the carrier")
        if any(m < 0 or m > full for m in opens):
            raise StructuralError("open set outside the carrier")
        for a in opens:
            for b in opens:
                if (a | b) not in opens or (a & b) not in opens:
                    raise StructuralError("open family is not closed under union and intersection")
        object.__setattr__(self, "opens", opens)

    def members(self, mask: int) -> frozenset:
        return frozenset(p for i, p in enumerate(self.points) if mask >> i & 1)

    def open_sets(self) -> list[frozenset]:
        return [self.members(m) for m in self.opens]

    def is_open(self, subset: Iterable) -> bool:
        return _mask(self.points.index(p) for p in subset) in self.opens

    def minimal_neighbourhood(self, x) -> frozenset:
        """Smallest open set containing ``x`` (finite topologies are Alexandrov)."""
        bit = 1 << self.points.index(x)
        m = (1 << len(self.points)) - 1
        for o in self.opens:
            if o & bit:
                m &= o
        return self.members(m)

    def rendered(self) -> list[list]:
        """Sorted list of sorted label lists (labels compared by their repr)."""
        out = [sorted(self.members(m), key=_label_key) for m in self.opens]
        return sorted(out, key=lambda s: (len(s), [_label_key(p) for p in s]))

    @property
    def is_discrete(self) -> bool:
        return len(self.opens) == 1 << len(self.points)

    @property
    def is_chaotic(self) -> bool:
        return len(self.opens) <= 2


def _label_key(p):
    return (type(p).__name__, repr(p)) if not isinstance(p, (int, Fraction)) else ("", p)


def topology_from_basis(points: Sequence, basis: Iterable[int], cap: int = OPEN_SET_CAP) -> FiniteTopology:
    """Topology whose opens are the unions of a family that covers the carrier
    and is closed under pairwise intersection (checked by closing it)."""
    n = len(points)
    full = (1 << n) - 1
    base = set(basis)
    # close the basis under intersections so unions of it form a topology
    changed = True
    while changed:
        changed = False
        for a in list(base):
            for b in list(base):
                c = a & b
                if c not in base:
                    base.add(c)
                    changed = True
    opens = {0, full}
    frontier = set(base) - opens
    opens |= frontier
    while frontier:
        nxt = set()
        for o in frontier:
            for b in base:
                u = o | b
                if u not in opens:
                    nxt.add(u)
        opens |= nxt
        if len(opens) > cap:
            raise CapExceeded(f"topology has more than {cap} open sets")
        frontier = nxt
    return FiniteTopology(tuple(points), frozenset(opens))


def future_ball(space: FiniteRhoSpace, x0, eps) -> frozenset:
    """``{x : rho(x0, x) < eps}`` for a finite ``eps > 0``."""
    eps = ext(eps)
    if not eps.is_finite or eps <= ZERO:
        raise ValueError("ball radius must be a positive finite rational")
    row = space.rho[space.index(x0)]
    return frozenset(p for p, v in zip(space.points, row) if v < eps)


def past_ball(space: FiniteRhoSpace, x0, eps) -> frozenset:
    """``{x : rho(x, x0) < eps}``."""
    return future_ball(opposite(space), x0, eps)


def _ball_masks(space: FiniteRhoSpace, i: int) -> list[int]:
    # distinct balls around point i: one per attained threshold in [0, inf)
    row = space.rho[i]
    thresholds = {ZERO} | {v for v in row if v.is_finite and v > ZERO}
    return sorted({_mask(j for j, v in enumerate(row) if v <= t) for t in thresholds}, key=int.bit_count)


def future_local_base(space: FiniteRhoSpace, x0) -> list[frozenset]:
    """Every distinct future ball around ``x0``, smallest first."""
    require_valid(space)
    i = space.index(x0)
    return [frozenset(p for j, p in enumerate(space.points) if m >> j & 1) for m in _ball_masks(space, i)]


def future_topology(space: FiniteRhoSpace, cap: int = OPEN_SET_CAP) -> FiniteTopology:
    """Topology generated by the future balls.

    Balls only change when the radius crosses an attained value, so radii just
    above 0 and above each positive finite entry give them all.  Balls are open
    (if ``rho(x0, x) < eps`` then the ball at ``x`` of radius ``eps - rho(x0, x)``
    stays inside), so the opens are exactly the unions of balls.
    """
    require_valid(space)
    basis = set()
    for i in range(len(space)):
        basis.update(_ball_masks(space, i))
    return topology_from_basis(space.points, basis, cap)


def past_topology(space: FiniteRhoSpace, cap: int = OPEN_SET_CAP) -> FiniteTopology:
    return future_topology(opposite(space), cap)


def reflective_topology(space: FiniteRhoSpace, cap: int = OPEN_SET_CAP) -> FiniteTopology:
    return future_topology(reflective_sym(space), cap)


def coreflective_topology(space: FiniteRhoSpace, cap: int = OPEN_SET_CAP) -> FiniteTopology:
    return future_topology(coreflective_sym(space), cap)


class Comparison(str, Enum):
    EQUAL = "equal"
    FINER = "finer"
    COARSER = "coarser"
    INCOMPARABLE = "incomparable"


def compare(t1: FiniteTopology, t2: FiniteTopology) -> Comparison:
    """How ``t1`` relates to ``t2``; ``FINER`` means ``t1`` has more open sets."""
    if t1.points != t2.points:
        raise StructuralError("topologies live on different carriers")
    a, b = t1.opens, t2.opens
    if a == b:
        return Comparison.EQUAL
    if a > b:
        return Comparison.FINER
    if a < b:
        return Comparison.COARSER
    return Comparison.INCOMPARABLE

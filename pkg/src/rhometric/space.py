"""Finite rho-metric spaces: data model, axiom checks, classification, builders."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Hashable, Mapping, Sequence

from .extended_reals import (
    NEG_INF,
    POS_INF,
    ZERO,
    ExtReal,
    esum,
    ext,
    positive_part,
    render_ext,
    scale,
)

__all__ = [
    "RhoError",
    "StructuralError",
    "AxiomError",
    "CapExceeded",
    "NotLipschitz",
    "Violation",
    "FiniteRhoSpace",
    "SpaceProfile",
    "PointMap",
    "AdmissibleConstants",
    "validate",
    "require_valid",
    "classify",
    "opposite",
    "positive_coreflection",
    "discrete",
    "chaotic",
    "chaotic_delta",
    "lipschitz_status",
    "admissible_constants",
    "lipschitz_weight",
    "scale_space",
    "potential_space",
    "recover_potential",
    "norm_space",
    "is_reversive",
    "entrywise_leq",
]


class RhoError(Exception):
    """Base class for errors raised by this package."""


class StructuralError(RhoError, ValueError):
    """Malformed input: non-square matrix, duplicate labels, unknown points."""


class AxiomError(RhoError, ValueError):
    """A space, norm or map fails the axioms it is required to satisfy."""

    def __init__(self, message: str, violations: Sequence = ()):
        super().__init__(message)
        self.violations = list(violations)


class CapExceeded(RhoError):
    """An enumeration or cartesian carrier would exceed its configured cap."""


class NotLipschitz(RhoError, ValueError):
    """A map does not satisfy the Lipschitz condition it was supplied with."""


@dataclass(frozen=True)
class Violation:
    kind: str  # "triangle" or "diagonal"
    points: tuple
    lhs: ExtReal
    rhs: ExtReal

    def __str__(self) -> str:
        pts = ", ".join(map(str, self.points))
        if self.kind == "diagonal":
            return f"diagonal at ({pts}): rho = {render_ext(self.lhs)}, must be 0 or -inf"
        return (
            f"triangle at ({pts}): rho(x,y) + rho(y,z) = {render_ext(self.lhs)}"
            f" < rho(x,z) = {render_ext(self.rhs)}"
        )


class FiniteRhoSpace:
    """Ordered point labels with an ``ExtReal`` cost matrix indexed positionally.

    Construction checks only the structure (square matrix, unique hashable
    labels); the metric axioms are checked by :func:`validate`.  Entries may be
    given as anything :func:`ext` accepts.
    """

    points: tuple
    rho: tuple

    def __init__(self, points: Sequence[Hashable], rho: Sequence[Sequence]):
        pts = tuple(points)
        n = len(pts)
        try:
            index = {p: i for i, p in enumerate(pts)}
        except TypeError as exc:
            raise StructuralError(f"point labels must be hashable: {exc}") from exc
        if len(index) != n:
            seen, dup = set(), []
            for p in pts:
                if p in seen:
                    dup.append(p)
                seen.add(p)
            raise StructuralError(f"duplicate point labels: {dup}")
        if len(rho) != n or any(len(row) != n for row in rho):
            raise StructuralError(f"rho must be a {n}x{n} matrix")
        try:
            mat = tuple(tuple(ext(v) for v in row) for row in rho)
        except (TypeError, ValueError) as exc:
            raise StructuralError(f"bad matrix entry: {exc}") from exc
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "rho", mat)
        object.__setattr__(self, "_index", index)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteRhoSpace is immutable")

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteRhoSpace):
            return NotImplemented
        return self.points == other.points and self.rho == other.rho

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.points, self.rho))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        rows = "; ".join(" ".join(render_ext(v) for v in row) for row in self.rho)
        return f"FiniteRhoSpace(points={list(self.points)!r}, rho=[{rows}])"

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise StructuralError(f"unknown point {label!r}") from None

    def d(self, x, y) -> ExtReal:
        """Cost from label ``x`` to label ``y``."""
        return self.rho[self.index(x)][self.index(y)]

    @cached_property
    def violations(self) -> tuple:
        return tuple(_violations(self))

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def with_rho(self, rho) -> "FiniteRhoSpace":
        return FiniteRhoSpace(self.points, rho)


def _violations(space: FiniteRhoSpace):
    rho = space.rho
    pts = space.points
    n = len(pts)
    for i in range(n):
        v = rho[i][i]
        if not (v == ZERO or v.is_neg_inf):
            yield Violation("diagonal", (pts[i],), v, ZERO)
    for i in range(n):
        ri = rho[i]
        for j in range(n):
            rij = ri[j]
            if rij.is_pos_inf:
                continue
            rj = rho[j]
            for k in range(n):
                lhs = esum(rij, rj[k])
                if lhs < ri[k]:
                    yield Violation("triangle", (pts[i], pts[j], pts[k]), lhs, ri[k])


def validate(space: FiniteRhoSpace) -> list[Violation]:
    """All axiom violations of ``space``; empty iff it is a rho-metric space."""
    return list(space.violations)


def require_valid(space: FiniteRhoSpace, what: str = "space") -> FiniteRhoSpace:
    if space.violations:
        shown = "; ".join(str(v) for v in space.violations[:5])
        raise AxiomError(f"{what} is not a rho-metric space: {shown}", space.violations)
    return space


def entrywise_leq(a: FiniteRhoSpace, b: FiniteRhoSpace) -> bool:
    """``a <= b`` as metrics on the same carrier."""
    if a.points != b.points:
        raise StructuralError("comparison needs the same carrier")
    return all(x <= y for ra, rb in zip(a.rho, b.rho) for x, y in zip(ra, rb))


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class SpaceProfile:
    positive: bool
    finite_valued: bool
    symmetric: bool
    linear: bool
    affordable: bool
    flat_points: frozenset
    regular_points: frozenset

    @property
    def flat(self) -> bool:
        return not self.regular_points

    @property
    def regular(self) -> bool:
        return not self.flat_points


def classify(space: FiniteRhoSpace) -> SpaceProfile:
    require_valid(space)
    rho, n = space.rho, len(space)
    entries = [v for row in rho for v in row]
    finite = all(v.is_finite for v in entries)
    linear = finite and all(
        rho[i][j] + rho[j][k] == rho[i][k]
        for i in range(n)
        for j in range(n)
        for k in range(n)
    )
    flat = frozenset(space.points[i] for i in range(n) if rho[i][i].is_neg_inf)
    return SpaceProfile(
        positive=all(v >= ZERO for v in entries),
        finite_valued=finite,
        symmetric=all(rho[i][j] == rho[j][i] for i in range(n) for j in range(i)),
        linear=linear,
        affordable=not any(v.is_pos_inf for v in entries),
        flat_points=flat,
        regular_points=frozenset(space.points) - flat,
    )


# ---------------------------------------------------------------------------
# elementary builders


def opposite(space: FiniteRhoSpace) -> FiniteRhoSpace:
    require_valid(space)
    n = len(space)
    return space.with_rho([[space.rho[j][i] for j in range(n)] for i in range(n)])


def positive_coreflection(space: FiniteRhoSpace) -> FiniteRhoSpace:
    """Truncate negative costs at 0: the least delta-metric above ``rho``."""
    require_valid(space)
    return space.with_rho([[positive_part(v) for v in row] for row in space.rho])


def discrete(labels: Sequence) -> FiniteRhoSpace:
    labels = tuple(labels)
    if not labels:
        raise StructuralError("discrete() needs at least one label")
    n = len(labels)
    return FiniteRhoSpace(labels, [[ZERO if i == j else POS_INF for j in range(n)] for i in range(n)])


def chaotic(labels: Sequence) -> FiniteRhoSpace:
    """The least rho-metric: ``-inf`` everywhere."""
    labels = tuple(labels)
    if not labels:
        raise StructuralError("chaotic() needs at least one label")
    n = len(labels)
    return FiniteRhoSpace(labels, [[NEG_INF] * n for _ in range(n)])


def chaotic_delta(labels: Sequence) -> FiniteRhoSpace:
    """The least delta-metric: 0 everywhere."""
    labels = tuple(labels)
    if not labels:
        raise StructuralError("chaotic_delta() needs at least one label")
    n = len(labels)
    return FiniteRhoSpace(labels, [[ZERO] * n for _ in range(n)])


def scale_space(lam, space: FiniteRhoSpace) -> FiniteRhoSpace:
    """The same carrier with ``lam * rho`` (``0 * inf = inf``)."""
    require_valid(space)
    return space.with_rho([[scale(lam, v) for v in row] for row in space.rho])


# ---------------------------------------------------------------------------
# maps and Lipschitz constants


@dataclass(frozen=True)
class PointMap:
    """A function between finite spaces, stored as target indices."""

    source: FiniteRhoSpace
    target: FiniteRhoSpace
    assignment: tuple

    def __post_init__(self):
        a = tuple(self.assignment)
        if len(a) != len(self.source):
            raise StructuralError("assignment must cover every source point")
        if any(not isinstance(i, int) or not 0 <= i < len(self.target) for i in a):
            raise StructuralError("assignment entries must be target indices")
        object.__setattr__(self, "assignment", a)

    @classmethod
    def from_labels(cls, source, target, mapping: Mapping | Callable) -> "PointMap":
        get = mapping if callable(mapping) else mapping.__getitem__
        return cls(source, target, tuple(target.index(get(p)) for p in source.points))

    def __call__(self, label):
        return self.target.points[self.assignment[self.source.index(label)]]

    def image_labels(self) -> tuple:
        return tuple(self.target.points[i] for i in self.assignment)


@dataclass(frozen=True)
class AdmissibleConstants:
    """The set of finite ``lam >= 0`` making a map ``lam``-Lipschitz.

    Each pair contributes a closed ray or segment, so the set is an interval
    ``[low, high]`` (``high is None`` meaning unbounded) or empty.
    """

    empty: bool
    low: Fraction = Fraction(0)
    high: Fraction | None = None

    def __contains__(self, lam) -> bool:
        lam = Fraction(lam)
        if self.empty or lam < self.low:
            return False
        return self.high is None or lam <= self.high

    @property
    def singleton(self) -> Fraction | None:
        if not self.empty and self.high is not None and self.high == self.low:
            return self.low
        return None


def lipschitz_status(f: PointMap, lam) -> bool:
    """Whether ``lam * rho_X(x, x') >= rho_Y(f x, f x')`` for every pair."""
    rx, ry, a = f.source.rho, f.target.rho, f.assignment
    n = len(a)
    for i in range(n):
        for j in range(n):
            if scale(lam, rx[i][j]) < ry[a[i]][a[j]]:
                return False
    return True


def admissible_constants(f: PointMap) -> AdmissibleConstants:
    low, high = Fraction(0), None
    rx, ry, a = f.source.rho, f.target.rho, f.assignment
    n = len(a)
    for i in range(n):
        for j in range(n):
            s, t = rx[i][j], ry[a[i]][a[j]]
            if t.is_neg_inf or s.is_pos_inf:
                continue
            if t.is_pos_inf or s.is_neg_inf:
                return AdmissibleConstants(True)
            sv, tv = s.value, t.value
            if sv > 0:
                low = max(low, tv / sv)
            elif sv == 0:
                if tv > 0:
                    return AdmissibleConstants(True)
            else:
                bound = tv / sv
                high = bound if high is None else min(high, bound)
    if high is not None and high < low:
        return AdmissibleConstants(True)
    return AdmissibleConstants(False, low, high)


def lipschitz_weight(f: PointMap) -> ExtReal:
    """Least Lipschitz constant of a map out of a positive space; ``inf`` if none."""
    require_valid(f.source, "source")
    if any(v < ZERO for row in f.source.rho for v in row):
        raise AxiomError("Lipschitz weight needs a positive (delta-metric) source")
    adm = admissible_constants(f)
    return POS_INF if adm.empty else ExtReal(adm.low)


# ---------------------------------------------------------------------------
# linear and invariant metrics


def potential_space(labels: Sequence, phi: Mapping | Callable) -> FiniteRhoSpace:
    """The linear metric ``rho(x, y) = phi(y) - phi(x)``."""
    labels = tuple(labels)
    get = phi if callable(phi) else phi.__getitem__
    values = [Fraction(get(p)) for p in labels]
    return FiniteRhoSpace(labels, [[ExtReal(vy - vx) for vy in values] for vx in values])


def recover_potential(space: FiniteRhoSpace, base) -> dict:
    """A potential vanishing at ``base``: ``Phi(x) = rho(base, x)``."""
    if not classify(space).linear:
        raise AxiomError("recover_potential needs a linear rho-metric")
    b = space.index(base)
    return {p: space.rho[b][i].value for i, p in enumerate(space.points)}


def norm_space(elements: Sequence, add: Mapping | Callable, mu: Mapping | Callable, zero=None) -> FiniteRhoSpace:
    """Translation-invariant space ``rho(x, y) = mu(y - x)`` on a finite abelian group.

    ``add`` is the Cayley table (a mapping on pairs, or a two-argument
    callable).  The group axioms and the norm axioms
    ``mu(x) + mu(y) >= mu(x + y)``, ``mu(0) <= 0`` are checked.
    """
    elements = tuple(elements)
    plus = add if callable(add) else (lambda x, y: add[(x, y)])
    norm = mu if callable(mu) else mu.__getitem__
    eset = set(elements)
    for x in elements:
        for y in elements:
            s = plus(x, y)
            if s not in eset:
                raise StructuralError(f"{x} + {y} = {s!r} is not an element")
            if plus(y, x) != s:
                raise StructuralError(f"group is not abelian at ({x}, {y})")
    if zero is None:
        zeros = [z for z in elements if all(plus(z, x) == x for x in elements)]
        if not zeros:
            raise StructuralError("no identity element")
        zero = zeros[0]
    for x, y, z in itertools.product(elements, repeat=3):
        if plus(plus(x, y), z) != plus(x, plus(y, z)):
            raise StructuralError(f"addition is not associative at ({x}, {y}, {z})")
    neg = {}
    for x in elements:
        inv = [y for y in elements if plus(x, y) == zero]
        if not inv:
            raise StructuralError(f"{x} has no inverse")
        neg[x] = inv[0]
    m = {x: ext(norm(x)) for x in elements}
    bad = []
    if not m[zero] <= ZERO:
        bad.append((zero,))
    for x in elements:
        for y in elements:
            if esum(m[x], m[y]) < m[plus(x, y)]:
                bad.append((x, y))
    if bad:
        raise AxiomError(f"mu is not a real norm; offending arguments: {bad[:5]}", bad)
    return FiniteRhoSpace(elements, [[m[plus(y, neg[x])] for y in elements] for x in elements])


REVERSIVE_CAP = 6


def is_reversive(space: FiniteRhoSpace, cap: int = REVERSIVE_CAP) -> bool:
    """Whether the space is isometrically isomorphic to its opposite.

    Brute force over permutations, so exponential; refused above ``cap`` points.
    """
    require_valid(space)
    n = len(space)
    if n > cap:
        raise CapExceeded(f"is_reversive searches {n}! permutations; cap is {cap} points")
    rho = space.rho
    for perm in itertools.permutations(range(n)):
        if all(rho[perm[i]][perm[j]] == rho[j][i] for i in range(n) for j in range(n)):
            return True
    return False

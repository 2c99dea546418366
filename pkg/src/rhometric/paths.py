"""Grid lines, step paths, piecewise-linear paths and their valuations.

Paths are parametrised on the unit interval with exact rational times.  A
:class:`StepPath` is right-continuous and piecewise constant in a finite
space; a :class:`PLPath` interpolates linearly between breakpoints and takes
values in one of the three standard lines, evaluated analytically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .constructions import tensor
from .extended_reals import (
    POS_INF,
    ZERO,
    ExtReal,
    ediff,
    esum,
    esum_all,
    render_ext,
    scale,
)
from .space import (
    AxiomError,
    FiniteRhoSpace,
    NotLipschitz,
    PointMap,
    StructuralError,
    classify,
    lipschitz_status,
    positive_coreflection,
    require_valid,
)

__all__ = [
    "LineKind",
    "grid_line",
    "StepPath",
    "PLPath",
    "ValuationReport",
    "step_valuation",
    "step_lipschitz_weight",
    "pl_valuation",
    "pl_lipschitz_weight",
    "concat",
    "reparametrize",
    "PLTimeMap",
    "map_path",
    "tensor_path_valuation",
    "abs_space",
    "gravitational_potential",
    "gravitational_field_potential",
    "elastic_potential",
]


class LineKind(str, Enum):
    DELTA = "delta"  # y - x forward, inf backward
    RHO = "rho"  # y - x
    DELTA0 = "delta0"  # (y - x) v 0

    def cost(self, x: Fraction, y: Fraction) -> ExtReal:
        d = Fraction(y) - Fraction(x)
        if self is LineKind.RHO:
            return ExtReal(d)
        if self is LineKind.DELTA0:
            return ExtReal(max(d, 0))
        return ExtReal(d) if d >= 0 else POS_INF


def grid_line(kind: LineKind | str, values: Sequence) -> FiniteRhoSpace:
    """Finite model of a standard line on the given strictly increasing values."""
    kind = LineKind(kind)
    vals = [Fraction(v) for v in values]
    if not vals:
        raise StructuralError("a grid line needs at least one value")
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise StructuralError("grid values must be strictly increasing")
    labels = [int(v) if v.denominator == 1 else v for v in vals]
    return FiniteRhoSpace(labels, [[kind.cost(x, y) for y in vals] for x in vals])


def _fractions(values) -> tuple:
    return tuple(Fraction(v) for v in values)


# ---------------------------------------------------------------------------
# step paths


@dataclass(frozen=True)
class StepPath:
    """``visits[j]`` holds on ``[switches[j-1], switches[j])``; the last visit holds up to 1.

    Switch times lie in ``]0, 1]`` and increase strictly.  A final switch at
    exactly 1 is allowed: the last visit is then attained only at ``t = 1``
    (reparametrised paths can produce this).
    """

    space: FiniteRhoSpace
    visits: tuple
    switches: tuple = ()

    def __post_init__(self):
        visits = tuple(self.visits)
        switches = _fractions(self.switches)
        if not visits:
            raise StructuralError("a step path visits at least one point")
        for p in visits:
            self.space.index(p)
        if len(switches) != len(visits) - 1:
            raise StructuralError("need exactly one switch time between consecutive visits")
        prev = Fraction(0)
        for s in switches:
            if not prev < s <= 1:
                raise StructuralError("switch times must increase strictly inside ]0, 1]")
            prev = s
        object.__setattr__(self, "visits", visits)
        object.__setattr__(self, "switches", switches)

    @classmethod
    def uniform(cls, space: FiniteRhoSpace, visits: Sequence) -> "StepPath":
        """Visits spread evenly over the interval."""
        n = len(visits)
        return cls(space, tuple(visits), tuple(Fraction(j, n) for j in range(1, n)))

    @classmethod
    def constant(cls, space: FiniteRhoSpace, x) -> "StepPath":
        return cls(space, (x,), ())

    @property
    def start(self):
        return self.visits[0]

    @property
    def end(self):
        return self.visits[-1]

    def at(self, t) -> object:
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise ValueError("time outside [0, 1]")
        j = sum(1 for s in self.switches if s <= t)
        return self.visits[j]

    def reversed(self) -> "StepPath":
        """The path ``t -> a(1 - t)``, made right-continuous (same visit sequence)."""
        if self.switches and self.switches[-1] == 1:
            raise ValueError("cannot reverse a path whose last visit lasts an instant")
        return StepPath(self.space, self.visits[::-1], tuple(1 - s for s in reversed(self.switches)))


def _visit_sum(rho, idx: Sequence[int]) -> ExtReal:
    if len(idx) == 1:
        return rho[idx[0]][idx[0]]
    return esum_all(rho[a][b] for a, b in zip(idx, idx[1:]))


@dataclass(frozen=True)
class ValuationReport:
    """``v_minus`` is ``None`` when ``v = inf`` (the descent is then undefined);
    ``total_variation`` is ``None`` unless the target metric is linear."""

    v: ExtReal
    v_plus: ExtReal
    v_minus: ExtReal | None
    lipschitz_weight: ExtReal
    total_variation: ExtReal | None = None
    notes: tuple = field(default=())

    def as_dict(self) -> dict:
        def r(x):
            return None if x is None else render_ext(x)

        return {
            "v": r(self.v),
            "v_plus": r(self.v_plus),
            "v_minus": r(self.v_minus) if self.v_minus is not None else "undefined",
            "total_variation": r(self.total_variation) if self.total_variation is not None else "n/a",
            "lipschitz_weight": r(self.lipschitz_weight),
        }

    def render(self) -> str:
        return "\n".join(f"{k}={v}" for k, v in self.as_dict().items()) + "\n"


def _descent(v: ExtReal, v_plus: ExtReal) -> ExtReal | None:
    if v.is_pos_inf:
        return None
    if v_plus.is_pos_inf or v.is_neg_inf:
        return POS_INF
    return ediff(v_plus, v)


def step_valuation(p: StepPath) -> ValuationReport:
    """Exact supremum over partitions of the summed transition costs.

    Refining a partition never lowers the sum (triangle inequality), and any
    partition can be refined to meet every constant piece, so the supremum is
    the sum along the visit sequence; a constant path gives ``rho(x, x)``.
    """
    X = require_valid(p.space)
    idx = [X.index(x) for x in p.visits]
    v = _visit_sum(X.rho, idx)
    v_plus = _visit_sum(positive_coreflection(X).rho, idx)
    tv = None
    if classify(X).linear:
        tv = _visit_sum(abs_space(X).rho, idx)
    return ValuationReport(v, v_plus, _descent(v, v_plus), step_lipschitz_weight(p), tv)


def step_lipschitz_weight(p: StepPath) -> ExtReal:
    """Least ``lam`` with ``rho(a t, a t') <= lam (t' - t)`` for all ``t <= t'``.

    For pieces ``i < j`` the gap is ``inf{t' - t} = s_j - s_{i+1}`` (zero for
    adjacent pieces, where any positive cost forbids a finite constant).
    """
    X = p.space
    rho = X.rho
    idx = [X.index(x) for x in p.visits]
    # piece k starts at starts[k] and ends at starts[k+1]
    starts = (Fraction(0),) + p.switches
    best = ZERO
    n = len(idx)
    for i in range(n):
        for j in range(i + 1, n):
            c = rho[idx[i]][idx[j]]
            if c <= ZERO:
                continue
            if c.is_pos_inf:
                return POS_INF
            gap = starts[j] - starts[i + 1]
            if gap == 0:
                return POS_INF
            best = max(best, ExtReal(c.value / gap))
    return best


# ---------------------------------------------------------------------------
# piecewise-linear paths into the standard lines


@dataclass(frozen=True)
class PLPath:
    """Linear interpolation of ``(times[k], values[k])`` with ``0 = t_0 < ... < t_m = 1``."""

    times: tuple
    values: tuple
    target: LineKind = LineKind.RHO

    def __post_init__(self):
        times, values = _fractions(self.times), _fractions(self.values)
        if len(times) < 2 or len(times) != len(values):
            raise StructuralError("a PL path needs at least two breakpoints with one value each")
        if times[0] != 0 or times[-1] != 1:
            raise StructuralError("breakpoint times must start at 0 and end at 1")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise StructuralError("breakpoint times must increase strictly")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "target", LineKind(self.target))

    @classmethod
    def profile(cls, values: Sequence, target: LineKind | str = LineKind.RHO) -> "PLPath":
        """Breakpoints spread evenly over the interval."""
        m = len(values) - 1
        return cls(tuple(Fraction(k, m) for k in range(m + 1)), tuple(values), LineKind(target))

    def at(self, t) -> Fraction:
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise ValueError("time outside [0, 1]")
        for k in range(len(self.times) - 1):
            t0, t1 = self.times[k], self.times[k + 1]
            if t <= t1:
                y0, y1 = self.values[k], self.values[k + 1]
                return y0 + (y1 - y0) * (t - t0) / (t1 - t0)
        return self.values[-1]  # pragma: no cover

    def slopes(self) -> list[Fraction]:
        t, y = self.times, self.values
        return [(y[k + 1] - y[k]) / (t[k + 1] - t[k]) for k in range(len(t) - 1)]

    def reversed(self) -> "PLPath":
        return PLPath(tuple(1 - t for t in reversed(self.times)), self.values[::-1], self.target)

    def retarget(self, target: LineKind | str) -> "PLPath":
        return PLPath(self.times, self.values, LineKind(target))


def pl_valuation(p: PLPath) -> ValuationReport:
    """Analytic valuation; the breakpoint partition attains every supremum
    because the path is monotone between breakpoints."""
    y = p.values
    rises = [b - a for a, b in zip(y, y[1:])]
    ascent = sum((d for d in rises if d > 0), Fraction(0))
    net = y[-1] - y[0]
    weight = pl_lipschitz_weight(p)
    if p.target is LineKind.RHO:
        v, v_plus = ExtReal(net), ExtReal(ascent)
        v_minus = ExtReal(ascent - net)
        return ValuationReport(v, v_plus, v_minus, weight, ExtReal(2 * ascent - net))
    if p.target is LineKind.DELTA0:
        length = ExtReal(ascent)
        return ValuationReport(length, length, ZERO, weight)
    if all(d >= 0 for d in rises):
        return ValuationReport(ExtReal(net), ExtReal(net), ZERO, weight)
    return ValuationReport(POS_INF, POS_INF, None, weight)


def pl_lipschitz_weight(p: PLPath) -> ExtReal:
    """Least ``lam`` with ``a(t') <= a(t) + lam (t' - t)`` (and monotonicity for DELTA)."""
    slopes = p.slopes()
    if p.target is LineKind.DELTA and any(s < 0 for s in slopes):
        return POS_INF
    return ExtReal(max([Fraction(0)] + slopes))


# ---------------------------------------------------------------------------
# operations on paths


def concat(a, b):
    """``a`` on ``[0, 1/2]`` followed by ``b`` on ``[1/2, 1]``."""
    half = Fraction(1, 2)
    if isinstance(a, StepPath) and isinstance(b, StepPath):
        if a.space != b.space:
            raise StructuralError("paths live in different spaces")
        if a.end != b.start:
            raise StructuralError("the first path must end where the second starts")
        switches = tuple(s * half for s in a.switches) + tuple(half + s * half for s in b.switches)
        return StepPath(a.space, a.visits + b.visits[1:], switches)
    if isinstance(a, PLPath) and isinstance(b, PLPath):
        if a.target is not b.target:
            raise StructuralError("paths live in different lines")
        if a.values[-1] != b.values[0]:
            raise StructuralError("the first path must end where the second starts")
        times = tuple(t * half for t in a.times) + tuple(half + t * half for t in b.times[1:])
        return PLPath(times, a.values + b.values[1:], a.target)
    raise TypeError("concat needs two step paths or two PL paths")


@dataclass(frozen=True)
class PLTimeMap:
    """A continuous nondecreasing piecewise-linear map of the unit interval."""

    times: tuple
    values: tuple

    def __post_init__(self):
        t, v = _fractions(self.times), _fractions(self.values)
        if len(t) < 2 or len(t) != len(v) or t[0] != 0 or t[-1] != 1:
            raise StructuralError("time map breakpoints must run from 0 to 1")
        if any(b <= a for a, b in zip(t, t[1:])):
            raise StructuralError("time map breakpoints must increase strictly")
        if any(b < a for a, b in zip(v, v[1:])) or v[0] < 0 or v[-1] > 1:
            raise StructuralError("time map must be nondecreasing into [0, 1]")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    @property
    def surjective(self) -> bool:
        return self.values[0] == 0 and self.values[-1] == 1

    def __call__(self, t) -> Fraction:
        t = Fraction(t)
        for k in range(len(self.times) - 1):
            t0, t1 = self.times[k], self.times[k + 1]
            if t <= t1:
                v0, v1 = self.values[k], self.values[k + 1]
                return v0 + (v1 - v0) * (t - t0) / (t1 - t0)
        return self.values[-1]  # pragma: no cover

    def first_reach(self, s) -> Fraction:
        """Least ``t`` with ``phi(t) >= s``, for ``phi(0) < s <= phi(1)``."""
        s = Fraction(s)
        for k in range(len(self.times) - 1):
            v0, v1 = self.values[k], self.values[k + 1]
            if v1 >= s:
                t0, t1 = self.times[k], self.times[k + 1]
                return t0 + (t1 - t0) * (s - v0) / (v1 - v0)
        raise ValueError("value not reached")


def reparametrize(a: StepPath, phi: PLTimeMap) -> StepPath:
    """The composite ``a o phi``.  A non-surjective ``phi`` gives a partial reparametrisation."""
    start = phi.values[0]
    first = sum(1 for s in a.switches if s <= start)
    visits = [a.visits[first]]
    switches = []
    for j, s in enumerate(a.switches, start=1):
        if start < s <= phi.values[-1]:
            switches.append(phi.first_reach(s))
            visits.append(a.visits[j])
    return StepPath(a.space, tuple(visits), tuple(switches))


def map_path(f: PointMap, lam, p: StepPath) -> StepPath:
    """The image path ``f o p``; checks ``v(f o p) <= lam * v(p)``."""
    if p.space != f.source:
        raise StructuralError("path does not live in the source of the map")
    if not lipschitz_status(f, lam):
        raise NotLipschitz(f"map is not {lam}-Lipschitz")
    image = StepPath(f.target, tuple(f(x) for x in p.visits), p.switches)
    lhs, rhs = step_valuation(image).v, scale(lam, step_valuation(p).v)
    if not lhs <= rhs:  # pragma: no cover - would contradict the triangle-free bound
        raise AssertionError(f"image valuation {lhs} exceeds {rhs}")
    return image


def tensor_path_valuation(a: StepPath, b: StepPath) -> ExtReal:
    """Valuation of ``t -> (a t, b t)`` in the tensor space, checked against ``v(a) + v(b)``."""
    T = tensor([a.space, b.space])
    times = sorted(set(a.switches) | set(b.switches))
    visits = [(a.start, b.start)] + [(a.at(t), b.at(t)) for t in times]
    direct = step_valuation(StepPath(T, tuple(visits), tuple(times))).v
    split = esum(step_valuation(a).v, step_valuation(b).v)
    if direct != split:  # pragma: no cover
        raise AssertionError(f"tensor valuation {direct} differs from {split}")
    return direct


# ---------------------------------------------------------------------------
# linear metrics from physical potentials


def abs_space(space: FiniteRhoSpace) -> FiniteRhoSpace:
    """Entrywise absolute value of a linear metric: a finite symmetric delta-metric."""
    if not classify(space).linear:
        raise AxiomError("absolute value is taken of linear rho-metrics only")
    return space.with_rho([[ExtReal(abs(v.value)) for v in row] for row in space.rho])


def gravitational_potential(x, k=1) -> Fraction:
    """``k x / (1 + x)`` for the altitude ratio ``x >= 0``; vanishes at the surface."""
    x, k = Fraction(x), Fraction(k)
    if x < 0:
        raise ValueError("altitude must be >= 0")
    if k <= 0:
        raise ValueError("field constant must be positive")
    return k * x / (1 + x)


def _exact_sqrt(q: Fraction) -> Fraction:

    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        raise ValueError(f"norm sqrt({q}) is not rational; choose sample points with rational norm")
    return Fraction(rn, rd)


def gravitational_field_potential(point: Sequence, k=1, r0=1) -> Fraction:
    """Spherical-mass potential in space, shifted to vanish on the sphere of radius ``r0``.

    Exact only for points of rational euclidean norm ``>= r0``.
    """
    k, r0 = Fraction(k), Fraction(r0)
    if k <= 0 or r0 <= 0:
        raise ValueError("k and r0 must be positive")
    r = _exact_sqrt(sum(Fraction(c) ** 2 for c in point))
    if r < r0:
        raise ValueError("sample point lies inside the mass")
    return k - k * r0 / r


def elastic_potential(x, y, lam=1) -> Fraction:
    """``lam (x^2 + y^2)``."""
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("elastic constant must be positive")
    return lam * (Fraction(x) ** 2 + Fraction(y) ** 2)

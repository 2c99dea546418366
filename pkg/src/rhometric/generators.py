"""Seeded random spaces, maps and paths for the property suites."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .closure import min_plus_closure
from .extended_reals import NEG_INF, POS_INF, ZERO, ExtReal
from .paths import PLPath, PLTimeMap, StepPath
from .space import FiniteRhoSpace, PointMap, admissible_constants

__all__ = [
    "random_space",
    "random_delta_space",
    "random_affordable_negative_space",
    "random_partition",
    "random_step_path",
    "random_pl_profile",
    "random_time_map",
    "random_lipschitz_map",
    "labels",
]

_SLACKS = (Fraction(0), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))


def labels(n: int) -> list[str]:
    return [chr(ord("a") + i) for i in range(n)]


def _close(arcs) -> list[list[ExtReal]]:
    dist = min_plus_closure(arcs)
    n = len(dist)
    for i in range(n):
        if not dist[i][i].is_neg_inf:
            dist[i][i] = ZERO
    return dist


def random_space(
    rng: random.Random,
    n: int,
    p_inf: float = 0.25,
    p_neg_inf: float = 0.04,
    potential: bool = True,
) -> FiniteRhoSpace:
    """A valid space obtained by closing random arcs.

    Arcs are ``phi(y) - phi(x) + slack`` for a random potential ``phi``, so
    closed walks cost at least 0 and the closure stays finite, except for
    occasional ``+inf`` (no arc) and ``-inf`` arcs.  Diagonals become 0 unless
    the closure made the point flat.
    """
    phi = [Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2))) if potential else Fraction(0) for _ in range(n)]
    arcs = []
    for i in range(n):
        row = []
        for j in range(n):
            u = rng.random()
            if i == j:
                row.append(POS_INF)
            elif u < p_neg_inf:
                row.append(NEG_INF)
            elif u < p_neg_inf + p_inf:
                row.append(POS_INF)
            else:
                row.append(ExtReal(phi[j] - phi[i] + rng.choice(_SLACKS)))
        arcs.append(row)
    return FiniteRhoSpace(labels(n), _close(arcs))


def random_delta_space(rng: random.Random, n: int, p_inf: float = 0.25) -> FiniteRhoSpace:
    """A random positive space (no potential, no ``-inf``)."""
    return random_space(rng, n, p_inf=p_inf, p_neg_inf=0.0, potential=False)


def random_affordable_negative_space(rng: random.Random, n: int) -> FiniteRhoSpace:
    """Affordable (no ``+inf``) with at least one strictly negative entry; ``n >= 2``."""
    while True:
        X = random_space(rng, n, p_inf=0.0, p_neg_inf=0.0)
        if any(v < ZERO for row in X.rho for v in row):
            return X


def random_partition(rng: random.Random, points: Sequence) -> list[list]:
    blocks = rng.randint(1, len(points))
    groups: list[list] = [[] for _ in range(blocks)]
    for p in points:
        groups[rng.randrange(blocks)].append(p)
    return [g for g in groups if g]


def _switch_times(rng: random.Random, k: int, allow_one: bool = False) -> tuple:
    pool = set()
    while len(pool) < k:
        q = Fraction(rng.randint(1, 24), 24)
        if q < 1 or allow_one:
            pool.add(q)
    return tuple(sorted(pool))


def random_step_path(rng: random.Random, space: FiniteRhoSpace, max_visits: int = 5, start=None) -> StepPath:
    k = rng.randint(1, max_visits)
    visits = [rng.choice(space.points) for _ in range(k)]
    if start is not None:
        visits[0] = start
    return StepPath(space, tuple(visits), _switch_times(rng, k - 1))


def random_pl_profile(rng: random.Random, max_breaks: int = 7, target="rho") -> PLPath:
    m = rng.randint(1, max_breaks)
    inner = sorted({Fraction(rng.randint(1, 47), 48) for _ in range(m - 1)})
    times = (Fraction(0),) + tuple(inner) + (Fraction(1),)
    values = tuple(Fraction(rng.randint(-10, 10), rng.choice((1, 2, 3))) for _ in times)
    return PLPath(times, values, target)


def random_time_map(rng: random.Random, surjective: bool) -> PLTimeMap:
    k = rng.randint(1, 4)
    inner = sorted({Fraction(rng.randint(1, 15), 16) for _ in range(k)})
    times = (Fraction(0),) + tuple(inner) + (Fraction(1),)
    vals = sorted(Fraction(rng.randint(0, 16), 16) for _ in times)
    if surjective:
        vals[0], vals[-1] = Fraction(0), Fraction(1)
    return PLTimeMap(times, tuple(vals))


def random_lipschitz_map(rng: random.Random, X: FiniteRhoSpace, Y: FiniteRhoSpace, tries: int = 40):
    """A random map ``X -> Y`` with some admissible constant, and that constant.

    Falls back to a constant map onto a flat point, or ``None`` if nothing is found.
    """
    for _ in range(tries):
        f = PointMap(X, Y, tuple(rng.randrange(len(Y)) for _ in range(len(X))))
        adm = admissible_constants(f)
        if not adm.empty:
            lam = adm.low if adm.high is None else rng.choice((adm.low, adm.high))
            return f, lam
    flats = [i for i in range(len(Y)) if Y.rho[i][i].is_neg_inf]
    if flats:
        return PointMap(X, Y, (flats[0],) * len(X)), Fraction(1)
    return None

"""Brute-force reference computations.

Each function here recomputes something the main modules compute cleverly,
by the most literal route available (bounded enumeration or dynamic
programming over walk length).  They share no code with the closure kernel.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .extended_reals import NEG_INF, POS_INF, ZERO, esum, esum_all, positive_part
from .space import FiniteRhoSpace, PointMap, lipschitz_status

__all__ = [
    "walk_infimum",
    "reflective_sym_oracle",
    "quotient_chain_oracle",
    "quotient_chain_enumeration",
    "step_valuation_oracle",
    "monotone_segments",
    "pl_ascent_oracle",
    "pl_slope_oracle",
    "count_one_lipschitz",
    "lipschitz_maps_brute",
]


def _minplus(a, b):
    n, m, k = len(a), len(b[0]) if b else 0, len(b)
    return [[min((esum(a[i][t], b[t][j]) for t in range(k)), default=POS_INF) for j in range(m)] for i in range(n)]


def walk_infimum(arcs, max_len: int):
    """Least walk cost with 1..``max_len`` arcs, then ``-inf`` wherever a
    negative closed walk (of at most ``n`` arcs) can be inserted."""
    n = len(arcs)
    power = [list(r) for r in arcs]
    powers = [power]
    best = [list(r) for r in arcs]
    for _ in range(max_len - 1):
        power = _minplus(power, arcs)
        powers.append(power)
        for i in range(n):
            for j in range(n):
                if power[i][j] < best[i][j]:
                    best[i][j] = power[i][j]
    horizon = powers[: max(n, 1)]
    negative = [m for m in range(n) if any(p[m][m] < ZERO for p in horizon)]
    reach = [[i == j or any(p[i][j] < POS_INF for p in horizon) for j in range(n)] for i in range(n)]
    for m in negative:
        for i in range(n):
            for j in range(n):
                if reach[i][m] and reach[m][j]:
                    best[i][j] = NEG_INF
    return best


def reflective_sym_oracle(space: FiniteRhoSpace, max_len: int = 12):
    r = space.rho
    n = len(r)
    low = [[min(r[i][j], r[j][i]) for j in range(n)] for i in range(n)]
    return walk_infimum(low, max_len)


def quotient_chain_oracle(space: FiniteRhoSpace, classes: Sequence[Sequence], max_steps: int | None = None):
    """Quotient values by dynamic programming over chains of metric steps.

    ``f_1 = rho`` and ``f_{k+1}(x, y) = min over w ~ z of f_k(x, w) + rho(z, y)``;
    the class value is the least ``f_k`` over members, with ``-inf`` when a
    class admits a negative closed chain reachable in between.
    """
    n = len(space)
    r = space.rho
    owner = {}
    for c, members in enumerate(classes):
        for p in members:
            owner[space.index(p)] = c
    m = len(classes)
    steps = max_steps if max_steps is not None else 2 * n
    f = [list(row) for row in r]
    layers = [f]
    for _ in range(steps - 1):
        g = [[POS_INF] * n for _ in range(n)]
        for x in range(n):
            for w in range(n):
                fw = f[x][w]
                if fw.is_pos_inf:
                    continue
                for z in range(n):
                    if owner[z] != owner[w]:
                        continue
                    for y in range(n):
                        c = esum(fw, r[z][y])
                        if c < g[x][y]:
                            g[x][y] = c
        f = g
        layers.append(f)
    value = [[POS_INF] * m for _ in range(m)]
    for layer in layers:
        for x in range(n):
            for y in range(n):
                if layer[x][y] < value[owner[x]][owner[y]]:
                    value[owner[x]][owner[y]] = layer[x][y]
    short = layers[: max(n, 1)]
    negative = [c for c in range(m) if any(
        layer[x][y] < ZERO for layer in short for x in range(n) for y in range(n)
        if owner[x] == c and owner[y] == c)]
    reach = [[a == b or any(
        layer[x][y] < POS_INF for layer in short for x in range(n) for y in range(n)
        if owner[x] == a and owner[y] == b) for b in range(m)] for a in range(m)]
    for c in negative:
        for a in range(m):
            for b in range(m):
                if reach[a][c] and reach[c][b]:
                    value[a][b] = NEG_INF
    return value


def quotient_chain_enumeration(space: FiniteRhoSpace, classes: Sequence[Sequence], max_steps: int):
    """Literal enumeration of every chain with up to ``max_steps`` metric steps (tiny inputs only)."""
    n = len(space)
    r = space.rho
    owner = {}
    for c, members in enumerate(classes):
        for p in members:
            owner[space.index(p)] = c
    m = len(classes)
    value = [[POS_INF] * m for _ in range(m)]
    for k in range(1, max_steps + 1):
        for chain in itertools.product(range(n), repeat=2 * k):
            if any(owner[chain[2 * j + 1]] != owner[chain[2 * j + 2]] for j in range(k - 1)):
                continue
            total = esum_all(r[chain[2 * j]][chain[2 * j + 1]] for j in range(k))
            a, b = owner[chain[0]], owner[chain[-1]]
            if total < value[a][b]:
                value[a][b] = total
    return value


def _pieces(switches: Sequence[Fraction]) -> int:
    return len(switches) + 1


def step_valuation_oracle(space: FiniteRhoSpace, visits: Sequence, switches: Sequence, extra: int = 2, positive: bool = False):
    """Supremum over partitions, enumerated as nondecreasing sequences of piece indices.

    A partition ``0 = t_0 <= ... <= t_k = 1`` only matters through the piece of
    each ``t_j``; it starts in piece 0 and ends in the last piece.  Sequences of
    up to ``pieces + extra`` points are tried, so pieces may be skipped or
    sampled repeatedly.
    """
    idx = [space.index(x) for x in visits]
    r = space.rho
    cost = (lambda a, b: positive_part(r[a][b])) if positive else (lambda a, b: r[a][b])
    last = _pieces(switches) - 1
    best = None
    for length in range(2, last + 2 + extra):
        for inner in itertools.combinations_with_replacement(range(last + 1), length - 2):
            seq = (0,) + inner + (last,)
            total = esum_all(cost(idx[seq[j]], idx[seq[j + 1]]) for j in range(len(seq) - 1))
            if best is None or total > best:
                best = total
    return best


def monotone_segments(values: Sequence) -> list[tuple[Fraction, Fraction]]:
    """Maximal monotone runs of a profile as ``(start, end)`` altitude pairs."""
    ys = [Fraction(v) for v in values]
    ys = [y for k, y in enumerate(ys) if k == 0 or y != ys[k - 1]]
    if len(ys) < 2:
        return []
    runs = []
    start = 0
    for k in range(1, len(ys) - 1):
        if (ys[k] - ys[k - 1]) * (ys[k + 1] - ys[k]) < 0:
            runs.append((ys[start], ys[k]))
            start = k
    runs.append((ys[start], ys[-1]))
    return runs


def pl_ascent_oracle(values: Sequence) -> tuple[Fraction, Fraction]:
    """Total ascent and total descent as sums over the maximal monotone runs."""
    up = sum((b - a for a, b in monotone_segments(values) if b > a), Fraction(0))
    down = sum((a - b for a, b in monotone_segments(values) if b < a), Fraction(0))
    return up, down


def pl_slope_oracle(times: Sequence, values: Sequence) -> Fraction:
    """Largest difference quotient over all breakpoint pairs ``t < t'`` (at least 0)."""
    best = Fraction(0)
    for i, j in itertools.combinations(range(len(times)), 2):
        q = (Fraction(values[j]) - Fraction(values[i])) / (Fraction(times[j]) - Fraction(times[i]))
        best = max(best, q)
    return best


def lipschitz_maps_brute(X: FiniteRhoSpace, Z: FiniteRhoSpace):
    """Every 1-Lipschitz map as a :class:`PointMap`, by filtering all assignments."""
    return [
        f
        for a in itertools.product(range(len(Z)), repeat=len(X))
        if lipschitz_status(f := PointMap(X, Z, a), 1)
    ]


def count_one_lipschitz(X: FiniteRhoSpace, Z: FiniteRhoSpace) -> int:
    return len(lipschitz_maps_brute(X, Z))

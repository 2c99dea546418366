"""Min-plus closure over the extended reals with negative-cycle semantics.

Shared by quotients and the reflective symmetrization.  Arcs are the entries of
a square matrix; ``+inf`` means "no arc" and ``-inf`` behaves as an arc that is
already an arbitrarily negative cycle.
"""

from __future__ import annotations

from typing import Sequence

from .extended_reals import NEG_INF, POS_INF, ExtReal, ZERO

Matrix = Sequence[Sequence[ExtReal]]


def min_plus_closure(arcs: Matrix, with_successors: bool = False):
    """Infimum of arc sums over all walks with at least one arc.

    Floyd-Warshall on the exact values, then every pair that can route through
    a node lying on a negative closed walk is sent to ``-inf``.  Values of the
    remaining pairs are the exact shortest walk costs.

    With ``with_successors`` a second matrix is returned giving, for finite
    results, the next node on a minimising walk (``None`` otherwise).
    """
    n = len(arcs)
    dist = [list(row) for row in arcs]
    succ = None
    if with_successors:
        succ = [[j if dist[i][j] < POS_INF else None for j in range(n)] for i in range(n)]
    for k in range(n):
        row_k = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik.is_pos_inf:
                continue
            row_i = dist[i]
            for j in range(n):
                dkj = row_k[j]
                if dkj.is_pos_inf:
                    continue
                cand = dik + dkj
                if cand < row_i[j]:
                    row_i[j] = cand
                    if succ is not None:
                        succ[i][j] = succ[i][k]
    negative = [k for k in range(n) if dist[k][k] < ZERO]
    if negative:
        reach = [[not dist[i][j].is_pos_inf for j in range(n)] for i in range(n)]
        for k in negative:
            into = [i for i in range(n) if reach[i][k]]
            outof = [j for j in range(n) if reach[k][j]]
            for i in into:
                for j in outof:
                    dist[i][j] = NEG_INF
    if succ is not None:
        for i in range(n):
            for j in range(n):
                if not dist[i][j].is_finite:
                    succ[i][j] = None
        return dist, succ
    return dist


def walk_from_successors(succ, i: int, j: int) -> list[int]:
    """Node sequence ``i, ..., j`` of the minimising walk recorded by the closure."""
    if succ[i][j] is None:
        raise ValueError(f"no finite minimising walk from {i} to {j}")
    walk = [i]
    cur = i
    # at least one arc, so the loop runs even when i == j
    while True:
        nxt = succ[cur][j]
        walk.append(nxt)
        cur = nxt
        if cur == j:
            break
        if len(walk) > len(succ) + 1:  # pragma: no cover - defensive
            raise RuntimeError("successor table does not terminate")
    return walk

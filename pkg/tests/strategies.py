"""Hypothesis strategies shared by the test modules."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from rhometric.closure import min_plus_closure
from rhometric.extended_reals import NEG_INF, POS_INF, ZERO, ExtReal
from rhometric.space import FiniteRhoSpace, PointMap

SAMPLE = (NEG_INF, ExtReal(-2), ExtReal(-1), ZERO, ExtReal(Fraction(1, 2)), ExtReal(1), ExtReal(3), POS_INF)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def ext_reals(draw, finite_only: bool = False) -> ExtReal:
    if not finite_only and draw(st.integers(0, 5)) == 0:
        return draw(st.sampled_from((NEG_INF, POS_INF)))
    return ExtReal(draw(rationals))


@st.composite
def weights(draw) -> ExtReal:
    if draw(st.integers(0, 5)) == 0:
        return POS_INF
    return ExtReal(draw(st.fractions(min_value=0, max_value=20, max_denominator=6)))


def close_arcs(arcs) -> list[list[ExtReal]]:
    dist = min_plus_closure(arcs)
    for i in range(len(dist)):
        if not dist[i][i].is_neg_inf:
            dist[i][i] = ZERO
    return dist


@st.composite
def spaces(draw, min_points: int = 1, max_points: int = 4, positive: bool = False, affordable: bool = False,
           flats: bool = True) -> FiniteRhoSpace:
    """Valid spaces: random arcs over a potential, closed under the triangle inequality."""
    n = draw(st.integers(min_points, max_points))
    phi = [Fraction(0) if positive else draw(st.fractions(-3, 3, max_denominator=2)) for _ in range(n)]
    slack = st.sampled_from((Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2)))
    kinds = ["fin", "fin", "fin"]
    if not affordable:
        kinds.append("inf")
    if flats and not positive:
        kinds.append("neg")
    arcs = []
    for i in range(n):
        row = []
        for j in range(n):
            kind = "inf" if i == j else draw(st.sampled_from(kinds))
            if kind == "inf":
                row.append(POS_INF)
            elif kind == "neg":
                row.append(NEG_INF)
            else:
                row.append(ExtReal(phi[j] - phi[i] + draw(slack)))
        arcs.append(row)
    return FiniteRhoSpace([f"p{i}" for i in range(n)], close_arcs(arcs))


@st.composite
def maps_between(draw, source: FiniteRhoSpace, target: FiniteRhoSpace) -> PointMap:
    return PointMap(source, target, tuple(draw(st.integers(0, len(target) - 1)) for _ in source.points))

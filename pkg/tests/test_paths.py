from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from rhometric.extended_reals import NEG_INF, POS_INF, ZERO, esum, scale
from rhometric.oracles import pl_ascent_oracle, pl_slope_oracle, step_valuation_oracle
from rhometric.paths import (
    LineKind,
    PLPath,
    PLTimeMap,
    StepPath,
    abs_space,
    concat,
    elastic_potential,
    gravitational_field_potential,
    gravitational_potential,
    grid_line,
    map_path,
    pl_lipschitz_weight,
    pl_valuation,
    reparametrize,
    step_lipschitz_weight,
    step_valuation,
    tensor_path_valuation,
)
from rhometric.space import (
    AxiomError,
    FiniteRhoSpace,
    NotLipschitz,
    PointMap,
    StructuralError,
    classify,
    lipschitz_status,
    potential_space,
)
from strategies import maps_between, spaces

H = Fraction(1, 2)


# -- strategies ------------------------------------------------------------------


@st.composite
def step_paths(draw, space: FiniteRhoSpace, start=None, max_visits: int = 5) -> StepPath:
    k = draw(st.integers(1, max_visits))
    visits = [draw(st.sampled_from(space.points)) for _ in range(k)]
    if start is not None:
        visits[0] = start
    cuts = sorted(draw(st.sets(st.integers(1, 23), min_size=k - 1, max_size=k - 1)))
    return StepPath(space, tuple(visits), tuple(Fraction(c, 24) for c in cuts))


@st.composite
def pl_paths(draw, target: LineKind = LineKind.RHO) -> PLPath:
    inner = sorted(draw(st.sets(st.integers(1, 47), max_size=6)))
    times = (Fraction(0),) + tuple(Fraction(t, 48) for t in inner) + (Fraction(1),)
    values = tuple(draw(st.fractions(-10, 10, max_denominator=3)) for _ in times)
    return PLPath(times, values, target)


@st.composite
def time_maps(draw, surjective: bool) -> PLTimeMap:
    inner = sorted(draw(st.sets(st.integers(1, 15), max_size=4)))
    times = (Fraction(0),) + tuple(Fraction(t, 16) for t in inner) + (Fraction(1),)
    values = sorted(Fraction(draw(st.integers(0, 16)), 16) for _ in times)
    if surjective:
        values[0], values[-1] = Fraction(0), Fraction(1)
    return PLTimeMap(times, tuple(values))


# -- lines ---------------------------------------------------------------------------


def test_grid_lines():
    R = grid_line(LineKind.RHO, range(3))
    assert R.d(0, 2) == 2 and R.d(2, 0) == -2
    assert grid_line(LineKind.DELTA, range(2)).d(1, 0) == POS_INF
    assert grid_line(LineKind.DELTA0, range(2)).d(1, 0) == ZERO
    assert grid_line("rho", [H, 1]).points == (H, 1)


def test_grid_values_must_increase():
    with pytest.raises(StructuralError):
        grid_line(LineKind.RHO, [0, 2, 1])


# -- step paths ------------------------------------------------------------------------


def test_step_path_structure():
    X = FiniteRhoSpace("ab", [[0, 1], [2, 0]])
    p = StepPath(X, ("a", "b"), (H,))
    assert p.at(0) == "a" and p.at(H) == "b" and p.at(1) == "b"
    with pytest.raises(StructuralError):
        StepPath(X, ("a", "b"), ())
    with pytest.raises(StructuralError):
        StepPath(X, ("a", "b", "a"), (H, H))
    with pytest.raises(StructuralError):
        StepPath(X, ("a", "z"), (H,))


def test_constant_paths_value_the_diagonal():
    X = FiniteRhoSpace("ab", [[0, NEG_INF], [POS_INF, NEG_INF]])
    assert step_valuation(StepPath.constant(X, "a")).v == ZERO
    assert step_valuation(StepPath.constant(X, "b")).v == NEG_INF


def test_two_step_path_attains_the_supremum_at_its_visits():
    X = FiniteRhoSpace("abc", [[0, 1, 4], [1, 0, 3], [2, 3, 0]])
    p = StepPath(X, ("a", "b", "c"), (Fraction(1, 3), Fraction(2, 3)))
    assert step_valuation(p).v == 4
    assert step_valuation_oracle(X, p.visits, p.switches, extra=3) == 4


@given(spaces(max_points=4), st.data())
def test_step_valuation_matches_partition_oracle(X, data):
    p = data.draw(step_paths(X))
    assert step_valuation(p).v == step_valuation_oracle(X, p.visits, p.switches)


@given(spaces(max_points=4), st.data())
def test_ascent_matches_positive_partition_oracle(X, data):
    p = data.draw(step_paths(X))
    assert step_valuation(p).v_plus == step_valuation_oracle(X, p.visits, p.switches, positive=True)


@given(spaces(max_points=4), st.data())
def test_report_conventions(X, data):
    r = step_valuation(data.draw(step_paths(X)))
    assert r.v <= r.v_plus
    if r.v.is_pos_inf:
        assert r.v_minus is None and r.as_dict()["v_minus"] == "undefined"
    elif r.v.is_neg_inf or r.v_plus.is_pos_inf:
        assert r.v_minus == POS_INF
    else:
        assert r.v == r.v_plus.value - r.v_minus.value


def test_step_lipschitz_weight_examples():
    R = grid_line(LineKind.DELTA, range(4))
    assert step_lipschitz_weight(StepPath.constant(R, 2)) == ZERO
    # adjacent pieces with a positive jump admit no finite constant
    assert step_lipschitz_weight(StepPath(R, (0, 1), (H,))) == POS_INF
    # non-adjacent pieces: cost 3 across a middle piece of length 1/2
    X = FiniteRhoSpace("abc", [[0, 0, 3], [0, 0, 0], [0, 0, 0]])
    assert step_lipschitz_weight(StepPath(X, ("a", "b", "c"), (Fraction(1, 4), Fraction(3, 4)))) == 6


# -- PL paths ---------------------------------------------------------------------------


def test_fixed_profile():
    r = pl_valuation(PLPath.profile((0, 3, 1, 2)))
    assert (r.v, r.v_plus, r.v_minus, r.total_variation) == (2, 4, 2, 6)
    assert pl_ascent_oracle((0, 3, 1, 2)) == (4, 2)


def test_increasing_profile():
    r = pl_valuation(PLPath.profile((1, 2, 5)))
    assert r.v == r.v_plus == 4 and r.v_minus == ZERO


def test_slope_examples():
    p = PLPath((0, H, 1), (0, 1, Fraction(-3, 2)))
    assert p.slopes() == [2, -5]
    assert pl_lipschitz_weight(p) == 2
    assert pl_lipschitz_weight(p.retarget(LineKind.DELTA)) == POS_INF
    assert pl_valuation(p.retarget(LineKind.DELTA)).v == POS_INF
    assert pl_valuation(p.retarget(LineKind.DELTA)).v_minus is None


def test_up_then_down():
    up, down = PLPath.profile((0, 3)), PLPath.profile((3, 1))
    assert pl_valuation(concat(up, down)).v == 1


@given(pl_paths())
def test_profile_identities(p):
    r, rs = pl_valuation(p), pl_valuation(p.reversed())
    up, down = pl_ascent_oracle(p.values)
    assert r.v == p.values[-1] - p.values[0]
    assert rs.v == -r.v.value
    assert r.v_minus == rs.v_plus
    assert r.v_plus == up and r.v_minus == down
    assert r.v == r.v_plus.value - r.v_minus.value
    assert r.total_variation == r.v_plus.value + r.v_minus.value


@given(pl_paths(), st.sampled_from(list(LineKind)))
def test_valuation_below_weight(p, kind):
    q = p.retarget(kind)
    r = pl_valuation(q)
    assert r.v <= r.lipschitz_weight
    if kind is not LineKind.DELTA:
        assert r.lipschitz_weight == max(pl_slope_oracle(q.times, q.values), 0)


@given(pl_paths())
def test_pl_valuation_matches_sampled_grid(p):
    # sampling breakpoints and midpoints as a step path on the grid recovers the analytic values
    mids = {(a + b) / 2 for a, b in zip(p.times, p.times[1:])}
    ts = sorted(set(p.times) | mids)
    ys = [p.at(t) for t in ts]
    R = grid_line(LineKind.RHO, sorted(set(ys)))
    walk = StepPath(R, tuple(ys), tuple(ts[1:]))
    r, rw = pl_valuation(p), step_valuation(walk)
    assert (r.v, r.v_plus, r.v_minus) == (rw.v, rw.v_plus, rw.v_minus)


# -- operations ---------------------------------------------------------------------------


@given(spaces(max_points=4), st.data())
def test_concat_with_constant_end(X, data):
    p = data.draw(step_paths(X))
    if X.d(p.end, p.end) == ZERO:
        assert step_valuation(concat(p, StepPath.constant(X, p.end))).v == step_valuation(p).v


@given(spaces(max_points=4), st.data())
def test_concat_is_additive(X, data):
    a = data.draw(step_paths(X))
    b = data.draw(step_paths(X, start=a.end))
    assert step_valuation(concat(a, b)).v == esum(step_valuation(a).v, step_valuation(b).v)


@given(pl_paths(), pl_paths())
def test_pl_concat_is_additive(p, q):
    q = PLPath(q.times, (p.values[-1],) + q.values[1:])
    assert pl_valuation(concat(p, q)).v == pl_valuation(p).v.value + pl_valuation(q).v.value


def test_concat_absorbs_flat_points():
    X = FiniteRhoSpace("ab", [[0, NEG_INF], [POS_INF, NEG_INF]])
    a = StepPath(X, ("a", "b"), (H,))
    assert step_valuation(concat(a, StepPath.constant(X, "b"))).v == NEG_INF
    # +inf still wins over -inf
    assert step_valuation(concat(a, StepPath(X, ("b", "a"), (H,)))).v == POS_INF


def test_concat_needs_matching_ends():
    X = FiniteRhoSpace("ab", [[0, 1], [1, 0]])
    with pytest.raises(StructuralError):
        concat(StepPath.constant(X, "a"), StepPath.constant(X, "b"))
    with pytest.raises(TypeError):
        concat(StepPath.constant(X, "a"), PLPath.profile((0, 1)))


@given(spaces(max_points=4), st.data())
def test_identity_reparametrization(X, data):
    p = data.draw(step_paths(X))
    assert reparametrize(p, PLTimeMap((0, 1), (0, 1))) == p


def test_doubling_then_clamping():
    X = FiniteRhoSpace("abc", [[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    p = StepPath(X, ("a", "b", "c"), (Fraction(1, 4), Fraction(1, 2)))
    phi = PLTimeMap((0, H, 1), (0, 1, 1))
    assert phi.surjective
    q = reparametrize(p, phi)
    assert q.switches == (Fraction(1, 8), Fraction(1, 4))
    assert step_valuation(q).v == step_valuation(p).v


@given(spaces(max_points=4), time_maps(surjective=True), st.data())
def test_surjective_reparametrization_preserves_value(X, phi, data):
    p = data.draw(step_paths(X))
    assert step_valuation(reparametrize(p, phi)).v == step_valuation(p).v


@given(spaces(max_points=4), time_maps(surjective=False), st.data())
def test_partial_reparametrization_preserves_finiteness(X, phi, data):
    p = data.draw(step_paths(X))
    if step_valuation(p).v < POS_INF:
        assert step_valuation(reparametrize(p, phi)).v < POS_INF


@given(spaces(max_points=4, positive=True), time_maps(surjective=False), st.data())
def test_partial_reparametrization_lowers_positive_value(X, phi, data):
    p = data.draw(step_paths(X))
    assert step_valuation(reparametrize(p, phi)).v <= step_valuation(p).v


@given(spaces(max_points=4), st.data())
def test_step_value_below_weight(X, data):
    r = step_valuation(data.draw(step_paths(X)))
    assert r.v <= r.lipschitz_weight


@given(spaces(max_points=4), st.data())
def test_identity_map_keeps_the_path(X, data):
    p = data.draw(step_paths(X))
    assert map_path(PointMap(X, X, tuple(range(len(X)))), 1, p) == p


@given(spaces(max_points=4, positive=True), st.data())
def test_collapse_to_a_regular_point(X, data):
    p = data.draw(step_paths(X))
    Y = FiniteRhoSpace("o", [[0]])
    image = map_path(PointMap(X, Y, (0,) * len(X)), 1, p)
    assert step_valuation(image).v == ZERO


@given(spaces(max_points=4), spaces(max_points=3), st.data())
def test_lipschitz_maps_scale_valuations(X, Y, data):
    f = data.draw(maps_between(X, Y))
    lam = data.draw(st.sampled_from((Fraction(0), H, Fraction(1), Fraction(3))))
    assume(lipschitz_status(f, lam))
    p = data.draw(step_paths(X))
    image = map_path(f, lam, p)
    assert step_valuation(image).v <= scale(lam, step_valuation(p).v)


def test_map_path_rejects_non_lipschitz_maps():
    D = grid_line(LineKind.DELTA, range(2))
    with pytest.raises(NotLipschitz):
        map_path(PointMap(D, D, (1, 0)), 1, StepPath.constant(D, 0))


@given(spaces(max_points=3), spaces(max_points=3), st.data())
def test_tensor_paths_add_valuations(X, Y, data):
    a, b = data.draw(step_paths(X, max_visits=3)), data.draw(step_paths(Y, max_visits=3))
    assert tensor_path_valuation(a, b) == esum(step_valuation(a).v, step_valuation(b).v)


def test_tensor_path_examples():
    X = FiniteRhoSpace("ab", [[0, 2], [-1, 0]])
    Y = FiniteRhoSpace("uv", [[0, 3], [1, 0]])
    a = StepPath(X, ("a", "b"), (H,))
    assert tensor_path_valuation(a, StepPath.constant(Y, "u")) == 2
    assert tensor_path_valuation(a, StepPath(Y, ("u", "v"), (Fraction(1, 3),))) == 5
    F = FiniteRhoSpace("f", [[NEG_INF]])
    assert tensor_path_valuation(a, StepPath.constant(F, "f")) == NEG_INF


# -- linear targets ---------------------------------------------------------------------


@st.composite
def potential_spaces(draw) -> tuple:
    n = draw(st.integers(1, 5))
    labels = [f"x{i}" for i in range(n)]
    phi = {p: draw(st.fractions(-6, 6, max_denominator=2)) for p in labels}
    return potential_space(labels, phi), phi


@given(potential_spaces(), st.data())
def test_step_paths_in_potential_spaces(pair, data):
    X, phi = pair
    p = data.draw(step_paths(X))
    r, rs = step_valuation(p), step_valuation(p.reversed())
    assert r.v == phi[p.end] - phi[p.start]
    assert rs.v == -r.v.value and r.v_minus == rs.v_plus
    assert r.total_variation == r.v_plus.value + r.v_minus.value


@given(potential_spaces(), st.data())
def test_absolute_value_space(pair, data):
    X, _ = pair
    A = abs_space(X)
    prof = classify(A)
    assert A.is_valid and prof.symmetric and prof.finite_valued and prof.positive
    p = data.draw(step_paths(X))
    moved = StepPath(A, p.visits, p.switches)
    assert step_valuation(moved).v == step_valuation(p).total_variation


def test_absolute_value_needs_linear():
    with pytest.raises(AxiomError):
        abs_space(FiniteRhoSpace("ab", [[0, 1], [1, 0]]))


def test_gravitational_potential():
    assert gravitational_potential(0) == 0
    assert gravitational_potential(1) - gravitational_potential(0) == H
    assert gravitational_potential(1, k=4) == 2
    with pytest.raises(ValueError):
        gravitational_potential(-1)


def test_gravitational_field_in_space():
    assert gravitational_field_potential((1, 0, 0)) == 0
    assert gravitational_field_potential((0, 3, 4), k=5) == 4
    with pytest.raises(ValueError):
        gravitational_field_potential((1, 1, 0))


def test_elastic_potential():
    for lam in (1, 3, H):
        assert elastic_potential(1, 1, lam) - elastic_potential(0, 0, lam) == 2 * Fraction(lam)
    pts = list(itertools.product(range(-1, 2), repeat=2))
    X = potential_space(pts, lambda p: elastic_potential(*p))
    assert classify(X).linear

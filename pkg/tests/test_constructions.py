from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rhometric.constructions import (
    EquivRelation,
    coproduct,
    curry,
    delta_singleton,
    empty_space,
    equalizer,
    exponential,
    one_lipschitz_maps,
    product,
    quotient,
    tensor,
    terminal,
    uncurry,
)
from rhometric.extended_reals import NEG_INF, POS_INF, ZERO, ExtReal
from rhometric.oracles import count_one_lipschitz, quotient_chain_enumeration, quotient_chain_oracle
from rhometric.paths import LineKind, grid_line
from rhometric.space import (
    CapExceeded,
    FiniteRhoSpace,
    PointMap,
    StructuralError,
    chaotic,
    classify,
    discrete,
    entrywise_leq,
    lipschitz_status,
    scale_space,
)
from strategies import close_arcs, maps_between, spaces


def _rows(space):
    return [list(r) for r in space.rho]


def _all_maps(source, target):
    return [PointMap(source, target, a) for a in itertools.product(range(len(target)), repeat=len(source))]


def _one_lip(f):
    return lipschitz_status(f, 1)


# -- products ------------------------------------------------------------------


def test_product_with_terminal_keeps_metric():
    X = FiniteRhoSpace("ab", [[0, 1], [4, 0]])
    P = product([X, terminal()])
    assert P.points == (("a", "*"), ("b", "*"))
    assert _rows(P) == _rows(X)


def test_product_of_delta_and_rho_grids():
    n = 4
    P = product([grid_line(LineKind.DELTA, range(n)), grid_line(LineKind.RHO, range(n))])
    for (x, y), (x2, y2) in itertools.product(P.points, repeat=2):
        want = POS_INF if x > x2 else ExtReal(max(x2 - x, y2 - y))
        assert P.d((x, y), (x2, y2)) == want


def test_product_of_two_point_spaces_by_enumeration():
    X = FiniteRhoSpace("ab", [[0, 1], [-1, 0]])
    Y = FiniteRhoSpace("uv", [[0, 3], [POS_INF, 0]])
    P = product([X, Y])
    for (x, y), (x2, y2) in itertools.product(P.points, repeat=2):
        assert P.d((x, y), (x2, y2)) == max(X.d(x, x2), Y.d(y, y2))


def test_empty_product_is_terminal():
    assert product([]) == terminal()


def test_terminal_is_not_the_tensor_unit():
    assert terminal() != delta_singleton()
    assert tensor([]) == delta_singleton()


@given(spaces(max_points=3))
def test_maps_from_terminal_land_on_flat_points(Y):
    for f in _all_maps(terminal(), Y):
        assert _one_lip(f) == Y.rho[f.assignment[0]][f.assignment[0]].is_neg_inf


@settings(max_examples=30)
@given(spaces(max_points=2), spaces(max_points=2), spaces(max_points=2))
def test_product_universal_property(W, X, Y):
    P = product([X, Y])
    for a in itertools.product(range(len(P)), repeat=len(W)):
        pair = PointMap(W, P, a)
        first = PointMap(W, X, tuple(X.index(P.points[i][0]) for i in a))
        second = PointMap(W, Y, tuple(Y.index(P.points[i][1]) for i in a))
        assert _one_lip(pair) == (_one_lip(first) and _one_lip(second))
    for k, F in enumerate((X, Y)):
        assert _one_lip(PointMap.from_labels(P, F, lambda p: p[k]))


# -- sums ------------------------------------------------------------------------


def test_sum_examples():
    assert coproduct([]) == empty_space()
    X = FiniteRhoSpace("ab", [[0, 1], [4, 0]])
    S = coproduct([X])
    assert _rows(S) == _rows(X)
    two = coproduct([discrete("a"), discrete("b")])
    assert _rows(two) == [[ZERO, POS_INF], [POS_INF, ZERO]]


@settings(max_examples=30)
@given(spaces(max_points=2), spaces(max_points=2), spaces(max_points=2))
def test_sum_universal_property(X, Y, Z):
    S = coproduct([X, Y])
    for a in itertools.product(range(len(Z)), repeat=len(S)):
        copair = PointMap(S, Z, a)
        left = PointMap(X, Z, a[: len(X)])
        right = PointMap(Y, Z, a[len(X):])
        assert _one_lip(copair) == (_one_lip(left) and _one_lip(right))


# -- equalizers --------------------------------------------------------------------


def test_equalizer_examples():
    X = FiniteRhoSpace("abc", [[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    Y = discrete("uv")
    f = PointMap(X, Y, (0, 1, 0))
    sub, inc = equalizer(f, f)
    assert sub == X
    g = PointMap(X, Y, (1, 0, 1))
    sub, inc = equalizer(f, g)
    assert len(sub) == 0


@settings(max_examples=30)
@given(spaces(max_points=3), spaces(max_points=2), spaces(max_points=2), st.data())
def test_equalizer_universal_property(X, Y, W, data):
    f = data.draw(maps_between(X, Y))
    g = data.draw(maps_between(X, Y))
    sub, inc = equalizer(f, g)
    assert sub.is_valid and _one_lip(inc)
    for h in _all_maps(W, X):
        equalized = all(f.assignment[i] == g.assignment[i] for i in h.assignment)
        if not equalized:
            continue
        factor = PointMap.from_labels(W, sub, h)
        assert _one_lip(factor) == _one_lip(h)


# -- quotients ---------------------------------------------------------------------


def test_identity_quotient_returns_the_space():
    X = FiniteRhoSpace("abc", [[0, 1, 3], [2, 0, 2], [POS_INF, POS_INF, 0]])
    assert quotient(X, EquivRelation.identity(X)).space == X


def test_rho_grid_with_ends_glued_is_chaotic():
    R = grid_line(LineKind.RHO, range(4))
    Q = quotient(R, EquivRelation([[0, 3], [1], [2]])).space
    assert all(v.is_neg_inf for row in Q.rho for v in row)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_delta_grid_quotient_matches_chain_enumeration(n):
    D = grid_line(LineKind.DELTA, range(n))
    classes = [[0, n - 1]] + [[i] for i in range(1, n - 1)]
    res = quotient(D, EquivRelation(classes))
    assert classify(res.space).positive
    assert _rows(res.space) == quotient_chain_enumeration(D, classes, 2 if n == 5 else 3)
    assert _rows(res.space) == quotient_chain_oracle(D, classes, 2 * n)
    # from the glued end a step back costs 1 through the far end
    assert res.space.d(1, (0, n - 1)) == n - 2


@given(spaces(max_points=5))
def test_quotient_matches_chain_oracle(X):
    for classes in ([[p] for p in X.points], [list(X.points)], [list(X.points[::2]), list(X.points[1::2])]):
        classes = [c for c in classes if c]
        res = quotient(X, EquivRelation(classes))
        assert res.space.is_valid
        assert _rows(res.space) == quotient_chain_oracle(X, classes)


def test_tiny_quotients_match_literal_enumeration():
    X = FiniteRhoSpace("abc", close_arcs([[POS_INF, ExtReal(2), ExtReal(1)], [ExtReal(-1), POS_INF, ExtReal(3)], [ExtReal(5), POS_INF, POS_INF]]))
    assert X.is_valid
    classes = [["a", "c"], ["b"]]
    assert _rows(quotient(X, EquivRelation(classes)).space) == quotient_chain_enumeration(X, classes, 3)


@given(spaces(max_points=4))
def test_quotient_witnesses_attain_the_value(X):
    classes = [list(X.points[:2]), list(X.points[2:])]
    classes = [c for c in classes if c]
    res = quotient(X, EquivRelation(classes))
    for (a, b), w in res.witnesses.items():
        assert w.total == res.space.rho[a][b]
        assert w.total.is_finite
        assert w.render().endswith(str(w.total.value))


@settings(max_examples=30)
@given(spaces(max_points=3), spaces(max_points=2), st.data())
def test_quotient_universal_property(X, Z, data):
    classes = [list(X.points[:1]), list(X.points[1:])]
    classes = [c for c in classes if c]
    res = quotient(X, EquivRelation(classes))
    assert _one_lip(res.projection)
    for h in _all_maps(res.space, Z):
        lifted = PointMap(X, Z, tuple(h.assignment[c] for c in res.projection.assignment))
        assert _one_lip(h) == _one_lip(lifted)


def test_relation_must_partition():
    X = discrete("abc")
    with pytest.raises(StructuralError):
        quotient(X, EquivRelation([["a", "b"]]))
    with pytest.raises(StructuralError):
        quotient(X, EquivRelation([["a", "b"], ["b", "c"]]))


def test_relation_from_pairs():
    X = discrete("abcd")
    rel = EquivRelation.from_pairs(X, [("a", "c"), ("c", "d")])
    assert sorted(map(sorted, rel.classes)) == [["a", "c", "d"], ["b"]]


# -- tensor products ---------------------------------------------------------------


@given(spaces())
def test_tensor_unit(X):
    T = tensor([X, delta_singleton()])
    assert _rows(T) == _rows(X)


@given(spaces(affordable=True))
def test_tensor_with_terminal_is_chaotic(X):
    T = tensor([X, terminal()])
    assert T == chaotic(T.points)


@given(spaces(max_points=3, positive=True), spaces(max_points=3, positive=True))
def test_delta_tensor_between_product_and_twice_product(X, Y):
    P, T = product([X, Y]), tensor([X, Y])
    assert entrywise_leq(P, T) and entrywise_leq(T, scale_space(2, P))


@given(spaces(max_points=3), spaces(max_points=3))
def test_tensor_below_twice_product(X, Y):
    T = tensor([X, Y])
    assert T.is_valid
    assert entrywise_leq(T, scale_space(2, product([X, Y])))


def test_unit_times_terminal_reverses_the_inequality():
    P = product([delta_singleton(), terminal()])
    T = tensor([delta_singleton(), terminal()])
    assert _rows(P) == [[ZERO]] and _rows(T) == [[NEG_INF]]
    assert not entrywise_leq(P, T)


def test_caps_are_enforced():
    X = discrete(range(10))
    with pytest.raises(CapExceeded):
        product([X, X], cap=50)
    with pytest.raises(CapExceeded):
        tensor([X, X, X], cap=999)
    with pytest.raises(CapExceeded):
        exponential(discrete("abcd"), discrete(range(6)), cap=100)


# -- exponentials --------------------------------------------------------------------


@given(spaces(max_points=3))
def test_exponential_of_unit(Z):
    E = exponential(delta_singleton(), Z)
    assert [p[0] for p in E.points] == list(Z.points)
    assert _rows(E) == _rows(Z)


@given(spaces(max_points=3))
def test_exponential_of_terminal_is_flat_part(Z):
    E = exponential(terminal(), Z)
    flats = [p for i, p in enumerate(Z.points) if Z.rho[i][i].is_neg_inf]
    assert [p[0] for p in E.points] == flats
    assert all(E.d((a,), (b,)) == Z.d(a, b) for a in flats for b in flats)


def test_exponential_discrete_two_by_two():
    Y = discrete("ab")
    Z = FiniteRhoSpace("uv", [[0, 2], [-1, 0]])
    E = exponential(Y, Z)
    assert len(E) == 4
    for f, g in itertools.product(E.points, repeat=2):
        assert E.d(f, g) == max(Z.d(f[0], g[0]), Z.d(f[1], g[1]))


@given(spaces(max_points=2), spaces(max_points=3))
def test_exponential_points_are_the_one_lipschitz_maps(Y, Z):
    E = exponential(Y, Z)
    assert E.is_valid
    assert len(E) == count_one_lipschitz(Y, Z)


def test_empty_exponent_gives_terminal_like_singleton():
    E = exponential(empty_space(), discrete("ab"))
    assert _rows(E) == [[NEG_INF]]


# -- currying -------------------------------------------------------------------------


@settings(max_examples=30)
@given(spaces(max_points=2), spaces(max_points=2), spaces(max_points=2))
def test_currying_is_a_bijection(X, Y, Z):
    T, E = tensor([X, Y]), exponential(Y, Z)
    left, right = one_lipschitz_maps(T, Z), one_lipschitz_maps(X, E)
    assert len(left) == len(right)
    for a in left:
        f = PointMap(T, Z, a)
        assert uncurry(curry(f, X, Y), X, Y, Z) == f
    for b in right:
        g = PointMap(X, E, b)
        assert curry(uncurry(g, X, Y, Z), X, Y).assignment == g.assignment


def test_projection_curries_to_constant_identity():
    X = FiniteRhoSpace("ab", [[0, 1], [1, 0]])
    Y = FiniteRhoSpace("uv", [[0, 2], [Fraction(1, 2), 0]])
    f = PointMap.from_labels(tensor([X, Y]), Y, lambda p: p[1])
    assert _one_lip(f)
    g = curry(f, X, Y)
    assert set(g.image_labels()) == {("u", "v")}

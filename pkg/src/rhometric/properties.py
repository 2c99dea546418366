"""Executable acceptance checks, one function per criterion.

Every check is deterministic for a given seed, uses exact arithmetic, and
returns a :class:`CheckResult` instead of raising, so a failing check still
lets the rest of the suite run.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .constructions import (
    EquivRelation,
    curry,
    delta_singleton,
    exponential,
    one_lipschitz_maps,
    product,
    quotient,
    tensor,
    terminal,
    uncurry,
)
from .extended_reals import (
    NEG_INF,
    POS_INF,
    ZERO,
    ExtReal,
    ediff,
    esum,
    scale,
    trunc_diff,
)
from .generators import (
    random_affordable_negative_space,
    random_delta_space,
    random_lipschitz_map,
    random_partition,
    random_pl_profile,
    random_space,
    random_step_path,
    random_time_map,
)
from .oracles import (
    pl_ascent_oracle,
    quotient_chain_oracle,
    reflective_sym_oracle,
    step_valuation_oracle,
)
from .paths import (
    LineKind,
    PLPath,
    StepPath,
    concat,
    grid_line,
    pl_valuation,
    reparametrize,
    step_valuation,
)
from .space import (
    FiniteRhoSpace,
    PointMap,
    admissible_constants,
    entrywise_leq,
    lipschitz_status,
    potential_space,
    scale_space,
)
from .symmetry import coreflective_preorder, coreflective_sym, reflective_preorder, reflective_sym
from .topology import future_local_base

__all__ = ["CheckResult", "CHECKS", "run_all", "DEFAULT_SEED", "RUNTIME_BUDGET"]

DEFAULT_SEED = 20240601
RUNTIME_BUDGET = 60.0


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self, timings: bool = True) -> str:
        mark = "PASS" if self.passed else "FAIL"
        text = f"[{mark}] {self.number:2d} {self.name}: {self.detail}"
        return f"{text} ({self.seconds:.2f}s)" if timings else text


class _Fail(Exception):
    pass


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise _Fail(message)


def _rows(space: FiniteRhoSpace) -> list[list]:
    return [list(r) for r in space.rho]


# ---------------------------------------------------------------------------
# 1. quantale laws


QUANTALE_SAMPLE = (NEG_INF, ExtReal(-2), ExtReal(-1), ZERO, ExtReal(Fraction(1, 2)), ExtReal(1), ExtReal(3), POS_INF)


def check_quantale(seed: int) -> str:
    S = QUANTALE_SAMPLE
    n = 0
    for a in S:
        _expect(esum(a, ZERO) == a and esum(ZERO, a) == a, f"unit fails at {a}")
        for b in S:
            _expect(esum(a, b) == esum(b, a), f"commutativity fails at {a}, {b}")
            for c in S:
                n += 1
                _expect(esum(esum(a, b), c) == esum(a, esum(b, c)), f"associativity fails at {a}, {b}, {c}")
                # lambda + mu >= nu  <=>  lambda >= nu - mu
                _expect((esum(a, b) >= c) == (a >= ediff(c, b)), f"adjunction fails at {a}, {b}, {c}")
                if a >= ZERO and b >= ZERO and c >= ZERO:
                    _expect((esum(a, b) >= c) == (a >= trunc_diff(c, b)), f"truncated adjunction fails at {a}, {b}, {c}")
                if a <= b:
                    _expect(esum(a, c) <= esum(b, c), f"monotonicity fails at {a}, {b}, {c}")
    _expect(ediff(POS_INF, POS_INF) == NEG_INF, "inf - inf must be -inf")
    _expect(ediff(NEG_INF, NEG_INF) == NEG_INF, "-inf - -inf must be -inf")
    _expect(esum(NEG_INF, POS_INF) == POS_INF, "-inf + inf must be inf")
    _expect(trunc_diff(POS_INF, POS_INF) == ZERO, "truncated inf - inf must be 0")
    subsets = 0
    for r in range(1, len(S) + 1):
        for sub in itertools.combinations(S, r):
            subsets += 1
            for a in S:
                _expect(esum(a, min(sub)) == min(esum(a, s) for s in sub), f"meet preservation fails at {a}, {sub}")
    return f"{n} triples, {subsets} meets"


# ---------------------------------------------------------------------------
# 2-3. reflective symmetrization


def check_reflective_oracle(seed: int) -> str:
    rng = random.Random(seed)
    flats = 0
    for k in range(200):
        X = random_space(rng, rng.randint(1, 6))
        got = _rows(reflective_sym(X))
        want = reflective_sym_oracle(X, 12)
        _expect(got == want, f"instance {k}: closure {got} != oracle {want} for {X}")
        flats += any(v.is_neg_inf for r in got for v in r)
    return f"200 spaces agree with the walk oracle ({flats} with -inf entries)"


def check_chaotic_symmetrization(seed: int) -> str:
    rng = random.Random(seed + 3)
    for k in range(100):
        X = random_affordable_negative_space(rng, rng.randint(2, 6))
        R = reflective_sym(X)
        _expect(all(v.is_neg_inf for r in R.rho for v in r), f"instance {k}: {X} symmetrizes to {R}")
    return "100 affordable non-positive spaces become chaotic"


# ---------------------------------------------------------------------------
# 4-6. tensor products


def check_monoidal(seed: int) -> str:
    rng = random.Random(seed + 4)
    for k in range(100):
        X = random_space(rng, rng.randint(1, 5))
        Y = random_space(rng, rng.randint(1, 5))
        T = tensor([X, Y])
        _expect(reflective_sym(T) == tensor([reflective_sym(X), reflective_sym(Y)]), f"pair {k}: strict monoidality fails for {X}, {Y}")
        _expect(entrywise_leq(coreflective_sym(T), tensor([coreflective_sym(X), coreflective_sym(Y)])), f"pair {k}: lax inequality fails for {X}, {Y}")
    return "100 pairs: reflector strict, coreflector lax"


def check_corollaries(seed: int) -> str:
    rng = random.Random(seed + 5)
    for k in range(100):
        X = random_delta_space(rng, rng.randint(1, 5))
        Y = random_delta_space(rng, rng.randint(1, 5))
        P, T = product([X, Y]), tensor([X, Y])
        Xr, Yr, Xc, Yc = reflective_sym(X), reflective_sym(Y), coreflective_sym(X), coreflective_sym(Y)
        prod_r = product([Xr, Yr])
        chain_r = [prod_r, reflective_sym(P), reflective_sym(T)]
        for lo, hi in zip(chain_r, chain_r[1:]):
            _expect(entrywise_leq(lo, hi), f"pair {k}: reflective chain breaks")
        _expect(reflective_sym(T) == tensor([Xr, Yr]), f"pair {k}: reflective tensor identity breaks")
        _expect(entrywise_leq(tensor([Xr, Yr]), scale_space(2, prod_r)), f"pair {k}: factor-2 bound breaks (reflective)")
        prod_c = product([Xc, Yc])
        _expect(prod_c == coreflective_sym(P), f"pair {k}: coreflector does not preserve the product")
        chain_c = [prod_c, coreflective_sym(T), tensor([Xc, Yc]), scale_space(2, prod_c)]
        for lo, hi in zip(chain_c, chain_c[1:]):
            _expect(entrywise_leq(lo, hi), f"pair {k}: coreflective chain breaks")
    return "100 pairs of delta-spaces satisfy both chains"


def check_tensor_boundary(seed: int) -> str:
    rng = random.Random(seed + 6)
    for k in range(100):
        X = random_delta_space(rng, rng.randint(1, 4))
        Y = random_delta_space(rng, rng.randint(1, 4))
        P, T = product([X, Y]), tensor([X, Y])
        _expect(entrywise_leq(P, T) and entrywise_leq(T, scale_space(2, P)), f"pair {k}: delta inequalities fail")
        Xg, Yg = random_space(rng, rng.randint(1, 4)), random_space(rng, rng.randint(1, 4))
        _expect(entrywise_leq(tensor([Xg, Yg]), scale_space(2, product([Xg, Yg]))), f"pair {k}: rho upper bound fails")
    unit, top = delta_singleton(), terminal()
    P, T = product([unit, top]), tensor([unit, top])
    _expect(_rows(P) == [[ZERO]] and _rows(T) == [[NEG_INF]], f"counterexample gives {P} and {T}")
    _expect(entrywise_leq(T, P) and not entrywise_leq(P, T), "counterexample does not reverse the inequality")
    back = admissible_constants(PointMap(T, P, (0,)))
    _expect(back.empty, "the tensor should admit no Lipschitz map onto the product")
    return "delta bounds on 100 pairs; unit x terminal gives 0 vs -inf"


# ---------------------------------------------------------------------------
# 7-8. path valuation


def check_path_theorem(seed: int) -> str:
    rng = random.Random(seed + 7)
    counts = dict.fromkeys("abcdefg", 0)
    for k in range(200):
        X = random_space(rng, rng.randint(1, 5))
        a = random_step_path(rng, X)
        va = step_valuation(a).v
        oracle = step_valuation_oracle(X, a.visits, a.switches)
        _expect(va == oracle, f"path {k}: valuation {va} != partition oracle {oracle}")
        # (a)
        x = rng.choice(X.points)
        _expect(step_valuation(StepPath.constant(X, x)).v == X.d(x, x), f"path {k}: constant path")
        counts["a"] += 1
        # (b)
        b = random_step_path(rng, X, start=a.end)
        _expect(step_valuation(concat(a, b)).v == esum(va, step_valuation(b).v), f"path {k}: concatenation")
        counts["b"] += 1
        # (e)
        phi = random_time_map(rng, surjective=True)
        _expect(step_valuation(reparametrize(a, phi)).v == va, f"path {k}: surjective reparametrisation")
        counts["e"] += 1
        # (d) and (c)
        psi = random_time_map(rng, surjective=False)
        vpsi = step_valuation(reparametrize(a, psi)).v
        if va < POS_INF:
            _expect(vpsi < POS_INF, f"path {k}: partial reparametrisation lost finiteness")
            counts["d"] += 1
        D = random_delta_space(rng, rng.randint(1, 5))
        c = random_step_path(rng, D)
        _expect(step_valuation(reparametrize(c, psi)).v <= step_valuation(c).v, f"path {k}: positive partial reparametrisation")
        counts["c"] += 1
        # (f) step paths and PL paths in all three lines
        rep = step_valuation(a)
        _expect(rep.v <= rep.lipschitz_weight, f"path {k}: step path exceeds its weight")
        p = random_pl_profile(rng)
        for kind in LineKind:
            r = pl_valuation(p.retarget(kind))
            _expect(r.v <= r.lipschitz_weight, f"path {k}: PL path into {kind.value} exceeds its weight")
        q = random_pl_profile(rng)
        q = PLPath(q.times, (p.values[-1],) + q.values[1:], q.target)
        _expect(pl_valuation(concat(p, q)).v == pl_valuation(p).v + pl_valuation(q).v, f"path {k}: PL concatenation")
        counts["f"] += 1
        # (g)
        Y = random_space(rng, rng.randint(1, 5))
        found = random_lipschitz_map(rng, X, Y)
        if found is not None:
            f, lam = found
            image = StepPath(Y, tuple(f(x) for x in a.visits), a.switches)
            _expect(lipschitz_status(f, lam), f"path {k}: generated map is not {lam}-Lipschitz")
            _expect(step_valuation(image).v <= scale(lam, va), f"path {k}: Lipschitz image inequality")
            counts["g"] += 1
    return ", ".join(f"({i}) {n}" for i, n in counts.items())


FIXED_PROFILE = (0, 3, 1, 2)


def _potential_step_check(rng: random.Random, k: int) -> None:
    pts = [f"x{i}" for i in range(rng.randint(1, 6))]
    phi = {p: Fraction(rng.randint(-6, 6), rng.choice((1, 2))) for p in pts}
    X = potential_space(pts, phi)
    a = random_step_path(rng, X)
    r, rs = step_valuation(a), step_valuation(a.reversed())
    _expect(r.v == phi[a.end] - phi[a.start], f"step path {k}: v is not the potential difference")
    _expect(rs.v == -r.v and r.v_minus == rs.v_plus, f"step path {k}: reversal identities")
    _expect(r.v == r.v_plus - r.v_minus and r.total_variation == r.v_plus + r.v_minus, f"step path {k}: ascent/descent split")


def check_linear_paths(seed: int) -> str:
    rng = random.Random(seed + 8)
    for k in range(100):
        p = random_pl_profile(rng)
        r, rs = pl_valuation(p), pl_valuation(p.reversed())
        y0, y1 = p.values[0], p.values[-1]
        up, down = pl_ascent_oracle(p.values)
        _expect(r.v == y1 - y0, f"profile {k}: v is not the potential difference")
        _expect(rs.v == -r.v, f"profile {k}: reversal does not negate v")
        _expect(r.v_minus == rs.v_plus, f"profile {k}: descent is not the reversed ascent")
        _expect(r.v == r.v_plus - r.v_minus, f"profile {k}: v != v+ - v-")
        _expect(r.total_variation == r.v_plus + r.v_minus, f"profile {k}: tv != v+ + v-")
        _expect((r.v_plus, r.v_minus) == (ExtReal(up), ExtReal(down)), f"profile {k}: monotone-run oracle disagrees")
        # the same identities for step paths in a random potential space
        _potential_step_check(rng, k)
    r = pl_valuation(PLPath.profile(FIXED_PROFILE))
    got = (r.v, r.v_plus, r.v_minus, r.total_variation)
    up, down = pl_ascent_oracle(FIXED_PROFILE)
    want = (ExtReal(up - down), ExtReal(up), ExtReal(down), ExtReal(up + down))
    _expect(got == want == (2, 4, 2, 6), f"fixed profile gives {got}, oracle {want}")
    return "100 profiles exact; (0,3,1,2) -> (2, 4, 2, 6)"


# ---------------------------------------------------------------------------
# 9. quotients


def check_quotients(seed: int) -> str:
    for n in range(3, 9):
        R = grid_line(LineKind.RHO, range(n))
        rel = EquivRelation([[0, n - 1]] + [[i] for i in range(1, n - 1)])
        Q = quotient(R, rel).space
        _expect(all(v.is_neg_inf for r in Q.rho for v in r), f"grid of {n} points: {Q}")
    rng = random.Random(seed + 9)
    witnessed = 0
    for k in range(200):
        X = random_space(rng, rng.randint(1, 6))
        classes = random_partition(rng, X.points)
        res = quotient(X, EquivRelation(classes))
        want = quotient_chain_oracle(X, classes)
        _expect(_rows(res.space) == want, f"instance {k}: closure {res.space} != chain oracle {want}")
        for (a, b), w in res.witnesses.items():
            _expect(w.total == res.space.rho[a][b], f"instance {k}: witness total differs")
            _expect(w.steps[0][0] in classes[a] and w.steps[-1][1] in classes[b], f"instance {k}: witness endpoints")
            for (_, u), (v, _) in zip(w.steps, w.steps[1:]):
                _expect(any(u in c and v in c for c in classes), f"instance {k}: witness jump leaves a class")
            witnessed += 1
    return f"grids n=3..8 chaotic; 200 instances match the chain oracle ({witnessed} witnesses)"


# ---------------------------------------------------------------------------
# 10. tensor-hom adjunction


ADJUNCTION_ALPHABET = (NEG_INF, ExtReal(-1), ZERO, ExtReal(1), POS_INF)


def small_spaces(alphabet=ADJUNCTION_ALPHABET, max_points: int = 2) -> list[FiniteRhoSpace]:
    """Every valid space on at most ``max_points`` points with entries in ``alphabet``."""
    out = [FiniteRhoSpace((), ())]
    diag = [v for v in alphabet if v == ZERO or v.is_neg_inf]
    for n in range(1, max_points + 1):
        pts = [f"p{i}" for i in range(n)]
        cells = [(i, j) for i in range(n) for j in range(n)]
        for values in itertools.product(alphabet, repeat=len(cells)):
            if any(values[k] not in diag for k, (i, j) in enumerate(cells) if i == j):
                continue
            rho = [[None] * n for _ in range(n)]
            for (i, j), v in zip(cells, values):
                rho[i][j] = v
            X = FiniteRhoSpace(pts, rho)
            if X.is_valid:
                out.append(X)
    return out


def check_adjunction(seed: int) -> str:
    spaces = small_spaces()
    triples = witnesses = 0
    for X in spaces:
        for Y in spaces:
            T = tensor([X, Y])
            for Z in spaces:
                E = exponential(Y, Z)
                left = one_lipschitz_maps(T, Z)
                right = one_lipschitz_maps(X, E)
                _expect(len(left) == len(right), f"counts differ for X={X}, Y={Y}, Z={Z}")
                for a in left:
                    f = PointMap(T, Z, a)
                    g = curry(f, X, Y)
                    _expect(lipschitz_status(g, 1), "curried map is not 1-Lipschitz")
                    _expect(uncurry(g, X, Y, Z) == f, "uncurry(curry(f)) != f")
                    witnesses += 1
                for b in right:
                    g = PointMap(X, E, b)
                    _expect(curry(uncurry(g, X, Y, Z), X, Y).assignment == g.assignment, "curry(uncurry(g)) != g")
                triples += 1
    return f"{len(spaces)} spaces, {triples} triples, {witnesses} witnesses"


# ---------------------------------------------------------------------------
# 11. the table on grid lines


def check_table(seed: int) -> str:
    vals = range(10)
    n = len(vals)
    absdiff = [[ExtReal(abs(x - y)) for y in vals] for x in vals]
    upto = [[x <= y for y in vals] for x in vals]
    alltrue = [[True] * n for _ in vals]
    ident = [[x == y for y in vals] for x in vals]
    discrete = [[ZERO if x == y else POS_INF for y in vals] for x in vals]
    cells = 0

    delta = grid_line(LineKind.DELTA, vals)
    for x0 in vals:
        want = [frozenset(range(x0, x0 + k + 1)) for k in range(n - x0)]
        _expect(future_local_base(delta, x0) == want, f"delta line local base at {x0}")
    _expect(_rows(reflective_sym(delta)) == absdiff, "delta line reflective metric")
    _expect(reflective_preorder(delta).related == tuple(map(tuple, upto)), "delta line reflective preorder")
    _expect(_rows(coreflective_sym(delta)) == discrete, "delta line coreflective metric")
    _expect(coreflective_preorder(delta).related == tuple(map(tuple, ident)), "delta line coreflective preorder")
    cells += 5

    for kind, chaotic_value in ((LineKind.RHO, NEG_INF), (LineKind.DELTA0, ZERO)):
        L = grid_line(kind, vals)
        for x0 in vals:
            want = [frozenset(range(0, x0 + k + 1)) for k in range(n - x0)]
            _expect(future_local_base(L, x0) == want, f"{kind.value} line local base at {x0}")
        _expect(all(v == chaotic_value for r in reflective_sym(L).rho for v in r), f"{kind.value} line reflective metric")
        _expect(reflective_preorder(L).related == tuple(map(tuple, alltrue)), f"{kind.value} line reflective preorder")
        _expect(_rows(coreflective_sym(L)) == absdiff, f"{kind.value} line coreflective metric")
        _expect(coreflective_preorder(L).related == tuple(map(tuple, upto)), f"{kind.value} line coreflective preorder")
        cells += 5
    return f"{cells} cells on 10-point grids"


CHECKS: list[tuple[int, str, Callable[[int], str]]] = [
    (1, "quantale laws", check_quantale),
    (2, "reflective symmetrization vs walk oracle", check_reflective_oracle),
    (3, "affordable non-positive spaces symmetrize to chaos", check_chaotic_symmetrization),
    (4, "reflector strict / coreflector lax monoidal", check_monoidal),
    (5, "symmetrization vs product chains", check_corollaries),
    (6, "tensor vs product bounds and counterexample", check_tensor_boundary),
    (7, "path valuation theorem", check_path_theorem),
    (8, "linear paths: ascent, descent, variation", check_linear_paths),
    (9, "quotient closure vs chain oracle", check_quotients),
    (10, "tensor-hom adjunction", check_adjunction),
    (11, "table of line metrics, preorders, local bases", check_table),
]


def run_check(number: int, seed: int = DEFAULT_SEED) -> CheckResult:
    for num, name, fn in CHECKS:
        if num == number:
            start = time.perf_counter()
            try:
                detail, ok = fn(seed), True
            except _Fail as exc:
                detail, ok = str(exc), False
            except Exception as exc:  # a crash is a failed check, reported not raised
                detail, ok = f"{type(exc).__name__}: {exc}", False
            return CheckResult(num, name, ok, detail, time.perf_counter() - start)
    raise KeyError(number)


def run_all(seed: int = DEFAULT_SEED, only=None) -> list[CheckResult]:
    """Run the checks (all, or the numbers in ``only``) plus the overall runtime budget."""
    start = time.perf_counter()
    results = [run_check(num, seed) for num, _, _ in CHECKS if only is None or num in only]
    total = time.perf_counter() - start
    if only is None:
        ok = total < RUNTIME_BUDGET
        verdict = "within" if ok else "over"
        results.append(CheckResult(12, "runtime budget", ok, f"{verdict} {RUNTIME_BUDGET:.0f}s", total))
    return results

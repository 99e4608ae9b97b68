from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commulab import equations as eqs
from commulab.groebner import BudgetExceeded
from commulab.matrix import Matrix, commutator, eval_poly_at_matrix, is_nilpotent, jordan_block
from commulab.poly import UniPoly
from commulab.report import FAIL, INCONCLUSIVE, PASS
from commulab.rings import GF, Dual, Mod, Rationals, RingError, parse_ring
from commulab.spectral import HypothesisError
from conftest import matrices

# ---------------------------------------------------------------------------
# equation ids and residuals


def test_equation_ids_validate():
    with pytest.raises(ValueError):
        eqs.PowerX(1)
    with pytest.raises(ValueError):
        eqs.PowerXg(2, UniPoly.from_values(GF(3), [0, 1]))
    with pytest.raises(HypothesisError):
        eqs.residual(eqs.Square(), Matrix.identity(2, GF(2)), Matrix.identity(2, GF(2)))
    with pytest.raises(HypothesisError):
        eqs.residual(eqs.Cube(), Matrix.identity(2, Mod(6)), Matrix.identity(2, Mod(6)))
    with pytest.raises(RingError):
        eqs.residual(eqs.PowerXg(2, UniPoly.from_values(GF(5), [1])), Matrix.identity(2, GF(3)), Matrix.identity(2, GF(3)))
    assert str(eqs.parse_equation("powerX", alpha=3)) == "PowerX(3)"
    with pytest.raises(ValueError):
        eqs.parse_equation("nonsense")


@settings(max_examples=200)
@given(st.sampled_from([GF(5), Mod(9), Rationals()]).flatmap(lambda R: st.tuples(matrices(R, 2) | matrices(R, 3), matrices(R, 2) | matrices(R, 3))))
def test_residual_forms(pair):
    A, B = pair
    if A.n != B.n:
        return
    assert eqs.residual(eqs.Square(), A, B) == A * A - A * B.scale(2) + B * B
    N = A - B
    assert eqs.residual(eqs.SimN(), A, B) == N * N - (N * B - B * N)
    if A.ring != Mod(9):  # 3! is a zero-divisor there
        assert eqs.residual(eqs.GenBinom(3), A, B) == eqs.residual(eqs.Cube(), A, B)
    # the square equation and N B - B N = N^2 are the same condition
    assert eqs.is_solution(eqs.Square(), A, B) == eqs.is_solution(eqs.SimN(), A, B)


# ---------------------------------------------------------------------------
# enumeration


@settings(max_examples=60)
@given(st.sampled_from([Mod(4), GF(3), Mod(6)]).flatmap(lambda R: matrices(R, 2)), st.sampled_from([2, 3]))
def test_numpy_and_generic_enumeration_agree(A, alpha):
    a = eqs.brute_force_solutions(eqs.PowerX(alpha), A, method="numpy")
    b = eqs.brute_force_solutions(eqs.PowerX(alpha), A, method="generic")
    assert a.solutions == b.solutions
    na = eqs.brute_force_solutions(eqs.PowerX(alpha), A, "nilpotent-only", method="numpy")
    nb = eqs.brute_force_solutions(eqs.PowerX(alpha), A, "nilpotent-only", method="generic")
    assert na.solutions == nb.solutions
    assert all(is_nilpotent(X) for X in na.solutions)


def test_brute_force_agrees_with_independent_loop():
    R = Mod(4)
    A = Matrix.from_values(R, [[1, 2], [0, 3]])
    g = UniPoly.from_values(R, [1, 1])
    eq = eqs.PowerXg(2, g)
    ref = []
    for e in itertools.product(range(4), repeat=4):
        X = Matrix(R, [e[:2], e[2:]])
        if X * A - A * X == X * X * (X + Matrix.identity(2, R)):
            ref.append(X)
    assert list(eqs.brute_force_solutions(eq, A).solutions) == ref


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        eqs.brute_force_solutions(eqs.PowerX(2), Matrix.identity(3, GF(7)), budget=1000)
    with pytest.raises(RingError):
        eqs.brute_force_solutions(eqs.PowerX(2), Matrix.identity(2, Rationals()))


def test_distinct_eigenvalues_force_zero():
    F = GF(5)
    fam = eqs.brute_force_solutions(eqs.PowerX(2), Matrix.diag(F, [0, 1, 2]))
    assert fam.candidates == 5 ** 9 and fam.solutions == (Matrix.zeros(3, F),)


def test_z9_census():
    R = Mod(9)
    fam = eqs.brute_force_solutions(eqs.PowerX(2), Matrix.diag(R, [0, 1]))
    assert fam.candidates == 6561 and fam.count == 9
    for X in fam.solutions:
        assert X.is_diagonal()
        assert all(R.is_zero(R.mul(X.rows[i][i], X.rows[i][i])) for i in range(2))


def test_square_pairs_commute_gf3():
    pairs, total = eqs.enumerate_solution_pairs(eqs.Square(), GF(3), 2)
    assert total == 3 ** 8 and len(pairs) == 153
    assert all(A * B == B * A for A, B in pairs)
    rep = eqs.pair_enumeration(eqs.Square(), GF(3), 2, lambda A, B: A * B == B * A, name="commute")
    assert rep.status == PASS


# ---------------------------------------------------------------------------
# criterion-6 property suites


def _enumerated_powerx_solutions():
    cases = []
    for R in (GF(3), Mod(4), Dual(GF(2))):
        rng = random.Random(1)
        elems = list(R.elements())
        As = [Matrix(R, [[rng.choice(elems) for _ in range(2)] for _ in range(2)]) for _ in range(12)] + [Matrix.diag(R, [0, 1])]
        for A in As:
            for alpha in (2, 3):
                for X in eqs.brute_force_solutions(eqs.PowerX(alpha), A).solutions:
                    cases.append((A, X, alpha))
    for A in (Matrix.diag(Mod(9), [0, 1]), jordan_block(2, Mod(9))):
        for X in eqs.brute_force_solutions(eqs.PowerX(2), A).solutions:
            cases.append((A, X, 2))
    return cases


def test_jacobson_identity_on_all_enumerated_solutions():
    cases = _enumerated_powerx_solutions()
    assert len(cases) >= 500
    for A, X, alpha in cases:
        rep = eqs.jacobson_nilpotency_check(A, X, alpha)
        assert rep.metrics["scaled_power_zero"], (A, X)
        if rep.metrics["factorial_regular"]:
            assert rep.status == PASS and rep.metrics["X_nilindex"] is not None


_SQUARE_GF5 = None


def _square_pairs():
    global _SQUARE_GF5
    if _SQUARE_GF5 is None:
        _SQUARE_GF5 = eqs.enumerate_solution_pairs(eqs.Square(), GF(5), 2)[0]
    return _SQUARE_GF5


@settings(max_examples=500)
@given(st.integers(0, 1224), st.integers(0, 4))
def test_shift_invariance_square(idx, mu):
    A, B = _square_pairs()[idx]
    assert eqs.shift_invariance_check(eqs.Square(), A, B, mu)


_CUBE_GF5 = None


def _cube_pairs():
    global _CUBE_GF5
    if _CUBE_GF5 is None:
        _CUBE_GF5 = eqs.enumerate_solution_pairs(eqs.GenBinom(3), GF(5), 2)[0]
    return _CUBE_GF5


@settings(max_examples=500)
@given(st.data(), st.integers(0, 4))
def test_shift_invariance_genbinom(data, mu):
    pairs = _cube_pairs()
    A, B = pairs[data.draw(st.integers(0, len(pairs) - 1))]
    assert eqs.shift_invariance_check(eqs.GenBinom(3), A, B, mu)


@st.composite
def f_pairs(draw):
    """(A, B, f) with [A, B] = f(A) built from the Jordan fiber, then conjugated, shifted and perturbed."""
    F = draw(st.sampled_from([GF(7), GF(11)]))
    n = draw(st.integers(2, 5))
    alpha = draw(st.integers(2, 4))
    elems = list(F.elements())
    while True:
        params = [draw(st.sampled_from(elems)) for _ in range(n - 1)]
        try:
            X = eqs.solve_jordan_fiber(n, alpha, params, F).solutions[0]
            break
        except eqs.PivotFailure:
            continue
    P = draw(matrices(F, n).filter(lambda M: M.is_invertible()))
    Pi = P.inverse()
    A, B = P * X * Pi, P * jordan_block(n, F) * Pi
    q = UniPoly(F, [draw(st.sampled_from(elems)) for _ in range(3)])
    B = B + eval_poly_at_matrix(q, A)
    mu = draw(st.sampled_from(elems))
    A = A.shift(mu)
    t = UniPoly.t(F) + UniPoly.constant(F, mu)
    f = t ** alpha
    return A, B, f


@settings(max_examples=500)
@given(f_pairs(), st.integers(1, 5))
def test_recurrence_for_constructed_pairs(data, i):
    A, B, f = data
    assert commutator(A, B) == f(A)
    assert eqs.recurrence_check(A, B, f, i)


def test_recurrence_rejects_wrong_premise():
    F = GF(5)
    with pytest.raises(HypothesisError):
        eqs.recurrence_check(jordan_block(2, F), jordan_block(2, F).transpose(), UniPoly(F, []), 1)


# ---------------------------------------------------------------------------
# Jordan fiber and bridges


def test_jordan_fiber_example():
    F = GF(7)
    fam = eqs.solve_jordan_fiber(3, 2, [1, 0], F)
    X = fam.solutions[0]
    assert X == Matrix.from_values(F, [[0, 1, 0], [0, 0, 4], [0, 0, 0]])
    assert fam.kind == "Parametrized" and fam.params == ("x12", "x13")
    assert eqs.jordan_fiber_similarity_check(X)
    A, B = eqs.sim_bridge(X, jordan_block(3, F))
    assert eqs.is_solution(eqs.Square(), A, B) and A * B != B * A


def test_jordan_fiber_pivot_failure():
    with pytest.raises(eqs.PivotFailure) as info:
        eqs.solve_jordan_fiber(3, 2, [6, 1], GF(7))
    assert info.value.entry == (2, 3) and info.value.trace
    with pytest.raises(RingError):
        eqs.solve_jordan_fiber(3, 2, [1, 0], Mod(9))


@settings(max_examples=100)
@given(st.integers(2, 6), st.integers(2, 4), st.data())
def test_jordan_fiber_solutions_verify(n, alpha, data):
    F = GF(13)
    params = data.draw(st.lists(st.integers(0, 12), min_size=n - 1, max_size=n - 1))
    try:
        X = eqs.solve_jordan_fiber(n, alpha, params, F).solutions[0]
    except eqs.PivotFailure:
        return
    J = jordan_block(n, F)
    assert X * J - J * X == X ** alpha
    assert X.is_upper_triangular(strict=True)


def test_alpha_reduction():
    F = GF(7)
    X = eqs.solve_jordan_fiber(3, 3, [1, 2], F).solutions[0]
    # X J - J X = X^3, so (X, J) solves A B - B A = A^3
    A1, B1 = eqs.alpha_reduction(X, jordan_block(3, F), 3)
    assert commutator(A1, B1) == A1 * A1
    R = Mod(4)
    with pytest.raises(HypothesisError):
        eqs.alpha_reduction(Matrix.zeros(2, R), Matrix.zeros(2, R), 3)


# ---------------------------------------------------------------------------
# ring-level checks


def test_nilpotent_ideal_and_block_structure():
    F = GF(2)
    A = Matrix.diag(F, [0, 0, 1])
    eq = eqs.PowerXg(2, UniPoly.from_values(F, [1, 1]))
    sols = eqs.brute_force_solutions(eq, A, "nilpotent-only").solutions
    assert len(sols) == 4
    for X in sols:
        assert eqs.nilpotent_ideal_check(A, X, eq, 20).status == PASS
        rep = eqs.block_structure_check(A, X, [(0, 2), (1, 1)], Matrix.identity(3, F), eq)
        assert rep.status == PASS and rep.metrics["X_alpha_zero"]
    bad = eqs.block_structure_check(A, sols[0], [(0, 1), (1, 2)], Matrix.identity(3, F), eq)
    assert bad.status == INCONCLUSIVE


def test_block_structure_non_unit_g0():
    R = Mod(8)
    X = Matrix.identity(2, R).scale(2)
    rep = eqs.block_structure_check(Matrix.diag(R, [0, 1]), X, [(0, 1), (1, 1)], Matrix.identity(2, R), eqs.PowerXg(2, UniPoly.from_values(R, [2])))
    assert rep.status == PASS and not rep.metrics["X_alpha_zero"]


def test_nilpotent_ideal_bound_cap():
    R = Mod(2 ** 20)
    X = Matrix.zeros(4, R)
    rep = eqs.nilpotent_ideal_check(Matrix.identity(4, R), X, eqs.PowerXg(2, UniPoly.from_values(R, [1])))
    assert rep.status == INCONCLUSIVE


# ---------------------------------------------------------------------------
# canonical forms


def _orbit_count(F, n):
    elems = list(F.elements())
    mats = [Matrix(F, [list(e[i * n:(i + 1) * n]) for i in range(n)]) for e in itertools.product(elems, repeat=n * n)]
    inv = [P for P in mats if P.is_invertible()]
    seen, orbits = set(), 0
    for M in mats:
        if M in seen:
            continue
        orbits += 1
        for P in inv:
            seen.add(P * M * P.inverse())
    return orbits


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3)])
def test_frobenius_forms_count_matches_orbit_enumeration(q, n):
    assert len(list(eqs.frobenius_normal_forms(GF(q), n))) == _orbit_count(GF(q), n)


def test_frobenius_forms_count_formula():
    # number of similarity classes of 3x3 matrices over GF(q) is q^3 + q^2 + q
    assert len(list(eqs.frobenius_normal_forms(GF(7), 3))) == 399


def test_square_solution_classes_gf7():
    F = GF(7)
    classes = list(eqs.square_solution_classes(F, 3))
    noncomm = [(N, p, k) for N, p, k in classes if not (N * N).is_zero()]
    assert len(noncomm) == 1 and len(noncomm[0][2]) == 3
    N, part, _ = noncomm[0]
    B = Matrix(F, [list(part[i * 3:(i + 1) * 3]) for i in range(3)])
    assert eqs.is_solution(eqs.Square(), N + B, B)


def test_commutator_fiber_inconsistent():
    F = GF(3)
    N = Matrix.diag(F, [0, 1])
    assert eqs.commutator_fiber(N, Matrix.identity(2, F)) is None


# ---------------------------------------------------------------------------
# generic matrices


def test_generic_membership_alpha2():
    rep = eqs.generic_membership_check(2, 2, 3)
    assert rep.status == PASS
    assert all(rep.metrics["X_alpha_members"].values())
    neg = eqs.generic_membership_check(2, 2, 2, expect="nonmember")
    assert neg.status == PASS
    wrong = eqs.generic_membership_check(2, 2, 2, expect="member")
    assert wrong.status == FAIL and wrong.artifacts


def test_specialized_membership():
    F = GF(32003)
    A = Matrix.from_values(F, [[3, 17], [101, 5]])
    rep = eqs.specialized_membership_check(A, 2, 3)
    assert rep.status == PASS and set(rep.metrics["minimal_exponents"].values()) == {3}


def test_generic_system_shape():
    polys = eqs.generic_system(eqs.PowerX(2), 2, parse_ring("Q"))
    assert len(polys) == 4 and len(polys[0].vars) == 8

"""Catalogue of verification checks and the runner behind ``commulab verify``.

Every entry records which claim it exercises (``anchor``) and how (``mode`` in
the report metrics): exhaustive scans of finite instances, ideal membership,
sampled genericity and so on.  A check only reports PASS after at least one
machine assertion has actually run.
"""

from __future__ import annotations

import random
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import equations as eqs
from .groebner import BudgetExceeded, variety_dimension_experiment
from .matrix import (
    Matrix,
    centralizer_dimension,
    commutator,
    eval_poly_at_matrix,
    is_nilpotent,
    jordan_block,
    matrix_nilindex,
)
from .poly import UniPoly, resultant
from .report import FAIL, INCONCLUSIVE, PASS, CheckReport
from .rings import GF, Dual, Mod, Rationals, RingError, RingSpec, RingValue, parse_ring
from .spectral import (
    HypothesisError,
    common_eigenvector,
    diago_commutation_check,
    eigenvalues_in_field,
    express_as_polynomial,
    lie_solvability_check,
    property_L_check,
    simultaneous_diagonalization,
    simultaneous_triangularization,
    st_certificate_ok,
)

PROFILES = ("quick", "full", "extended")


@dataclass(frozen=True)
class Entry:
    check_id: str
    title: str
    anchor: str
    fn: Callable
    profile: str = "quick"  # least profile that runs it


class _Ctx:
    """Collects assertions; PASS needs at least one and no failures."""

    def __init__(self, seed: int, config: dict):
        self.seed = seed
        self.config = config
        self.rng = random.Random(seed)
        self.asserts = 0
        self.failures: list[tuple[str, dict]] = []
        self.timing: dict = {}

    def check(self, cond, label: str, **certificate) -> bool:
        self.asserts += 1
        if not cond:
            self.failures.append((label, certificate))
        return bool(cond)

    def ring(self, default: str) -> RingSpec:
        return parse_ring(self.config.get("ring") or default)

    def rings(self, defaults: list[str]) -> list[RingSpec]:
        if self.config.get("ring"):
            return [parse_ring(self.config["ring"])]
        return [parse_ring(r) for r in defaults]


def default_seed(check_id: str) -> int:
    return zlib.crc32(check_id.encode()) % 10_000


# ---------------------------------------------------------------------------
# helpers


def _random_matrix(rng: random.Random, R: RingSpec, n: int) -> Matrix:
    elems = list(R.elements())
    return Matrix(R, [[elems[rng.randrange(len(elems))] for _ in range(n)] for _ in range(n)])


def _random_invertible(rng: random.Random, R: RingSpec, n: int) -> Matrix:
    while True:
        P = _random_matrix(rng, R, n)
        if P.is_invertible():
            return P


def _random_poly(rng: random.Random, R: RingSpec, deg: int) -> UniPoly:
    elems = list(R.elements())
    return UniPoly(R, [elems[rng.randrange(len(elems))] for _ in range(deg + 1)])


def _shift_poly(f: UniPoly, mu) -> UniPoly:
    """g(t) = f(t + mu)."""
    R = f.ring
    t = UniPoly.t(R)
    shifted = t + UniPoly.constant(R, mu)
    acc = UniPoly(R, [])
    for c in reversed(f.coeffs):
        acc = acc * shifted + UniPoly(R, [c])
    return acc


def _jordan_fiber_random(rng, R: RingSpec, n: int, alpha: int) -> Matrix:
    elems = list(R.elements())
    while True:
        params = [elems[rng.randrange(len(elems))] for _ in range(n - 1)]
        try:
            return eqs.solve_jordan_fiber(n, alpha, params, R).solutions[0]
        except eqs.PivotFailure:
            continue


def _need_field(R: RingSpec, above: int) -> None:
    """Finite field whose characteristic exceeds ``above``."""
    if not (R.is_field and R.is_finite):
        raise HypothesisError(f"{R} is not a finite field")
    if R.characteristic <= above:
        raise HypothesisError(f"characteristic of {R} must exceed {above}")


def _factorial_regular(R: RingSpec, n: int) -> bool:
    from math import factorial

    f = R.from_int(factorial(n))
    return not (R.is_zero(f) or R.is_zero_divisor(f))


# ---------------------------------------------------------------------------
# theorem checks


def _t1(ctx: _Ctx) -> dict:
    out = {"mode": "exhaustive finite instance"}
    for R in ctx.rings(["GF:3", "GF:5"]):
        _need_field(R, 2)
        pairs, total = eqs.enumerate_solution_pairs(eqs.Square(), R, 2, ctx.config.get("budget", eqs.DEFAULT_BUDGET))
        bad = 0
        for A, B in pairs:
            if not ctx.check(A * B == B * A, f"non-commuting solution over {R}", A=A, B=B):
                bad += 1
        out[str(R)] = {"pairs_scanned": total, "solutions": len(pairs), "non_commuting": bad}
    return out


def _t2(ctx: _Ctx) -> dict:
    out = {"mode": "exhaustive n=2 instance plus constructed pairs"}
    R5 = GF(5)
    pairs, _ = eqs.enumerate_solution_pairs(eqs.Square(), R5, 2)
    st = split_later = 0
    for A, B in pairs:
        res = simultaneous_triangularization(A, B)
        if res.status == "Incomplete":
            # spectrum splits only over an extension; commuting pairs are ST there
            split_later += ctx.check(A * B == B * A, "non-split solution does not commute", A=A, B=B)
        elif ctx.check(res.is_st and st_certificate_ok(A, B, res.P), "enumerated solution not ST", A=A, B=B):
            st += 1
    out["enumerated_GF5_n2"] = {"solutions": len(pairs), "st": st, "non_split_commuting": split_later}
    # (J_3, diag(0, J_2 / 2)) and square-equation pairs built from XB - BX = X^2
    built = 0
    R = ctx.ring("GF:7")
    _need_field(R, 3)
    half = RingValue(R, R.inverse(R.from_int(2)))
    J3 = jordan_block(3, R)
    inst = Matrix.block_diag(R, [Matrix.zeros(1, R), jordan_block(2, R).scale(half)])
    samples = [(J3, inst)]
    for n in (m for m in (3, 4, 5) if m < R.characteristic):
        for _ in range(ctx.config.get("samples", 4)):
            X = _jordan_fiber_random(ctx.rng, R, n, 2)
            J = jordan_block(n, R)
            A, B = eqs.sim_bridge(X, J)
            P = _random_invertible(ctx.rng, R, n)
            Pi = P.inverse()
            mu = RingValue(R, ctx.rng.randrange(R.size()))
            samples.append(((P * A * Pi).shift(mu), (P * B * Pi).shift(mu)))
    for A, B in samples:
        ctx.check(eqs.is_solution(eqs.Square(), A, B), "constructed pair is not a solution", A=A, B=B)
        res = simultaneous_triangularization(A, B)
        if ctx.check(res.is_st and st_certificate_ok(A, B, res.P), "constructed solution not ST", A=A, B=B):
            built += 1
    out["constructed"] = {"ring": str(R), "pairs": len(samples), "st": built}
    return out


def _t3(ctx: _Ctx) -> dict:
    R = ctx.ring("GF:7")
    _need_field(R, 2)
    out = {"mode": "constructed instances", "ring": str(R)}
    count = 0
    max_n = min(5, R.characteristic - 1)
    for _ in range(ctx.config.get("samples", 12)):
        n = ctx.rng.randint(2, max_n)
        alpha = ctx.rng.randint(2, 4)
        X = _jordan_fiber_random(ctx.rng, R, n, alpha)
        J = jordan_block(n, R)
        f = UniPoly(R, [R.zero()] * alpha + [R.one()])
        A, B = X, J  # [X, J] = X^alpha
        P = _random_invertible(ctx.rng, R, n)
        Pi = P.inverse()
        A, B = P * A * Pi, P * B * Pi
        B = B + eval_poly_at_matrix(_random_poly(ctx.rng, R, 2), A)
        mu = RingValue(R, ctx.rng.randrange(R.size()))
        A, f = A.shift(mu), _shift_poly(f, mu)
        ctx.check(commutator(A, B) == eval_poly_at_matrix(f, A), "construction broke [A,B] = f(A)", A=A, B=B)
        for i in range(1, 6):
            ctx.check(eqs.recurrence_check(A, B, f, i), f"recurrence fails at i={i}", A=A, B=B)
        res = simultaneous_triangularization(A, B)
        ctx.check(res.is_st and st_certificate_ok(A, B, res.P), "pair with [A,B]=f(A) not ST", A=A, B=B)
        ctx.check(is_nilpotent(commutator(A, B)), "[A,B] not nilpotent", A=A, B=B)
        lie = lie_solvability_check(A, B, f)
        ctx.check(lie.status == PASS, "derived series does not vanish at the second step", A=A, B=B)
        count += 1
    out["pairs"] = count
    return out


def _t4(ctx: _Ctx) -> dict:
    R = ctx.ring("GF:7")
    if not (R.is_field and R.is_finite) or R.characteristic <= 3:
        raise HypothesisError("needs a finite prime field of characteristic > 3")
    third = R.inverse(R.from_int(3))
    classes = noncomm = 0
    q = R.size()
    for N, part, kernel in eqs.square_solution_classes(R, 3):
        classes += 1
        if (N * N).is_zero():
            continue  # AB - BA = N^2 = 0: only commuting solutions
        d = len(kernel)
        K = np.array(kernel, dtype=np.int64).reshape(d, 9)
        coeffs = eqs._decode(np.arange(q ** d, dtype=np.int64), q, d)
        fam = (coeffs @ K + np.array(part, dtype=np.int64)) % q
        for row in fam:
            B = Matrix(R, row.reshape(3, 3).tolist())
            A = N + B
            noncomm += 1
            lam = R.mul(A.trace().payload, third)
            ctx.check(eqs.is_solution(eqs.Square(), A, B), "family member is not a solution", A=A, B=B)
            for M, name in ((A, "A"), (B, "B")):
                spec = eigenvalues_in_field(M)
                ctx.check(
                    spec.complete and len(spec.eigenvalues) == 1 and spec.eigenvalues[0][0].payload == lam,
                    f"{name} lacks the sole eigenvalue trace(A)/3",
                    A=A,
                    B=B,
                )
            res = simultaneous_triangularization(A, B)
            ctx.check(res.is_st and st_certificate_ok(A, B, res.P), "non-commuting solution not ST", A=A, B=B)
    ctx.check(noncomm > 0, "no non-commuting solution exists")
    half = RingValue(R, R.inverse(R.from_int(2)))
    inst = (jordan_block(3, R), Matrix.block_diag(R, [Matrix.zeros(1, R), jordan_block(2, R).scale(half)]))
    ctx.check(eqs.is_solution(eqs.Square(), *inst) and not commutator(*inst).is_zero(), "(J_3, diag(0, J_2/2)) is not a non-commuting solution")
    return {
        "mode": "exhaustive up to simultaneous conjugation",
        "ring": str(R),
        "similarity_classes": classes,
        "non_commuting_solutions": noncomm,
    }


def _t5(ctx: _Ctx) -> dict:
    R = ctx.ring("GF:5")
    _need_field(R, 2)
    out = {"mode": "exhaustive finite instance", "ring": str(R)}
    p = R.characteristic
    cases = []
    if p > 3:
        cases.append(("diag(0,1,2)", Matrix.diag(R, [0, 1, 2]), (2, 3)))
        P = _random_invertible(ctx.rng, R, 3)
        cases.append(("conjugate of diag(0,1,3)", P * Matrix.diag(R, [0, 1, 3]) * P.inverse(), (2,)))
    # t^2 - c with c a non-square: distinct eigenvalues only in the closure
    squares = {R.mul(x, x) for x in R.elements()}
    c = next(x for x in R.elements() if x not in squares)
    cases.append(("companion of t^2 - c", Matrix(R, [[0, c], [1, 0]]), (2, 3)))
    cases.append(("diag(0,1)", Matrix.diag(R, [0, 1]), (2, 3)))
    for name, A, alphas in cases:
        for alpha in alphas:
            fam = eqs.brute_force_solutions(eqs.PowerX(alpha), A, budget=ctx.config.get("budget", eqs.DEFAULT_BUDGET))
            zero = Matrix.zeros(A.n, R)
            ctx.check(fam.solutions == (zero,), f"{name}: X = 0 is not the sole solution", A=A, solutions=list(fam.solutions[:4]))
            out[f"{name}, alpha={alpha}"] = {"candidates": fam.candidates, "solutions": fam.count}
    return out


def _t6(ctx: _Ctx) -> dict:
    R = ctx.ring("Prod:GF:3,GF:5")
    n = 2
    if not _factorial_regular(R, n):
        raise HypothesisError(f"{n}! is a zero-divisor in {R}")
    comps = R.components if hasattr(R, "components") else (R,)
    for C in comps:
        _need_field(C, n)
    out = {"mode": "sampled genericity on a finite reduced ring", "ring": str(R)}
    done = 0
    while done < ctx.config.get("samples", 2):
        A = _random_matrix(ctx.rng, R, n)
        # generic enough: every component has a nonzero discriminant
        disc_ok = True
        for k, C in enumerate(comps):
            a, b = A.rows[0][0], A.rows[0][1]
            c, d = A.rows[1][0], A.rows[1][1]
            pick = (lambda x: x[k]) if len(comps) > 1 else (lambda x: x)
            tr = C.add(pick(a), pick(d))
            det = C.sub(C.mul(pick(a), pick(d)), C.mul(pick(b), pick(c)))
            disc = C.sub(C.mul(tr, tr), C.mul(C.from_int(4), det))
            disc_ok &= not C.is_zero(disc)
        if not disc_ok:
            continue
        fam = eqs.brute_force_solutions(eqs.PowerX(2), A, budget=ctx.config.get("budget", eqs.DEFAULT_BUDGET))
        ctx.check(fam.solutions == (Matrix.zeros(n, R),), "non-zero solution for a generic A", A=A, solutions=list(fam.solutions[:4]))
        out[f"sample{done}"] = {"A": A, "candidates": fam.candidates, "solutions": fam.count}
        done += 1
    return out


def _t7(ctx: _Ctx) -> dict:
    out = {"mode": "exhaustive finite instance"}
    for R in ctx.rings(["GF:5", "Zmod:9", "Zmod:25", "Dual:GF:3"]):
        n = 2
        if not _factorial_regular(R, n):
            raise HypothesisError(f"{n}! is a zero-divisor in {R}")
        As = [("diag(0,1)", Matrix.diag(R, [0, 1])), ("random", _random_matrix(ctx.rng, R, n))]
        for name, A in As:
            for alpha in (2, 3):
                fam = eqs.brute_force_solutions(eqs.PowerX(alpha), A, budget=ctx.config.get("budget", eqs.DEFAULT_BUDGET))
                worst = 0
                for X in fam.solutions:
                    rep = eqs.jacobson_nilpotency_check(A, X, alpha)
                    ctx.check(rep.status == PASS, "solution violates nilpotency", A=A, X=X)
                    worst = max(worst, rep.metrics["X_nilindex"] or 0)
                out[f"{R} {name} alpha={alpha}"] = {"solutions": fam.count, "max_nilindex": worst}
    return out


def _t8(ctx: _Ctx) -> dict:
    out = {"mode": "ideal membership over Q(a_ij) via block-order Groebner basis"}
    char = ctx.config.get("char", 0)
    for alpha in ctx.config.get("alphas", (2, 3)):
        e = 2 * alpha - 1
        rep = eqs.generic_membership_check(2, alpha, e, char=char, time_limit=ctx.config.get("time_limit", 300))
        if rep.status == INCONCLUSIVE:
            raise BudgetExceeded(rep.detail)
        ctx.check(rep.status == PASS, f"alpha={alpha}: X^alpha or x^{e} not in the ideal", **rep.artifacts)
        neg = eqs.generic_membership_check(2, alpha, e - 1, char=char, expect="nonmember", time_limit=ctx.config.get("time_limit", 300))
        ctx.check(neg.status == PASS, f"alpha={alpha}: x^{e - 1} unexpectedly in the ideal", **neg.artifacts)
        out[f"alpha={alpha}"] = {
            "basis_size": rep.metrics["basis_size"],
            "X_alpha_members": all(rep.metrics["X_alpha_members"].values()),
            f"x^{e}_members": all(rep.metrics["x_power_members"].values()),
            f"x^{e - 1}_members": any(neg.metrics["x_power_members"].values()),
        }
    return out


def _t9(ctx: _Ctx) -> dict:
    p = ctx.config.get("char", 32003)
    F = GF(p)
    out = {"mode": "random specialization of the generic matrix", "field": str(F)}
    cases = [(2, a) for a in (2, 3, 4)] + list(ctx.config.get("extra_cases", ()))
    for n, alpha in cases:
        e = (alpha - 1) * n + 1
        minimal = []
        for _ in range(ctx.config.get("samples", 2)):
            A = _random_matrix(ctx.rng, F, n)
            rep = eqs.specialized_membership_check(A, alpha, e, F, time_limit=ctx.config.get("time_limit", 600))
            if rep.status == INCONCLUSIVE:
                raise BudgetExceeded(rep.detail)
            ctx.check(rep.status == PASS, f"n={n}, alpha={alpha}: membership fails", A=A)
            minimal.append(max(v for v in rep.metrics["minimal_exponents"].values() if v is not None) if rep.status == PASS else None)
        out[f"n={n}, alpha={alpha}"] = {"claimed_exponent": e, "observed_minimal": minimal}
    return out


def _t10(ctx: _Ctx) -> dict:
    out = {"mode": "exhaustive instance search plus sampled ideal words"}
    samples = ctx.config.get("word_samples", 20)
    R = ctx.ring("Zmod:4")
    g = UniPoly(R, [R.one(), R.one()])
    eq = eqs.PowerXg(2, g)
    pairs, total = eqs.enumerate_solution_pairs(eq, R, 2)
    inst = [(A, X) for A, X in pairs if not commutator(A, X).is_zero() and is_nilpotent(X)]
    limit = ctx.config.get("instances", 24)
    worst = 0
    for A, X in inst[:limit]:
        rep = eqs.nilpotent_ideal_check(A, X, eq, samples, seed=ctx.rng.randrange(1 << 30))
        if rep.status == INCONCLUSIVE:
            raise HypothesisError(rep.detail)
        ctx.check(rep.status == PASS, "non-nilpotent element in the ideal", A=A, X=X)
        worst = max(worst, rep.metrics["max_nilindex"])
    out[str(R)] = {"pairs_scanned": total, "instances": len(inst), "checked": min(limit, len(inst)), "max_nilindex": worst}
    F = GF(7)
    worst = 0
    for n, alpha in ((3, 2), (4, 2), (4, 3)):
        X = _jordan_fiber_random(ctx.rng, F, n, alpha)
        A = jordan_block(n, F)
        rep = eqs.nilpotent_ideal_check(A, X, eqs.PowerXg(alpha, UniPoly(F, [1])), samples, seed=ctx.rng.randrange(1 << 30))
        ctx.check(rep.status == PASS, "non-nilpotent element in the ideal", A=A, X=X)
        worst = max(worst, rep.metrics["max_nilindex"])
    out["GF:7 Jordan-fiber instances"] = {"checked": 3, "max_nilindex": worst}
    return out


def _t11(ctx: _Ctx) -> dict:
    out = {"mode": "exhaustive finite instance"}
    R = ctx.ring("Zmod:9")
    A = Matrix.diag(R, [0, 1])
    P = Matrix.from_values(R, [[1, 1], [0, 1]])
    Ac = P * A * P.inverse()
    commuting = 0
    for B in eqs.iter_matrices(R, 2):
        if not commutator(A, B).is_zero():
            continue
        commuting += 1
        Q = simultaneous_diagonalization(A, B)
        ctx.check(Q is not None and (Q.inverse() * B * Q).is_diagonal(), "commuting B not diagonal", B=B)
        p = express_as_polynomial(A, B)
        ctx.check(p.degree <= 1 and p(A) == B, "B is not a polynomial in A", B=B)
        Bc = P * B * P.inverse()
        p2 = express_as_polynomial(Ac, Bc, P)
        ctx.check(p2(Ac) == Bc, "conjugated B is not a polynomial in conjugated A", B=Bc)
    out[str(R)] = {"commuting_B": commuting}
    try:
        simultaneous_diagonalization(Matrix.diag(R, [0, 3]), Matrix.diag(R, [0, 3]))
        rejected = False
    except HypothesisError:
        rejected = True
    if R == Mod(9):
        ctx.check(rejected, "zero-divisor eigenvalue gap was not rejected")
    F = GF(5)
    A3 = Matrix.diag(F, [0, 1, 2])
    p = express_as_polynomial(A3, Matrix.diag(F, [1, 2, 4]))
    ctx.check(p == UniPoly(F, [1, 3, 3]), "interpolation differs from 1 + 3t + 3t^2")
    out["GF:5 interpolation"] = str(p)
    return out


def _t12(ctx: _Ctx) -> dict:
    out = {"mode": "exhaustive finite instance"}
    for R in ctx.rings(["GF:3", "Zmod:4", "Zmod:9"]):
        A = Matrix.diag(R, [0, 1])
        premise = 0
        total = 0
        for B in eqs.iter_matrices(R, 2):
            total += 1
            rep = diago_commutation_check(A, B, Matrix.identity(2, R))
            premise += rep.metrics["premise"]
            ctx.check(rep.status == PASS, "A commutes with [A,B] but not with B", A=A, B=B)
        out[str(R)] = {"B_scanned": total, "premise_holds": premise}
    # n = 3 over GF(3), vectorised
    q = 3
    idx = np.arange(q ** 9, dtype=np.int64)
    Bs = eqs._decode(idx, q, 9).reshape(-1, 3, 3)
    A = np.diag([0, 1, 2]).astype(np.int64)
    C = (A @ Bs - Bs @ A) % q
    D = (A @ C - C @ A) % q
    prem = ~D.reshape(len(idx), -1).any(axis=1)
    concl = ~C.reshape(len(idx), -1).any(axis=1)
    bad = np.flatnonzero(prem & ~concl)
    ctx.check(bad.size == 0, "GF(3), n=3: A commutes with [A,B] but not with B", B=Bs[bad[0]].tolist() if bad.size else None)
    out["GF:3 n=3 diag(0,1,2)"] = {"B_scanned": int(idx.size), "premise_holds": int(prem.sum())}
    return out


def _t13(ctx: _Ctx) -> dict:
    out = {"mode": "exhaustive finite instance"}
    cases = [(R, 2) for R in ctx.rings(["Zmod:9"])]
    if not ctx.config.get("ring"):
        cases += [(Mod(27), 2), (Mod(27), 3), (GF(5), 2)]
    for R, alpha in cases:
        if not _factorial_regular(R, 2):
            raise HypothesisError(f"2 is a zero-divisor in {R}")
        for name, P in (("diag(0,1)", Matrix.identity(2, R)), ("conjugated", Matrix.from_values(R, [[1, 1], [0, 1]]))):
            A = P * Matrix.diag(R, [0, 1]) * P.inverse()
            fam = eqs.brute_force_solutions(eqs.PowerX(alpha), A, budget=ctx.config.get("budget", eqs.DEFAULT_BUDGET))
            diag = mu_ok = 0
            for X in fam.solutions:
                Y = P.inverse() * X * P
                d = ctx.check(Y.is_diagonal(), "solution not diagonal in A's eigenbasis", A=A, X=X)
                m = ctx.check(all(R.is_zero(R.power(Y.rows[i][i], alpha)) for i in range(2)), "mu^alpha != 0", A=A, X=X)
                diag += d
                mu_ok += m
            out[f"{R} {name} alpha={alpha}"] = {
                "candidates": fam.candidates,
                "solutions": fam.count,
                "diagonal": diag,
                "mu_alpha_zero": mu_ok,
            }
    return out


def _t14(ctx: _Ctx) -> dict:
    out = {"mode": "exhaustive finite instance"}
    cases = [
        (GF(2), [0, 0, 1], [(0, 2), (1, 1)], [1, 1]),
        (Mod(9), [0, 1], [(0, 1), (1, 1)], [1]),
        (Mod(4), [0, 1], [(0, 1), (1, 1)], [1, 1]),
        (Dual(GF(2)), [0, 1], [(0, 1), (1, 1)], [1]),
    ]
    if ctx.config.get("ring"):
        R = ctx.ring("")
        cases = [(R, [0, 1], [(0, 1), (1, 1)], [1])]
    for R, diag, blocks, gco in cases:
        A = Matrix.diag(R, diag)
        g = UniPoly.from_values(R, gco)
        eq = eqs.PowerXg(2, g)
        fam = eqs.brute_force_solutions(eq, A, "nilpotent-only", budget=ctx.config.get("budget", eqs.DEFAULT_BUDGET))
        for X in fam.solutions:
            rep = eqs.block_structure_check(A, X, blocks, Matrix.identity(A.n, R), eq)
            if rep.status == INCONCLUSIVE:
                raise HypothesisError(rep.detail)
            ctx.check(rep.status == PASS, "block conclusion violated", A=A, X=X)
            ctx.check((X ** 2).is_zero(), "X^alpha != 0 although g(0) is a unit", A=A, X=X)
        out[f"{R} A=diag{tuple(diag)} g={'1+t' if len(gco) == 2 else '1'}"] = {"candidates": fam.candidates, "nilpotent_solutions": fam.count}
    # g(0) not a unit: the block relation holds, X^alpha = 0 is not claimed
    R = Mod(8)
    tau = RingValue(R, 2)
    X = Matrix.identity(2, R).scale(tau)
    eq = eqs.PowerXg(2, UniPoly(R, [2]))
    rep = eqs.block_structure_check(Matrix.diag(R, [0, 1]), X, [(0, 1), (1, 1)], Matrix.identity(2, R), eq)
    ctx.check(rep.status == PASS and not rep.metrics["X_alpha_zero"] and not rep.metrics["g0_unit"], "tau*I case misjudged")
    out["Zmod:8 tau*I, g=tau"] = {"X_alpha_zero": rep.metrics["X_alpha_zero"], "g0_unit": rep.metrics["g0_unit"]}
    return out


# ---------------------------------------------------------------------------
# counterexamples


def char3_pair() -> tuple[Matrix, Matrix]:
    F = GF(3)
    A = Matrix.from_values(F, [[0, 1, 0], [0, 0, 2], [-1, 0, 0]])
    B = Matrix.from_values(F, [[0, 0, 0], [0, 0, -1], [1, 0, 0]])
    return A, B


def cube_pair() -> tuple[Matrix, Matrix]:
    Q = Rationals()
    A = Matrix.from_values(Q, [[0, "4/3", "-1/3", -1], [1, 0, "3/4", "-3/4"], [1, 0, 0, 0], [1, 0, 0, 0]])
    return A, jordan_block(4, Q)


def starr_pair(base: RingSpec) -> tuple[Matrix, Matrix]:
    R = Dual(base)
    eps = (base.zero(), base.one())
    z = R.zero()
    return Matrix(R, [[z, eps], [z, z]]), Matrix(R, [[z, z], [eps, z]])


def _c1(ctx: _Ctx) -> dict:
    A, B = char3_pair()
    F = A.ring
    ctx.check(commutator(A, B) == A * A, "[A,B] != A^2", A=A, B=B)
    ctx.check(A ** 3 == Matrix.identity(3, F), "A^3 != I", A=A)
    res = simultaneous_triangularization(A, B)
    ctx.check(res.status == "NotST", "pair unexpectedly ST", A=A, B=B, P=res.P)
    return {"mode": "exact instance", "ring": str(F), "st_status": res.status, "stage": res.stage, "charpoly_A": str(A.charpoly())}


def _c2(ctx: _Ctx) -> dict:
    A, B = cube_pair()
    ctx.check(eqs.residual(eqs.Cube(), A, B).is_zero(), "cube residual non-zero", A=A, B=B)
    ctx.check(is_nilpotent(A) and is_nilpotent(B), "A or B not nilpotent", A=A, B=B)
    d = commutator(A, B).det()
    ctx.check(not d.is_zero(), "[A,B] singular", A=A, B=B)
    ctx.check(common_eigenvector(A, B) is None, "a common eigenvector exists", A=A, B=B)
    res = simultaneous_triangularization(A, B)
    ctx.check(res.status == "NotST", "pair unexpectedly ST", A=A, B=B)
    pl = property_L_check(A, B, [1, 2, 3])
    ctx.check(len(pl.metrics["violations"]) == 3, "A + aB nilpotent for some a in {1,2,3}", A=A, B=B)
    return {
        "mode": "exact instance",
        "det_commutator": str(d),
        "st_status": res.status,
        "non_nilpotent_a": pl.metrics["violations"],
        "lie_profile": lie_solvability_check(A, B).metrics,
    }


def _c3(ctx: _Ctx) -> dict:
    A, B = starr_pair(GF(2))
    R = A.ring
    ctx.check(A * B == B * A, "Starr pair does not commute over Dual(GF(2))")
    swap = Matrix.from_values(R, [[0, 1], [1, 0]])
    ctx.check(A.is_upper_triangular() and (swap * B * swap.inverse()).is_upper_triangular(), "not separately triangularizable")
    elems = list(R.elements())
    unimodular = [(x, y) for x in elems for y in elems if R.is_unit(x) or R.is_unit(y)]
    hits = []
    for v in unimodular:
        Av = tuple(R.dot(r, v) for r in A.rows)
        Bv = tuple(R.dot(r, v) for r in B.rows)
        for la in elems:
            if Av != tuple(R.mul(la, c) for c in v):
                continue
            for lb in elems:
                if Bv == tuple(R.mul(lb, c) for c in v):
                    hits.append((v, la, lb))
    ctx.check(not hits, "common unimodular eigenvector found", vector=str(hits[:1]))
    Aq, Bq = starr_pair(Rationals())
    ctx.check(Aq * Bq == Bq * Aq, "Starr pair does not commute over Dual(Q)")
    return {"mode": "exhaustive finite instance", "ring": str(R), "unimodular_vectors": len(unimodular), "common_eigenvectors": len(hits)}


def _c4(ctx: _Ctx) -> dict:
    R = Mod(27)
    U = Matrix.identity(2, R).scale(3)
    k = matrix_nilindex(U, 5)
    ctx.check(k == 3 and k > U.n, "nilindex of 3I is not 3", U=U)
    return {"mode": "exact instance", "nilindex": k, "n": U.n}


def _c5(ctx: _Ctx) -> dict:
    R = Mod(8)
    tau = RingValue(R, 2)
    X = Matrix.identity(2, R).scale(tau)
    g = UniPoly(R, [tau.payload])
    ctx.check(not (X ** 2).is_zero() and (X ** 3).is_zero(), "tau I does not have nilindex 3", X=X)
    ctx.check((X ** 2 * eval_poly_at_matrix(g, X)).is_zero(), "X^2 g(X) != 0", X=X)
    res = resultant(X.charpoly(), g)
    det = eval_poly_at_matrix(g, X).det()
    ctx.check(res == det and res == 4, "resultant differs from det g(X) = 4", X=X)
    ctx.check(not R.is_unit(res.payload), "resultant is a unit", X=X)
    return {"mode": "exact instance", "resultant": str(res), "det_g_X": str(det), "resultant_unit": False}


# ---------------------------------------------------------------------------
# dimension experiments


def _dims(ctx: _Ctx, runs: list[tuple]) -> dict:
    out = {"mode": "Groebner basis over GF(32003)" if ctx.config.get("char", 32003) == 32003 else "Groebner basis"}
    for system, n, alpha in runs:
        rep = variety_dimension_experiment(
            system,
            n,
            alpha,
            char=ctx.config.get("char", 32003),
            order=ctx.config.get("order", "degrevlex"),
            max_pairs=ctx.config.get("max_pairs", 200_000),
            time_limit=ctx.config.get("time_limit", 600),
        )
        if rep.status == INCONCLUSIVE:
            raise BudgetExceeded(rep.detail)
        m = rep.metrics
        ctx.check(rep.status == PASS, f"{system}(n={n}, alpha={alpha}): dimension {m.get('dimension')}", **rep.artifacts)
        key = system + (f"({n},{alpha})" if alpha else f"({n})")
        out[key] = {k: m[k] for k in ("dimension", "expected", "total", "expected_total", "basis_size") if k in m}
        ctx.timing[key] = rep.timing.get("ms")
    return out


def _select(ctx: _Ctx, system: str, default: list[tuple]) -> list[tuple]:
    n, alpha = ctx.config.get("n"), ctx.config.get("alpha")
    if n is None and alpha is None:
        return default
    runs = [r for r in default if (n is None or r[1] == n) and (alpha is None or r[2] == alpha)]
    return runs or [(system, n or default[0][1], alpha if alpha is not None else default[0][2])]


def _d1(ctx):
    return _dims(ctx, _select(ctx, "Y", [("Y", 2, 2), ("Y", 3, 2), ("Y", 3, 3)]))


def _d2(ctx):
    runs = _select(ctx, "S_fiber", [("S_fiber", 2, 2), ("S_fiber", 2, 3)])
    return _dims(ctx, runs + [("S", n, a) for _, n, a in runs if n == 2])


def _d3(ctx):
    return _dims(ctx, _select(ctx, "N", [("N", 2, None), ("N", 3, None)]))


def _d4(ctx):
    return _dims(ctx, _select(ctx, "W", [("W", 2, None)]))


def _d5(ctx: _Ctx) -> dict:
    out = {"mode": "exact linear algebra over Q"}
    for n in range(1, 6):
        d = centralizer_dimension(jordan_block(n, Rationals()))
        ctx.check(d == n, f"dim ker ad J_{n} = {d}")
        out[f"n={n}"] = {"centralizer": d, "orbit": n * n - d}
    return out


def _d6(ctx: _Ctx) -> dict:
    ctx.config.setdefault("max_pairs", 1_000_000)
    ctx.config.setdefault("time_limit", 1800)
    return _dims(ctx, [("V4_fiber", 4, None), ("V4_commuting_fiber", 4, None)])


# ---------------------------------------------------------------------------
# registry and runners


REGISTRY: dict[str, Entry] = {
    e.check_id: e
    for e in [
        Entry("T1", "n=2 square-equation solutions commute", "n = 2 solutions of A^2 - 2AB + B^2 = 0 satisfy AB = BA", _t1),
        Entry("T2", "square-equation solutions are ST", "solutions of A^2 - 2AB + B^2 = 0 are simultaneously triangularizable when char > n", _t2),
        Entry("T3", "[A,B] = f(A) implies ST", "A^i B - B A^i = i A^(i-1) f(A), solvable span, and ST when [A,B] = f(A), char > n", _t3),
        Entry("T4", "sole eigenvalue for non-commuting 3x3 solutions", "non-commuting 3x3 solutions of A^2 - 2AB + B^2 = 0 have the sole eigenvalue trace(A)/3", _t4),
        Entry("T5", "X = 0 for A with distinct eigenvalues", "AX - XA = X^alpha has only X = 0 when A has n distinct eigenvalues, char > n", _t5),
        Entry("T6", "X = 0 over reduced rings for generic A", "over a reduced ring with n! regular, a generic A admits only X = 0", _t6),
        Entry("T7", "solutions are nilpotent", "n! [A,X]^(2^n - 1) = 0 and X nilpotent when n! is not a zero-divisor", _t7),
        Entry("T8", "generic n=2 ideal membership", "generic 2x2 A: AX - XA = X^alpha = 0 and x_ij^(2 alpha - 1) = 0", _t8),
        Entry("T9", "exponent (alpha-1)n+1 probe", "conjectured x_ij^((alpha - 1) n + 1) = 0 for generic A", _t9, "full"),
        Entry("T10", "nilpotent two-sided ideal", "P (AX - XA) Q is nilpotent for words P, Q when XA - AX = X^alpha g(X), X nilpotent", _t10),
        Entry("T11", "commuting with a good diagonalizable A", "simultaneous diagonalization and B = p(A) with deg p < n", _t11),
        Entry("T12", "A commuting with [A,B]", "A diagonalizable with regular gaps and [A,[A,B]] = 0 imply AB = BA", _t12),
        Entry("T13", "diagonal solutions with mu^alpha = 0", "diagonalizable A with regular gaps: X = P diag(mu_i) P^-1 with mu_i^alpha = 0", _t13),
        Entry("T14", "block structure of nilpotent solutions", "X = P diag(X_i) P^-1 with X_i^alpha g(X_i) = 0, and X^alpha = 0 when g(0) is a unit", _t14),
        Entry("C1", "characteristic 3 pair", "[A,B] = A^2 and A^3 = I over GF(3) while A, B are not ST", _c1),
        Entry("C2", "4x4 cube-equation pair", "a nilpotent 4x4 solution of the cube equation with [A,B] invertible, not ST, no property L", _c2),
        Entry("C3", "commuting pair without common eigenvector", "commuting triangularizable pair over dual numbers with no common unimodular eigenvector", _c3),
        Entry("C4", "nilindex beyond n", "3I_2 over Z/27 is nilpotent with U^2 != 0", _c4),
        Entry("C5", "non-unit resultant", "tau I_2 with g = tau: X^2 g(X) = 0, X^2 != 0, Res(chi, g) not a unit", _c5),
        Entry("D1", "dim Y(n,alpha) = n - 1", "the fiber {X : X J_n - J_n X = X^alpha} has dimension n - 1", _d1),
        Entry("D2", "dim S(2,alpha) = 3", "pairs with B nilpotent and AB - BA = A^alpha form a variety of dimension n^2 - 1", _d2),
        Entry("D3", "dim N_n = n^2 - n", "the nilpotent cone has dimension n^2 - n", _d3),
        Entry("D4", "dim W_2 = 3", "commuting nilpotent pairs have dimension n^2 - 1", _d4),
        Entry("D5", "centralizer of J_n", "dim ker ad J_n = n, so the regular nilpotent orbit has dimension n^2 - n", _d5),
        Entry("D6", "V4 dimensions", "cube-equation fiber over J_4 has dimension 6 (total 18); commuting variant 2 (total 14)", _d6, "extended"),
    ]
}


def list_checks() -> list[Entry]:
    return list(REGISTRY.values())


def run_check(check_id: str, config: dict | None = None) -> CheckReport:
    """Run one registry entry.  ``config`` may set ring, seed, budgets and sample counts."""
    if check_id not in REGISTRY:
        raise KeyError(f"unknown check id {check_id!r}")
    entry = REGISTRY[check_id]
    config = dict(config or {})
    seed = config.pop("seed", None)
    seed = default_seed(check_id) if seed is None else int(seed)
    ctx = _Ctx(seed, config)
    start = time.perf_counter()
    try:
        metrics = entry.fn(ctx)
        status, detail, artifacts = PASS, "", {}
        if ctx.failures:
            label, cert = ctx.failures[0]
            status = FAIL
            detail = f"{len(ctx.failures)} assertion(s) failed; first: {label}"
            artifacts = cert
        elif ctx.asserts == 0:
            status, detail = INCONCLUSIVE, "no assertion executed"
    except (BudgetExceeded, HypothesisError, RingError) as exc:
        metrics = {}
        kind = "budget" if isinstance(exc, BudgetExceeded) else "hypothesis"
        status, detail, artifacts = INCONCLUSIVE, f"{kind}: {exc}", {}
    metrics["assertions"] = ctx.asserts
    timing = {"ms": round((time.perf_counter() - start) * 1000)}
    timing.update({k: v for k, v in ctx.timing.items() if v is not None})
    return CheckReport(check_id, status, detail, metrics, seed, artifacts, entry.anchor, timing)


def profile_ids(profile: str) -> list[str]:
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    rank = PROFILES.index(profile)
    return [e.check_id for e in REGISTRY.values() if PROFILES.index(e.profile) <= rank]


def _run_one(args):
    check_id, config = args
    return run_check(check_id, config)


def run_all(profile: str = "quick", seed: int | None = None, workers: int = 1, config: dict | None = None) -> list[CheckReport]:
    """Run every check of ``profile``; reports come back in registry order."""
    ids = profile_ids(profile)
    jobs = []
    for cid in ids:
        cfg = dict(config or {})
        if seed is not None:
            cfg["seed"] = seed
        jobs.append((cid, cfg))
    if workers <= 1:
        return [_run_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_one, jobs))


__all__ = [
    "Entry",
    "PROFILES",
    "REGISTRY",
    "char3_pair",
    "cube_pair",
    "default_seed",
    "list_checks",
    "profile_ids",
    "run_all",
    "run_check",
    "starr_pair",
]

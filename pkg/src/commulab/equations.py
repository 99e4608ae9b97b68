"""Matrix equations, their residuals, solvers and the structural checks built on them.

Equation tags (the pair is always ``(A, X)`` or ``(A, B)`` in this order):

========== =====================================================
GenBinom k ``sum_j (-1)^j C(k,j) A^(k-j) B^j``
Square     ``A^2 - 2AB + B^2``
SimN       ``N^2 - [N, B]`` with ``N = A - B``
LieSquare  ``AX - XA - X^2``
Cube       ``A^3 - 3A^2B + 3AB^2 - B^3``
PowerA a   ``AB - BA - A^a``
PowerX a   ``AX - XA - X^a``
PowerXg a g ``XA - AX - X^a g(X)``
========== =====================================================
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb, factorial
from typing import Callable, Iterator, Sequence

import numpy as np

from .groebner import BudgetExceeded, buchberger, normal_form, parametric_normal_form
from .matrix import (
    Matrix,
    MatrixError,
    commutator,
    eval_poly_at_matrix,
    matrix_nilindex,
    nilpotency_bound,
    nullspace,
    rank,
    rref,
)
from .multipoly import MonomialOrder, MultiPoly
from .poly import UniPoly
from .report import FAIL, INCONCLUSIVE, PASS, CheckReport
from .rings import Mod, RingError, RingSpec, RingValue
from .spectral import HypothesisError
from .symbolic import (
    coefficient_field,
    entries,
    entry_vars,
    mat_pow,
    sym_matrix,
    system_generic_powerX,
    system_specialized_powerX,
)

DEFAULT_BUDGET = 20_000_000
_CHUNK = 1 << 16


class PivotFailure(ArithmeticError):
    def __init__(self, entry: tuple[int, int], pivot, trace: list[str]):
        self.entry, self.pivot, self.trace = entry, pivot, trace
        super().__init__(f"pivot {pivot} for x{entry[0]}{entry[1]} is not invertible")


# ---------------------------------------------------------------------------
# equation identifiers


@dataclass(frozen=True)
class EquationId:
    tag: str
    k: int | None = None
    alpha: int | None = None
    g: UniPoly | None = None

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ValueError(f"unknown equation tag {self.tag!r}")
        if self.tag == "GenBinom" and (self.k is None or self.k < 2):
            raise ValueError("GenBinom needs k >= 2")
        if self.tag in ("PowerA", "PowerX", "PowerXg") and (self.alpha is None or self.alpha < 2):
            raise ValueError(f"{self.tag} needs alpha >= 2")
        if self.tag == "PowerXg":
            if self.g is None:
                raise ValueError("PowerXg needs g")
            if self.g.coeff(0).is_zero():
                raise ValueError("PowerXg needs g(0) != 0")

    @property
    def binomial_degree(self) -> int | None:
        return {"GenBinom": self.k, "Square": 2, "SimN": 2, "Cube": 3}.get(self.tag)

    def validate(self, ring: RingSpec):
        """Reject rings where the equation's hypotheses cannot hold."""
        k = self.binomial_degree
        if k is not None:
            f = ring.from_int(factorial(k))
            if ring.is_zero(f) or ring.is_zero_divisor(f):
                raise HypothesisError(f"{k}! is zero or a zero-divisor in {ring}")
        if self.tag == "PowerXg" and self.g.ring != ring:
            raise RingError(f"g has coefficients in {self.g.ring}, matrices in {ring}")

    def __str__(self):
        if self.tag == "GenBinom":
            return f"GenBinom({self.k})"
        if self.tag in ("PowerA", "PowerX"):
            return f"{self.tag}({self.alpha})"
        if self.tag == "PowerXg":
            return f"PowerXg({self.alpha}, {self.g})"
        return self.tag


_TAGS = ("GenBinom", "Square", "SimN", "LieSquare", "Cube", "PowerA", "PowerX", "PowerXg")


def GenBinom(k: int) -> EquationId:
    return EquationId("GenBinom", k=k)


def Square() -> EquationId:
    return EquationId("Square")


def SimN() -> EquationId:
    return EquationId("SimN")


def LieSquare() -> EquationId:
    return EquationId("LieSquare")


def Cube() -> EquationId:
    return EquationId("Cube")


def PowerA(alpha: int) -> EquationId:
    return EquationId("PowerA", alpha=alpha)


def PowerX(alpha: int) -> EquationId:
    return EquationId("PowerX", alpha=alpha)


def PowerXg(alpha: int, g: UniPoly) -> EquationId:
    return EquationId("PowerXg", alpha=alpha, g=g)


def parse_equation(name: str, alpha: int | None = None, k: int | None = None, g: UniPoly | None = None) -> EquationId:
    """CLI names: genbinom, square, simn, liesquare, cube, powerA, powerX, powerXg."""
    key = name.lower()
    table = {
        "genbinom": lambda: GenBinom(k if k is not None else 2),
        "square": Square,
        "simn": SimN,
        "liesquare": LieSquare,
        "cube": Cube,
        "powera": lambda: PowerA(alpha or 2),
        "powerx": lambda: PowerX(alpha or 2),
        "powerxg": lambda: PowerXg(alpha or 2, g),
    }
    if key not in table:
        raise ValueError(f"unknown equation {name!r}")
    return table[key]()


# ---------------------------------------------------------------------------
# residuals


def _binomial(A: Matrix, B: Matrix, k: int) -> Matrix:
    acc = Matrix.zeros(A.n, A.ring)
    for j in range(k + 1):
        acc = acc + (A ** (k - j) * B ** j).scale((-1) ** j * comb(k, j))
    return acc


def residual(eq: EquationId, A: Matrix, X: Matrix) -> Matrix:
    """Left side minus right side; zero iff ``(A, X)`` solves ``eq``."""
    if A.ring != X.ring or A.n != X.n:
        raise MatrixError("A and X must share ring and size")
    eq.validate(A.ring)
    t = eq.tag
    if t in ("GenBinom", "Square", "Cube"):
        return _binomial(A, X, eq.binomial_degree)
    if t == "SimN":
        N = A - X
        return N * N - commutator(N, X)
    if t == "LieSquare":
        return commutator(A, X) - X * X
    if t == "PowerA":
        return commutator(A, X) - A ** eq.alpha
    if t == "PowerX":
        return commutator(A, X) - X ** eq.alpha
    return commutator(X, A) - X ** eq.alpha * eval_poly_at_matrix(eq.g, X)


def is_solution(eq: EquationId, A: Matrix, X: Matrix) -> bool:
    return residual(eq, A, X).is_zero()


def shift_invariance_check(eq: EquationId, A: Matrix, B: Matrix, mu) -> bool:
    """(A - mu I, B - mu I) solves the binomial equation whenever (A, B) does."""
    if eq.binomial_degree is None:
        raise ValueError("shift invariance is stated for the binomial equations")
    if not is_solution(eq, A, B):
        raise HypothesisError("input pair is not a solution")
    return is_solution(eq, A.shift(mu), B.shift(mu))


def recurrence_check(A: Matrix, B: Matrix, f: UniPoly, i: int) -> bool:
    """A^i B - B A^i == i A^(i-1) f(A), given [A, B] = f(A)."""
    if i < 1:
        raise ValueError("i must be >= 1")
    fA = eval_poly_at_matrix(f, A)
    if commutator(A, B) != fA:
        raise HypothesisError("[A, B] != f(A)")
    Ai = A ** i
    return Ai * B - B * Ai == (A ** (i - 1) * fA).scale(i)


def sim_bridge(X: Matrix, B: Matrix) -> tuple[Matrix, Matrix]:
    """From XB - BX = X^2 build the pair (X + B, B) solving the square equation."""
    if commutator(X, B) != X * X:
        raise HypothesisError("XB - BX != X^2")
    return X + B, B


# ---------------------------------------------------------------------------
# solution families


@dataclass(frozen=True)
class SolutionFamily:
    kind: str  # "Explicit" | "Parametrized" | "IdealDescribed"
    solutions: tuple = ()
    params: tuple = ()
    trace: tuple = ()
    generators: tuple = ()
    candidates: int = 0
    budget_exhausted: bool = False

    @property
    def count(self) -> int:
        return len(self.solutions)

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "solutions": [M.to_strings() for M in self.solutions],
            "count": self.count,
            "budget_exhausted": self.budget_exhausted,
        }
        if self.params:
            out["params"] = list(self.params)
        if self.trace:
            out["trace"] = list(self.trace)
        if self.generators:
            out["generators"] = [str(g) for g in self.generators]
        if self.candidates:
            out["candidates"] = self.candidates
        return out


def solve_jordan_fiber(n: int, alpha: int, params: Sequence, ring: RingSpec) -> SolutionFamily:
    """Strictly upper triangular X with X J - J X = X^alpha and first row ``params``.

    Superdiagonal by superdiagonal, the (i, j) entry of the equation is affine
    in the single unknown x_{i+1,j}; its slope (the pivot) is read off by
    evaluating the residual entry at 0 and 1.
    """
    if not ring.is_field:
        raise RingError(f"{ring} is not a field")
    if alpha < 2:
        raise ValueError("alpha must be >= 2")
    if len(params) != n - 1:
        raise ValueError(f"expected {n - 1} parameters x12..x1{n}")
    R = ring
    rows = [[R.zero()] * n for _ in range(n)]
    for j, v in enumerate(params, start=1):
        rows[0][j] = RingValue.of(R, v).payload
    J = Matrix(R, [[R.one() if c == r + 1 else R.zero() for c in range(n)] for r in range(n)])
    trace = [f"x1{j + 1} = {R.format_element(rows[0][j])} (free)" for j in range(1, n)]

    def entry(i, j):
        X = Matrix(R, rows)
        return (X * J - J * X - X ** alpha).rows[i][j]

    for d in range(2, n):  # equation (i, i+d) fixes x_{i+1, i+d}
        for i in range(0, n - d):
            j = i + d
            rows[i + 1][j] = R.zero()
            r0 = entry(i, j)
            rows[i + 1][j] = R.one()
            r1 = entry(i, j)
            pivot = R.sub(r1, r0)
            if not R.is_unit(pivot):
                trace.append(f"x{i + 2}{j + 1}: pivot {R.format_element(pivot)} vanishes")
                raise PivotFailure((i + 2, j + 1), RingValue(R, pivot), trace)
            rows[i + 1][j] = R.neg(R.mul(r0, R.inverse(pivot)))
            trace.append(f"x{i + 2}{j + 1} = {R.format_element(rows[i + 1][j])} (pivot {R.format_element(pivot)})")
    X = Matrix(R, rows)
    if not X.is_upper_triangular(strict=True) or not (X * J - J * X - X ** alpha).is_zero():
        raise AssertionError("Jordan-fiber construction failed to verify")
    names = tuple(f"x1{j}" for j in range(2, n + 1))
    return SolutionFamily("Parametrized", (X,), names, tuple(trace))


def jordan_fiber_similarity_check(X: Matrix) -> bool:
    """rank(X^k) = n - k for all k, i.e. the nilpotent X is similar to J_n."""
    n = X.n
    P = Matrix.identity(n, X.ring)
    for k in range(n + 1):
        if rank(P) != n - k:
            return False
        P = P * X
    return True


# ---------------------------------------------------------------------------
# exhaustive enumeration


def _numpy_modulus(ring: RingSpec) -> int | None:
    if isinstance(ring, Mod) and ring.m < (1 << 15):
        return ring.m
    return None


def _np_matmul(a, b, m):
    return np.matmul(a, b) % m


def _np_power(a, k, m):
    n = a.shape[-1]
    out = np.broadcast_to(np.eye(n, dtype=np.int64), a.shape).copy()
    for _ in range(k):
        out = _np_matmul(out, a, m)
    return out


def _np_residual(eq: EquationId, A, X, m: int):
    mm = lambda a, b: _np_matmul(a, b, m)  # noqa: E731
    t = eq.tag
    if t in ("GenBinom", "Square", "Cube"):
        k = eq.binomial_degree
        acc = 0
        for j in range(k + 1):
            term = mm(_np_power(A, k - j, m), _np_power(X, j, m))
            acc = acc + ((-1) ** j * comb(k, j)) % m * term
        return acc % m
    if t == "SimN":
        N = (A - X) % m
        return (mm(N, N) - mm(N, X) + mm(X, N)) % m
    if t == "LieSquare":
        return (mm(A, X) - mm(X, A) - mm(X, X)) % m
    if t == "PowerA":
        return (mm(A, X) - mm(X, A) - _np_power(A, eq.alpha, m)) % m
    if t == "PowerX":
        return (mm(A, X) - mm(X, A) - _np_power(X, eq.alpha, m)) % m
    n = X.shape[-1]
    ident = np.eye(n, dtype=np.int64)
    gX = np.zeros_like(X)
    for c in reversed(eq.g.coeffs):
        gX = (mm(gX, X) + int(c) * ident) % m
    return (mm(X, A) - mm(A, X) - mm(_np_power(X, eq.alpha, m), gX)) % m


def _np_nilpotent(X, bound: int, m: int):
    P, e = X, 1
    while e < bound:
        P = _np_matmul(P, P, m)
        e *= 2
    return ~P.reshape(P.shape[0], -1).any(axis=1)


def _decode(idx, q: int, width: int):
    digits = np.empty((idx.shape[0], width), dtype=np.int64)
    rest = idx.copy()
    for k in range(width - 1, -1, -1):
        digits[:, k] = rest % q
        rest //= q
    return digits


def _check_budget(total: int, budget: int):
    if total > budget:
        raise BudgetExceeded(f"{total} candidates exceed the enumeration budget {budget}")


def iter_matrices(ring: RingSpec, n: int) -> Iterator[Matrix]:
    """All n x n matrices over a finite ring, row-major with the last entry fastest."""
    elems = list(ring.elements())
    for flat in itertools.product(elems, repeat=n * n):
        yield Matrix(ring, [flat[i * n:(i + 1) * n] for i in range(n)])


def brute_force_solutions(
    eq: EquationId,
    A: Matrix,
    filter: str = "all",
    budget: int = DEFAULT_BUDGET,
    method: str = "auto",
) -> SolutionFamily:
    """Every X over the finite ring of A solving ``eq`` (optionally nilpotent only)."""
    R, n = A.ring, A.n
    if not R.is_finite:
        raise RingError(f"cannot enumerate over infinite ring {R}")
    if filter not in ("all", "nilpotent-only"):
        raise ValueError(f"unknown filter {filter!r}")
    eq.validate(R)
    total = R.size() ** (n * n)
    _check_budget(total, budget)
    nil_only = filter == "nilpotent-only"
    bound = n * R.nil_exponent()
    m = _numpy_modulus(R)
    if method == "numpy" and m is None:
        raise ValueError(f"no vectorised path for {R}")
    sols: list[Matrix] = []
    if m is not None and method in ("auto", "numpy"):
        Anp = np.array(A.rows, dtype=np.int64)
        for start in range(0, total, _CHUNK):
            idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
            X = _decode(idx, m, n * n).reshape(-1, n, n)
            ok = ~_np_residual(eq, Anp, X, m).reshape(len(idx), -1).any(axis=1)
            if nil_only and ok.any():
                sel = np.flatnonzero(ok)
                ok[sel] = _np_nilpotent(X[sel], bound, m)
            for x in X[ok]:
                sols.append(Matrix(R, x.tolist()))
    else:
        for X in iter_matrices(R, n):
            if is_solution(eq, A, X) and (not nil_only or (X ** bound).is_zero()):
                sols.append(X)
    for X in sols:  # re-verify with exact ring arithmetic
        if not is_solution(eq, A, X):
            raise AssertionError(f"enumeration returned a non-solution {X.to_strings()}")
    return SolutionFamily("Explicit", tuple(sols), candidates=total)


def enumerate_solution_pairs(eq: EquationId, ring: RingSpec, n: int, budget: int = DEFAULT_BUDGET, method: str = "auto"):
    """All pairs (A, B) of n x n matrices over a finite ring solving ``eq``; returns (pairs, scanned)."""
    if not ring.is_finite:
        raise RingError(f"cannot enumerate over infinite ring {ring}")
    eq.validate(ring)
    w = n * n
    total = ring.size() ** (2 * w)
    _check_budget(total, budget)
    m = _numpy_modulus(ring)
    pairs = []
    if m is not None and method in ("auto", "numpy"):
        for start in range(0, total, _CHUNK):
            idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
            D = _decode(idx, m, 2 * w)
            A, B = D[:, :w].reshape(-1, n, n), D[:, w:].reshape(-1, n, n)
            ok = ~_np_residual(eq, A, B, m).reshape(len(idx), -1).any(axis=1)
            for a, b in zip(A[ok], B[ok]):
                pairs.append((Matrix(ring, a.tolist()), Matrix(ring, b.tolist())))
    else:
        mats = list(iter_matrices(ring, n))
        for A in mats:
            for B in mats:
                if is_solution(eq, A, B):
                    pairs.append((A, B))
    return pairs, total


def pair_enumeration(
    eq: EquationId,
    ring: RingSpec,
    n: int,
    predicate: Callable[[Matrix, Matrix], bool] = lambda A, B: True,
    budget: int = DEFAULT_BUDGET,
    name: str = "",
) -> CheckReport:
    """Scan every pair, keep the solutions of ``eq`` and assert ``predicate`` on each."""
    try:
        pairs, total = enumerate_solution_pairs(eq, ring, n, budget)
    except BudgetExceeded as exc:
        return CheckReport("pair_enumeration", INCONCLUSIVE, f"budget: {exc}", {"ring": str(ring), "n": n})
    bad = []
    held = 0
    for A, B in pairs:
        if not is_solution(eq, A, B):
            raise AssertionError("enumeration returned a non-solution")
        if predicate(A, B):
            held += 1
        else:
            bad.append((A, B))
    metrics = {
        "equation": str(eq),
        "ring": str(ring),
        "n": n,
        "pairs_scanned": total,
        "solutions": len(pairs),
        "predicate_holds": held,
        "violations": len(bad),
    }
    if name:
        metrics["predicate"] = name
    if bad:
        A, B = bad[0]
        return CheckReport("pair_enumeration", FAIL, f"predicate fails on {len(bad)} solutions", metrics, artifacts={"A": A, "B": B})
    return CheckReport("pair_enumeration", PASS, "", metrics)


# ---------------------------------------------------------------------------
# generic matrices


def generic_system(eq: EquationId, n: int, field: RingSpec) -> list[MultiPoly]:
    """Entries of AX - XA - X^alpha with A generic; variables x_ij then a_ij."""
    if eq.tag != "PowerX":
        raise ValueError("generic systems are built for PowerX only")
    return system_generic_powerX(n, eq.alpha, field)


def _generic_basis(n: int, alpha: int, field: RingSpec, **budget):
    gens = system_generic_powerX(n, alpha, field)
    order = MonomialOrder("degrevlex", split=n * n)
    return gens, buchberger(gens, order, **budget)


def generic_membership_check(
    n: int,
    alpha: int,
    exponent: int,
    char: int = 0,
    expect: str = "member",
    max_pairs: int | None = None,
    time_limit: float | None = None,
) -> CheckReport:
    """Membership of X^alpha entries and x_ij^exponent in the generic ideal.

    The a_ij are treated as parameters: the basis is computed for a block
    order with the x_ij block first, and membership is decided over the
    rational function field in the a_ij.
    """
    if expect not in ("member", "nonmember"):
        raise ValueError("expect must be 'member' or 'nonmember'")
    F = coefficient_field(char)
    metrics = {"n": n, "alpha": alpha, "exponent": exponent, "field": str(F), "expect": expect}
    try:
        gens, gb = _generic_basis(n, alpha, F, max_pairs=max_pairs, time_limit=time_limit)
    except BudgetExceeded as exc:
        return CheckReport("generic_membership", INCONCLUSIVE, f"budget: {exc}", metrics)
    vars = gens[0].vars
    X = sym_matrix("x", n, F, vars)
    xa = {f"(X^{alpha}){i // n + 1}{i % n + 1}": parametric_normal_form(e, gb) for i, e in enumerate(entries(mat_pow(X, alpha)))}
    xp = {f"{v}^{exponent}": parametric_normal_form(MultiPoly.var(F, vars, v) ** exponent, gb) for v in entry_vars("x", n)}
    metrics.update(
        {
            "basis_size": len(gb),
            "X_alpha_members": {k: nf.is_zero() for k, nf in xa.items()},
            "x_power_members": {k: nf.is_zero() for k, nf in xp.items()},
        }
    )
    want = expect == "member"
    bad = {k: nf for k, nf in xa.items() if not nf.is_zero()}
    bad.update({k: nf for k, nf in xp.items() if nf.is_zero() != want})
    if bad:
        return CheckReport("generic_membership", FAIL, f"unexpected membership for {sorted(bad)}", metrics, artifacts={k: str(v) for k, v in bad.items()})
    return CheckReport("generic_membership", PASS, "", metrics)


def specialized_membership_check(
    A: Matrix, alpha: int, exponent: int, field: RingSpec | None = None, max_pairs: int | None = None, time_limit: float | None = None
) -> CheckReport:
    """Same memberships for a concrete A (a random specialization of the generic matrix)."""
    F = field or A.ring
    n = A.n
    metrics = {"n": n, "alpha": alpha, "exponent": exponent, "field": str(F)}
    try:
        gens = system_specialized_powerX(A, alpha, F)
        gb = buchberger(gens, "degrevlex", max_pairs=max_pairs, time_limit=time_limit)
    except BudgetExceeded as exc:
        return CheckReport("specialized_membership", INCONCLUSIVE, f"budget: {exc}", metrics)
    vars = gens[0].vars
    X = sym_matrix("x", n, F, vars)
    xa_ok = all(normal_form(e, gb).is_zero() for e in entries(mat_pow(X, alpha)))
    minimal = {}
    for v in entry_vars("x", n):
        x = MultiPoly.var(F, vars, v)
        e = 1
        while e <= exponent and not normal_form(x ** e, gb).is_zero():
            e += 1
        minimal[v] = e if e <= exponent else None
    xp_ok = all(e is not None for e in minimal.values())
    metrics.update({"basis_size": len(gb), "X_alpha_zero": xa_ok, "x_power_zero": xp_ok, "minimal_exponents": minimal})
    if xa_ok and xp_ok:
        return CheckReport("specialized_membership", PASS, "", metrics)
    return CheckReport("specialized_membership", FAIL, "membership fails at this specialization", metrics, artifacts={"A": A})


# ---------------------------------------------------------------------------
# ring-level structure checks


def jacobson_nilpotency_check(A: Matrix, X: Matrix, alpha: int) -> CheckReport:
    """n! [A,X]^(2^n - 1) = 0 for a solution of AX - XA = X^alpha, and X nilpotent when n! is regular."""
    if not is_solution(PowerX(alpha), A, X):
        raise HypothesisError("(A, X) does not solve AX - XA = X^alpha")
    R, n = A.ring, A.n
    C = commutator(A, X)
    e = 2 ** n - 1
    Ce = C ** e
    fact = R.from_int(factorial(n))
    regular = not (R.is_zero(fact) or R.is_zero_divisor(fact))
    scaled_zero = Ce.scale(RingValue(R, fact)).is_zero()
    power_zero = Ce.is_zero()
    nilindex = matrix_nilindex(X, nilpotency_bound(X))
    metrics = {
        "n": n,
        "factorial_regular": regular,
        "scaled_power_zero": scaled_zero,
        "commutator_power_zero": power_zero,
        "X_nilindex": nilindex,
    }
    ok = scaled_zero and (not regular or (power_zero and nilindex is not None))
    if ok:
        return CheckReport("jacobson_nilpotency", PASS, "", metrics)
    return CheckReport("jacobson_nilpotency", FAIL, "Jacobson identity or nilpotency violated", metrics, artifacts={"A": A, "X": X})


def _random_word(rng: random.Random, A: Matrix, X: Matrix, max_len: int = 6) -> Matrix:
    W = Matrix.identity(A.n, A.ring)
    for _ in range(rng.randint(0, max_len)):
        W = W * (A if rng.random() < 0.5 else X)
    return W


def _random_scalar(rng: random.Random, ring: RingSpec):
    if ring.is_finite:
        elems = list(ring.elements())
        return elems[rng.randrange(len(elems))]
    return ring.from_int(rng.randint(-5, 5))


def nilpotent_ideal_check(A: Matrix, X: Matrix, eq: EquationId, word_samples: int = 50, seed: int = 0, terms: int = 3) -> CheckReport:
    """Random elements sum_k c_k P_k (AX - XA) Q_k, with P_k, Q_k words in A and X, are nilpotent."""
    if eq.tag != "PowerXg":
        raise ValueError("nilpotent_ideal_check expects a PowerXg equation")
    if not is_solution(eq, A, X):
        raise HypothesisError("(A, X) does not solve XA - AX = X^alpha g(X)")
    R, n = A.ring, A.n
    bound = nilpotency_bound(X)
    metrics = {"samples": word_samples, "bound": bound, "seed": seed}
    if bound > 64:
        return CheckReport("nilpotent_ideal", INCONCLUSIVE, f"nilpotency bound {bound} exceeds cap 64", metrics)
    if not (X ** bound).is_zero():
        raise HypothesisError("X is not nilpotent")
    rng = random.Random(seed)
    C = commutator(A, X)
    worst = 0
    for _ in range(word_samples):
        E = Matrix.zeros(n, R)
        for _ in range(terms):
            c = RingValue(R, _random_scalar(rng, R))
            E = E + (_random_word(rng, A, X) * C * _random_word(rng, A, X)).scale(c)
        k = matrix_nilindex(E, bound)
        if k is None:
            metrics["max_nilindex"] = worst
            return CheckReport("nilpotent_ideal", FAIL, "ideal element is not nilpotent", metrics, artifacts={"A": A, "X": X, "element": E})
        worst = max(worst, k)
    metrics["max_nilindex"] = worst
    return CheckReport("nilpotent_ideal", PASS, "", metrics)


def alpha_reduction(A: Matrix, B: Matrix, alpha: int) -> tuple[Matrix, Matrix]:
    """(A^(alpha-1), B/(alpha-1)) solving A1 B1 - B1 A1 = A1^2."""
    R = A.ring
    if not is_solution(PowerA(alpha), A, B):
        raise HypothesisError("(A, B) does not solve AB - BA = A^alpha")
    d = R.from_int(alpha - 1)
    if not R.is_unit(d):
        raise HypothesisError(f"alpha - 1 = {R.format_element(d)} is not a unit in {R}")
    A1 = A ** (alpha - 1)
    B1 = B.scale(RingValue(R, R.inverse(d)))
    if commutator(A1, B1) != A1 * A1:
        raise AssertionError("reduced pair does not satisfy A1 B1 - B1 A1 = A1^2")
    return A1, B1


def block_structure_check(A: Matrix, X: Matrix, blocks: Sequence[tuple], P: Matrix, eq: EquationId) -> CheckReport:
    """Block-diagonal shape of a nilpotent solution of XA - AX = X^alpha g(X) in A's eigenbasis.

    Hypothesis problems give INCONCLUSIVE; a broken conclusion gives FAIL.
    """
    R, n = A.ring, A.n
    if eq.tag != "PowerXg":
        raise ValueError("block_structure_check expects a PowerXg equation")
    lams = [RingValue.of(R, lam) for lam, _ in blocks]
    sizes = [int(s) for _, s in blocks]
    metrics = {"blocks": [[str(l), s] for l, s in zip(lams, sizes)]}

    def hyp(msg):
        return CheckReport("block_structure", INCONCLUSIVE, f"hypothesis: {msg}", metrics)

    if sum(sizes) != n:
        return hyp("block sizes do not add up to n")
    if not P.is_invertible():
        return hyp("P is not invertible")
    D = Matrix.diag(R, [lam for lam, s in zip(lams, sizes) for _ in range(s)])
    if P * D * P.inverse() != A:
        return hyp("A != P diag P^-1")
    for i in range(len(lams)):
        for j in range(i + 1, len(lams)):
            d = (lams[i] - lams[j]).payload
            if R.is_zero(d) or R.is_zero_divisor(d):
                return hyp(f"{lams[i]} - {lams[j]} is zero or a zero-divisor")
    if not is_solution(eq, A, X):
        return hyp("X does not solve the equation")
    if not (X ** nilpotency_bound(X)).is_zero():
        return hyp("X is not nilpotent")
    Y = P.inverse() * X * P
    offs = [0]
    for s in sizes:
        offs.append(offs[-1] + s)
    owner = [b for b, s in enumerate(sizes) for _ in range(s)]
    off_zero = all(R.is_zero(Y.rows[i][j]) for i in range(n) for j in range(n) if owner[i] != owner[j])
    alpha, g = eq.alpha, eq.g
    block_ok = []
    for b in range(len(sizes)):
        Xi = Y.block(offs[b], offs[b + 1])
        block_ok.append((Xi ** alpha * eval_poly_at_matrix(g, Xi)).is_zero())
    g0_unit = R.is_unit(g.coeffs[0])
    x_alpha_zero = (X ** alpha).is_zero()
    metrics.update(
        {
            "off_diagonal_zero": off_zero,
            "blocks_annihilated": block_ok,
            "g0_unit": g0_unit,
            "X_alpha_zero": x_alpha_zero,
        }
    )
    ok = off_zero and all(block_ok) and (x_alpha_zero or not g0_unit)
    if ok:
        return CheckReport("block_structure", PASS, "", metrics)
    return CheckReport("block_structure", FAIL, "falsification: block conclusion violated", metrics, artifacts={"A": A, "X": X, "P": P})


# ---------------------------------------------------------------------------
# square equation up to conjugation


def _monic_polys(ring: RingSpec, deg: int) -> Iterator[tuple]:
    elems = list(ring.elements())
    for low in itertools.product(elems, repeat=deg):
        yield tuple(low) + (ring.one(),)


def _divides(ring: RingSpec, f: tuple, g: tuple) -> bool:
    """Monic f divides g (ascending coefficient tuples)."""
    rem = list(g)
    df = len(f) - 1
    for k in range(len(rem) - 1, df - 1, -1):
        c = rem[k]
        if not ring.is_zero(c):
            for i in range(df + 1):
                rem[k - df + i] = ring.sub(rem[k - df + i], ring.mul(c, f[i]))
    return all(ring.is_zero(c) for c in rem[:df])


def _companion(ring: RingSpec, f: tuple) -> Matrix:
    d = len(f) - 1
    rows = [[ring.zero()] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = ring.one()
    for i in range(d):
        rows[i][d - 1] = ring.neg(f[i])
    return Matrix(ring, rows)


def frobenius_normal_forms(ring: RingSpec, n: int) -> Iterator[Matrix]:
    """One representative of every similarity class of n x n matrices over a finite field."""
    if not (ring.is_field and ring.is_finite):
        raise RingError("rational canonical forms are enumerated over finite fields only")

    def chains(remaining: int, prev: tuple | None):
        if remaining == 0:
            yield []
            return
        lo = 1 if prev is None else len(prev) - 1
        for d in range(lo, remaining + 1):
            for f in _monic_polys(ring, d):
                if prev is None or _divides(ring, prev, f):
                    for rest in chains(remaining - d, f):
                        yield [f] + rest

    for chain in chains(n, None):
        yield Matrix.block_diag(ring, [_companion(ring, f) for f in chain])


def commutator_fiber(N: Matrix, target: Matrix):
    """Solutions B of NB - BN = target as (particular, kernel basis), or None if inconsistent.

    Vectors are row-major payload tuples of length n^2.
    """
    R, n = N.ring, N.n
    rows = []
    for i in range(n):
        for j in range(n):
            row = [R.zero()] * (n * n)
            for k in range(n):
                row[k * n + j] = R.add(row[k * n + j], N.rows[i][k])
                row[i * n + k] = R.sub(row[i * n + k], N.rows[k][j])
            rows.append(row + [target.rows[i][j]])
    red, pivots = rref(R, rows)
    if n * n in pivots:
        return None
    part = [R.zero()] * (n * n)
    for row, p in zip(red, pivots):
        part[p] = row[n * n]
    kernel = nullspace(R, [r[:-1] for r in rows], n * n)
    return tuple(part), kernel


def square_solution_classes(ring: RingSpec, n: int):
    """All solutions of A^2 - 2AB + B^2 = 0 up to simultaneous conjugation.

    With N = A - B the equation reads NB - BN = N^2, linear in B, so for each
    canonical N the solutions form an affine space.  Yields (N, particular, kernel).
    """
    for N in frobenius_normal_forms(ring, n):
        fib = commutator_fiber(N, N * N)
        if fib is not None:
            yield N, fib[0], fib[1]

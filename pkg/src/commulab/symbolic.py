"""Matrices of multivariate polynomials and the ideal systems built from them.

Entry variables are named ``<prefix><i><j>`` with 1-based indices, e.g.
``x12`` or ``a21``.  Symbolic matrices are plain nested lists of
:class:`MultiPoly`.
"""

from __future__ import annotations

from math import comb
from typing import Sequence

from .matrix import Matrix, berkowitz
from .multipoly import MultiPoly
from .rings import GF, Rationals, RingSpec

SymMatrix = list  # list[list[MultiPoly]]


def entry_vars(prefix: str, n: int) -> list[str]:
    return [f"{prefix}{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1)]


def coefficient_field(char: int) -> RingSpec:
    return Rationals() if char == 0 else GF(char)


def sym_matrix(prefix: str, n: int, field: RingSpec, vars: Sequence[str]) -> SymMatrix:
    return [[MultiPoly.var(field, vars, f"{prefix}{i}{j}") for j in range(1, n + 1)] for i in range(1, n + 1)]


def const_matrix(M, field: RingSpec, vars: Sequence[str]) -> SymMatrix:
    """Lift an integer array or an integer-valued :class:`Matrix` to constants."""
    rows = M.to_strings() if isinstance(M, Matrix) else M
    return [[MultiPoly.constant(field, vars, field.parse_element(str(v))) for v in row] for row in rows]


def sym_identity(n: int, field, vars) -> SymMatrix:
    return const_matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)], field, vars)


def jordan_const(n: int, field, vars) -> SymMatrix:
    return const_matrix([[1 if j == i + 1 else 0 for j in range(n)] for i in range(n)], field, vars)


def mat_add(A: SymMatrix, B: SymMatrix) -> SymMatrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A: SymMatrix, B: SymMatrix) -> SymMatrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A: SymMatrix) -> SymMatrix:
    return [[a * c for a in r] for r in A]


def mat_mul(A: SymMatrix, B: SymMatrix) -> SymMatrix:
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = A[i][0] * B[0][j]
            for k in range(1, n):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_pow(A: SymMatrix, k: int) -> SymMatrix:
    fld, vars = A[0][0].field, A[0][0].vars
    result = sym_identity(len(A), fld, vars)
    for _ in range(k):
        result = mat_mul(result, A)
    return result


def entries(A: SymMatrix) -> list[MultiPoly]:
    return [a for row in A for a in row]


def charpoly_coeffs(A: SymMatrix) -> list[MultiPoly]:
    """Non-leading coefficients of det(tI - A), descending; all vanish iff A is nilpotent."""
    fld, vars = A[0][0].field, A[0][0].vars
    zero = MultiPoly.zero(fld, vars)
    one = MultiPoly.constant(fld, vars, 1)
    desc = berkowitz(A, zero, one, lambda a, b: a + b, lambda a, b: a * b, lambda a: -a)
    return desc[1:]


def binomial_form(A: SymMatrix, B: SymMatrix, k: int) -> SymMatrix:
    """sum_j (-1)^j C(k,j) A^(k-j) B^j."""
    acc = None
    for j in range(k + 1):
        term = mat_scale((-1) ** j * comb(k, j), mat_mul(mat_pow(A, k - j), mat_pow(B, j)))
        acc = term if acc is None else mat_add(acc, term)
    return acc


def _nonzero(polys):
    return [p for p in polys if not p.is_zero()]


# ---------------------------------------------------------------------------
# variety systems


def system_Y(n: int, alpha: int, field) -> list[MultiPoly]:
    """{X : X J - J X = X^alpha}; also the fiber of S(n, alpha) over B = J."""
    vars = entry_vars("x", n)
    X = sym_matrix("x", n, field, vars)
    J = jordan_const(n, field, vars)
    return _nonzero(entries(mat_sub(mat_sub(mat_mul(X, J), mat_mul(J, X)), mat_pow(X, alpha))))


def system_S(n: int, alpha: int, field) -> list[MultiPoly]:
    """Whole variety {(A, B) : B nilpotent, AB - BA = A^alpha}."""
    vars = entry_vars("a", n) + entry_vars("x", n)
    A = sym_matrix("a", n, field, vars)
    B = sym_matrix("x", n, field, vars)
    rel = mat_sub(mat_sub(mat_mul(A, B), mat_mul(B, A)), mat_pow(A, alpha))
    return _nonzero(entries(rel) + charpoly_coeffs(B))


def system_N(n: int, field) -> list[MultiPoly]:
    """Nilpotent cone."""
    vars = entry_vars("x", n)
    return _nonzero(charpoly_coeffs(sym_matrix("x", n, field, vars)))


def system_W(n: int, field) -> list[MultiPoly]:
    """Commuting nilpotent pairs."""
    vars = entry_vars("a", n) + entry_vars("x", n)
    A = sym_matrix("a", n, field, vars)
    B = sym_matrix("x", n, field, vars)
    comm = mat_sub(mat_mul(A, B), mat_mul(B, A))
    return _nonzero(charpoly_coeffs(A) + charpoly_coeffs(B) + entries(comm))


def system_V4_fiber(field, n: int = 4) -> list[MultiPoly]:
    """B nilpotent with A^3 - 3A^2B + 3AB^2 - B^3 = 0 for A = J_n."""
    vars = entry_vars("x", n)
    A = jordan_const(n, field, vars)
    B = sym_matrix("x", n, field, vars)
    return _nonzero(entries(binomial_form(A, B, 3)) + charpoly_coeffs(B))


def system_V4_commuting_fiber(field, n: int = 4) -> list[MultiPoly]:
    """B nilpotent, AB = BA and (A - B)^3 = 0 for A = J_n."""
    vars = entry_vars("x", n)
    A = jordan_const(n, field, vars)
    B = sym_matrix("x", n, field, vars)
    comm = mat_sub(mat_mul(A, B), mat_mul(B, A))
    return _nonzero(entries(mat_pow(mat_sub(A, B), 3)) + entries(comm) + charpoly_coeffs(B))


def system_generic_powerX(n: int, alpha: int, field) -> list[MultiPoly]:
    """Entries of AX - XA - X^alpha with A generic (variables a_ij)."""
    vars = entry_vars("x", n) + entry_vars("a", n)
    A = sym_matrix("a", n, field, vars)
    X = sym_matrix("x", n, field, vars)
    return entries(mat_sub(mat_sub(mat_mul(A, X), mat_mul(X, A)), mat_pow(X, alpha)))


def system_specialized_powerX(A: Matrix, alpha: int, field) -> list[MultiPoly]:
    """Entries of AX - XA - X^alpha for a concrete A over ``field``."""
    n = A.n
    vars = entry_vars("x", n)
    Ac = const_matrix(A, field, vars)
    X = sym_matrix("x", n, field, vars)
    return entries(mat_sub(mat_sub(mat_mul(Ac, X), mat_mul(X, Ac)), mat_pow(X, alpha)))

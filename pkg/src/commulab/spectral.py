"""Eigenvalues in the base field, generalized eigenspaces and simultaneous
triangularization / diagonalization.

Nothing here leaves the base field: when a characteristic polynomial does not
split, operations answer ``Incomplete`` instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .matrix import (
    Matrix,
    MatrixError,
    commutator,
    from_columns,
    nullspace,
    rref,
    span_rref,
)
from .poly import UniPoly
from .report import FAIL, INCONCLUSIVE, PASS, CheckReport
from .rings import Rationals, RingError, RingSpec, RingValue


class HypothesisError(ValueError):
    """Inputs do not satisfy the hypotheses of the statement being checked."""


@dataclass(frozen=True)
class SpectralData:
    eigenvalues: tuple  # ((RingValue, multiplicity), ...)
    complete: bool

    def values(self) -> list[RingValue]:
        return [lam for lam, _ in self.eigenvalues]

    def multiset(self) -> dict:
        return {lam.payload: m for lam, m in self.eigenvalues}


@dataclass(frozen=True)
class TriangularizationResult:
    status: str  # "ST" | "NotST" | "Incomplete"
    P: Matrix | None = None
    stage: int | None = None
    reason: str = ""

    @property
    def is_st(self) -> bool:
        return self.status == "ST"


def _require_field(ring: RingSpec):
    if not ring.is_field:
        raise RingError(f"{ring} is not a field")


# ---------------------------------------------------------------------------
# eigenvalues


def _rational_candidates(chi: UniPoly) -> list[Fraction]:
    coeffs = [Fraction(c) for c in chi.coeffs]
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    while ints and ints[0] == 0:
        ints.pop(0)
    if not ints:
        return []
    lead, const = abs(ints[-1]), abs(ints[0])

    def divisors(k):
        return [d for d in range(1, k + 1) if k % d == 0]

    cands = {Fraction(s * p, q) for p in divisors(const) for q in divisors(lead) for s in (1, -1)}
    return sorted(cands)


def eigenvalues_in_field(A: Matrix) -> SpectralData:
    """Roots of the characteristic polynomial lying in the base field, with multiplicity."""
    R = A.ring
    _require_field(R)
    chi = A.charpoly()
    if isinstance(R, Rationals):
        cands = ([Fraction(0)] if R.is_zero(chi.coeffs[0]) else []) + _rational_candidates(chi)
    else:
        cands = list(R.elements())
    found = []
    rest = chi
    for c in sorted(set(cands)):
        mult = 0
        while rest.degree >= 1:
            q, r = rest.divmod_linear(c)
            if not r.is_zero():
                break
            rest = q
            mult += 1
        if mult:
            found.append((RingValue(R, R.canon(c)), mult))
    total = sum(m for _, m in found)
    return SpectralData(tuple(found), total == A.n)


def generalized_eigenspace(A: Matrix, lam) -> list[tuple]:
    """Basis (payload vectors) of ker (A - lam I)^n."""
    _require_field(A.ring)
    lam = RingValue.of(A.ring, lam)
    basis = nullspace(A.ring, (A.shift(lam) ** A.n).rows, A.n)
    if not basis:
        raise ValueError(f"{lam} is not an eigenvalue")
    return basis


def eigenstructure_compare(A: Matrix, B: Matrix) -> CheckReport:
    """Same spectrum with multiplicity and identical generalized eigenspaces?"""
    sa, sb = eigenvalues_in_field(A), eigenvalues_in_field(B)
    if not (sa.complete and sb.complete):
        raise ValueError("eigenstructure_compare needs split characteristic polynomials")
    same_spectrum = sa.multiset() == sb.multiset()
    spaces = {}
    if same_spectrum:
        for lam, _ in sa.eigenvalues:
            ea = span_rref(A.ring, generalized_eigenspace(A, lam))
            eb = span_rref(B.ring, generalized_eigenspace(B, lam))
            spaces[str(lam)] = ea == eb
    equal = same_spectrum and all(spaces.values())
    return CheckReport(
        "eigenstructure_compare",
        PASS if equal else FAIL,
        "" if equal else ("spectra differ" if not same_spectrum else "generalized eigenspaces differ"),
        metrics={"same_spectrum": same_spectrum, "equal_spaces": spaces, "holds": equal},
        artifacts={} if equal else {"A": A, "B": B},
    )


# ---------------------------------------------------------------------------
# common eigenvectors and triangularization


def common_eigenvector(A: Matrix, B: Matrix):
    """First nonzero v with Av = la v and Bv = lb v, scanning eigenvalue pairs in order.

    Returns ``(v, la, lb)`` with ``v`` a payload tuple, or ``None``.
    """
    R = A.ring
    sa, sb = eigenvalues_in_field(A), eigenvalues_in_field(B)
    if not (sa.complete and sb.complete):
        raise ValueError("common_eigenvector needs split characteristic polynomials")
    for la, _ in sa.eigenvalues:
        for lb, _ in sb.eigenvalues:
            rows = list(A.shift(la).rows) + list(B.shift(lb).rows)
            basis = nullspace(R, rows, A.n)
            if basis:
                return basis[0], la, lb
    return None


def _complete_basis(ring: RingSpec, v: Sequence) -> Matrix:
    """Invertible matrix whose first column is v (v replaces its first nonzero e_i)."""
    n = len(v)
    piv = next(i for i, x in enumerate(v) if not ring.is_zero(x))
    cols = [tuple(v)]
    for i in range(n):
        if i != piv:
            cols.append(tuple(ring.one() if k == i else ring.zero() for k in range(n)))
    return from_columns(ring, cols)


def simultaneous_triangularization(A: Matrix, B: Matrix) -> TriangularizationResult:
    """Decide ST by common-eigenvector deflation; P^-1 A P and P^-1 B P upper triangular on success."""
    R = A.ring
    _require_field(R)
    if B.ring != R or B.n != A.n:
        raise MatrixError("A and B must share ring and size")
    if not (eigenvalues_in_field(A).complete and eigenvalues_in_field(B).complete):
        return TriangularizationResult("Incomplete", reason="characteristic polynomial does not split over the base field")
    n = A.n
    P = Matrix.identity(n, R)
    curA, curB = A, B
    for stage in range(n - 1):
        hit = common_eigenvector(curA, curB)
        if hit is None:
            return TriangularizationResult("NotST", stage=stage)
        Q = _complete_basis(R, hit[0])
        Qi = Q.inverse()
        nA, nB = Qi * curA * Q, Qi * curB * Q
        m = curA.n
        big = Matrix.block_diag(R, [Matrix.identity(stage, R), Q]) if stage else Q
        P = P * big
        curA, curB = nA.block(1, m), nB.block(1, m)
    Pi = P.inverse()
    TA, TB = Pi * A * P, Pi * B * P
    if not (TA.is_upper_triangular() and TB.is_upper_triangular()):
        raise AssertionError("deflation produced a non-triangularizing basis")
    return TriangularizationResult("ST", P=P)


def st_certificate_ok(A: Matrix, B: Matrix, P: Matrix) -> bool:
    Pi = P.inverse()
    return (Pi * A * P).is_upper_triangular() and (Pi * B * P).is_upper_triangular()


# ---------------------------------------------------------------------------
# Lie-algebra diagnostic


def _flat(M: Matrix) -> tuple:
    return tuple(x for r in M.rows for x in r)


def _in_span(ring, vectors: list, target) -> bool:
    if not vectors:
        return all(ring.is_zero(x) for x in target)
    return len(rref(ring, vectors + [target])[1]) == len(rref(ring, vectors)[1])


def _span_basis(ring, vectors: list) -> list:
    vecs = [v for v in vectors if any(not ring.is_zero(x) for x in v)]
    return span_rref(ring, vecs) if vecs else []


def _unflat(ring, n, v) -> Matrix:
    return Matrix(ring, [v[i * n:(i + 1) * n] for i in range(n)])


def lie_solvability_check(A: Matrix, B: Matrix, f: UniPoly | None = None) -> CheckReport:
    """Derived series of V = span{B, I, A, ..., A^(n-1)} when [A, B] = f(A).

    Without ``f`` the premise is tested as ``[A, B]`` lying in K[A].
    """
    R = A.ring
    _require_field(R)
    n = A.n
    C = commutator(A, B)
    powers = [A ** k for k in range(n)]
    kA = _span_basis(R, [_flat(M) for M in powers])
    premise = f(A) == C if f is not None else _in_span(R, kA, _flat(C))
    V = _span_basis(R, [_flat(B)] + [_flat(M) for M in powers])
    Vm = [_unflat(R, n, v) for v in V]
    V1 = _span_basis(R, [_flat(commutator(x, y)) for i, x in enumerate(Vm) for y in Vm[i + 1:]])
    V1m = [_unflat(R, n, v) for v in V1]
    V2 = _span_basis(R, [_flat(commutator(x, y)) for i, x in enumerate(V1m) for y in V1m[i + 1:]])
    closed = all(_in_span(R, V, v) for v in V1)
    v1_in_ka = all(_in_span(R, kA, v) for v in V1)
    metrics = {
        "premise": premise,
        "dim_V": len(V),
        "dim_V1": len(V1),
        "dim_V2": len(V2),
        "closed": closed,
        "V1_in_K[A]": v1_in_ka,
    }
    if not premise:
        return CheckReport("lie_solvability", INCONCLUSIVE, "premise [A,B] = f(A) does not hold; profile only", metrics)
    ok = closed and v1_in_ka and not V2
    return CheckReport(
        "lie_solvability",
        PASS if ok else FAIL,
        "" if ok else "derived series does not terminate as predicted",
        metrics,
        artifacts={} if ok else {"A": A, "B": B},
    )


# ---------------------------------------------------------------------------
# diagonalizable A over rings


def _diagonal_form(A: Matrix, P: Matrix | None) -> tuple[Matrix, Matrix]:
    R = A.ring
    if P is None:
        if A.is_diagonal():
            P = Matrix.identity(A.n, R)
        elif R.is_field:
            P = _eigenbasis(A)
        else:
            raise HypothesisError("A is not diagonal; supply the diagonalizing P")
    D = P.inverse() * A * P
    if not D.is_diagonal():
        raise HypothesisError("P^-1 A P is not diagonal")
    return P, D


def _eigenbasis(A: Matrix) -> Matrix:
    spec = eigenvalues_in_field(A)
    if not spec.complete:
        raise HypothesisError("A is not diagonalizable over the base field")
    cols = []
    for lam, _ in spec.eigenvalues:
        cols.extend(nullspace(A.ring, A.shift(lam).rows, A.n))
    if len(cols) != A.n:
        raise HypothesisError("A is not diagonalizable")
    return from_columns(A.ring, cols)


def _check_differences(D: Matrix, unit: bool):
    R = D.ring
    lams = [D.rows[i][i] for i in range(D.n)]
    for i in range(D.n):
        for j in range(i + 1, D.n):
            d = R.sub(lams[i], lams[j])
            if unit and not R.is_unit(d):
                raise HypothesisError(f"eigenvalue difference {R.format_element(d)} is not a unit")
            if not unit and (R.is_zero(d) or R.is_zero_divisor(d)):
                raise HypothesisError(f"eigenvalue difference {R.format_element(d)} is zero or a zero-divisor")


def simultaneous_diagonalization(A: Matrix, B: Matrix, P: Matrix | None = None) -> Matrix | None:
    """Common diagonalizing P for commuting A, B with non-zero-divisor eigenvalue gaps.

    Returns ``None`` only if B fails to become diagonal, which would contradict
    the statement being exercised.
    """
    if commutator(A, B) != Matrix.zeros(A.n, A.ring):
        raise HypothesisError("A and B do not commute")
    P, D = _diagonal_form(A, P)
    _check_differences(D, unit=False)
    return P if (P.inverse() * B * P).is_diagonal() else None


def express_as_polynomial(A: Matrix, B: Matrix, P: Matrix | None = None) -> UniPoly:
    """Polynomial p of degree < n with p(A) = B (eigenvalue gaps must be units)."""
    R = A.ring
    if commutator(A, B) != Matrix.zeros(A.n, R):
        raise HypothesisError("A and B do not commute")
    P, D = _diagonal_form(A, P)
    _check_differences(D, unit=True)
    Bd = P.inverse() * B * P
    if not Bd.is_diagonal():
        raise AssertionError("commuting B is not diagonal in A's eigenbasis")
    n = A.n
    lams = [D.rows[i][i] for i in range(n)]
    mus = [Bd.rows[i][i] for i in range(n)]
    V = Matrix(R, [[R.power(l, k) for k in range(n)] for l in lams])
    Vi = V.inverse()
    coeffs = [R.dot(row, mus) for row in Vi.rows]
    p = UniPoly(R, coeffs)
    if p(A) != B:
        raise AssertionError("interpolating polynomial does not reproduce B")
    return p


def diago_commutation_check(A: Matrix, B: Matrix, P: Matrix | None = None) -> CheckReport:
    """If A commutes with [A, B] then [A, B] = 0."""
    P, D = _diagonal_form(A, P)
    _check_differences(D, unit=False)
    C = commutator(A, B)
    DC = commutator(A, C)
    premise = DC.is_zero()
    conclusion = C.is_zero()
    ok = conclusion or not premise
    return CheckReport(
        "diago_commutation",
        PASS if ok else FAIL,
        "" if ok else "A commutes with [A,B] but [A,B] != 0",
        {"premise": premise, "conclusion": conclusion},
        artifacts={} if ok else {"A": A, "B": B},
    )


def property_L_check(U: Matrix, V: Matrix, samples) -> CheckReport:
    """For nilpotent U, V property L predicts U + aV nilpotent for every a."""
    R = U.ring
    _require_field(R)
    zero_chi = UniPoly(R, [R.zero()] * U.n + [R.one()])
    if U.charpoly() != zero_chi or V.charpoly() != zero_chi:
        raise NotImplementedError("property L is only checked for nilpotent pairs")
    samples = list(samples)
    violations = []
    for a in samples:
        a = RingValue.of(R, a)
        if (U + V.scale(a)).charpoly() != zero_chi:
            violations.append(str(a))
    holds = not violations
    return CheckReport(
        "property_L",
        PASS if holds else FAIL,
        "" if holds else f"U + aV not nilpotent for a in {violations}",
        {"samples": len(samples), "violations": violations, "holds": holds},
        artifacts={} if holds else {"U": U, "V": V},
    )

from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from commulab.matrix import Matrix
from commulab.poly import UniPoly, resultant, resultant_det_identity_check, sylvester_matrix
from commulab.rings import GF, Integers, Mod, Rationals
from conftest import RINGS, matrices, payloads

t = sympy.Symbol("t")


def _sympy(p: UniPoly):
    return sum(sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * t ** k for k, c in enumerate(p.coeffs))


@st.composite
def int_polys(draw, monic=False, max_deg=4):
    d = draw(st.integers(1 if monic else 0, max_deg))
    cs = draw(st.lists(st.integers(-5, 5), min_size=d + 1, max_size=d + 1))
    if monic:
        cs[-1] = 1
    return cs


def _companion_oracle(fc, gc) -> int:
    """Res(f, g) = det g(C_f) with C_f the companion matrix of monic f, via sympy."""
    C = sympy.Matrix.companion(sympy.Poly(list(reversed(fc)), t))
    G = sympy.zeros(C.rows)
    for k, c in enumerate(gc):
        G += c * C ** k
    return int(G.det())


@settings(max_examples=200)
@given(int_polys(monic=True), int_polys())
def test_resultant_matches_companion_oracle(fc, gc):
    Z = Integers()
    assert resultant(UniPoly(Z, fc), UniPoly(Z, gc)) == _companion_oracle(fc, gc)


def test_resultant_matches_sympy_on_generic_pair():
    Z = Integers()
    f, g = UniPoly(Z, [1, 1, 1]), UniPoly(Z, [2, 0, 0, 1])
    assert resultant(f, g) == int(sympy.resultant(_sympy(f), _sympy(g), t)) == 9


@settings(max_examples=200)
@given(int_polys(monic=True), int_polys(), st.sampled_from([2, 3, 5, 7]))
def test_resultant_reduces_mod_p(fc, gc, p):
    # the Sylvester determinant is a polynomial in the coefficients
    Z, F = Integers(), GF(p)
    g = UniPoly(Z, gc)
    if g.degree < 1 or gc[-1] % p == 0:
        return
    assert resultant(UniPoly(F, fc), UniPoly(F, gc)) == resultant(UniPoly(Z, fc), g).payload % p


@settings(max_examples=300)
@given(st.sampled_from(RINGS).flatmap(lambda R: st.tuples(matrices(R, 2) | matrices(R, 3), st.lists(payloads(R), min_size=1, max_size=4))))
def test_resultant_equals_det_of_g_at_x(data):
    X, gc = data
    assert resultant_det_identity_check(X, UniPoly(X.ring, gc))


def test_tau_resultant_over_z8():
    R = Mod(8)
    X = Matrix.identity(2, R).scale(2)
    r = resultant(X.charpoly(), UniPoly(R, [2]))
    assert r == 4 and not R.is_unit(r.payload)


def test_sylvester_shape():
    Q = Rationals()
    S = sylvester_matrix(UniPoly.from_values(Q, [1, 0, 1]), UniPoly.from_values(Q, [2, 1]))
    assert S.n == 3
    assert S.det() == 5  # res(t^2 + 1, t + 2) = (-2)^2 + 1


def test_resultant_requires_monic():
    Q = Rationals()
    with pytest.raises(ValueError):
        resultant(UniPoly.from_values(Q, [1, 2]), UniPoly.from_values(Q, [1, 1]))


@given(int_polys(max_deg=5), int_polys(max_deg=5), st.integers(-4, 4))
def test_arithmetic_and_evaluation(ac, bc, x):
    Z = Integers()
    a, b = UniPoly(Z, ac), UniPoly(Z, bc)
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)
    assert (a - b)(x) == a(x) - b(x)
    q, r = a.divmod_linear(x)
    assert r == a(x)
    assert q * UniPoly.from_values(Z, [-x, 1]) + UniPoly.constant(Z, r) == a


def test_formatting():
    F = GF(5)
    assert str(UniPoly.from_values(F, [1, 3, 3])) == "3*t^2 + 3*t + 1"
    assert str(UniPoly(F, [])) == "0"
    assert UniPoly.from_values(F, [0, 0, 1]) == UniPoly.t(F) ** 2

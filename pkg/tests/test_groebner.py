from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from commulab.groebner import (
    BudgetExceeded,
    UnitIdealError,
    buchberger,
    hilbert_dimension,
    ideal_dimension,
    is_groebner,
    is_reduced,
    nilpotent_cone_dimension,
    normal_form,
    parametric_normal_form,
    variety_dimension_experiment,
)
from commulab.multipoly import MonomialOrder, MultiPoly, parse_multipoly
from commulab.report import FAIL, INCONCLUSIVE, PASS
from commulab.rings import GF, Rationals

VARS = ("x", "y", "z")
SYMS = sympy.symbols(VARS)


def to_sympy(p: MultiPoly):
    expr = 0
    for m, c in p.terms.items():
        c = Fraction(c)
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(SYMS, m):
            term *= s ** e
        expr += term
    return expr


def monic_terms(poly: sympy.Poly, p: int | None, order: str) -> frozenset:
    terms = poly.terms(order=order)
    lc = terms[0][1]
    out = []
    for m, c in terms:
        if p is None:
            out.append((m, Fraction(int(sympy.numer(c / lc)), int(sympy.denom(c / lc)))))
        else:
            out.append((m, int(c) * pow(int(lc), -1, p) % p))
    return frozenset(out)


@st.composite
def systems(draw, p):
    F = GF(p) if p else Rationals()
    gens = []
    for _ in range(draw(st.integers(1, 3))):
        terms = {}
        for _ in range(draw(st.integers(1, 3))):
            m = tuple(draw(st.integers(0, 2)) for _ in VARS)
            terms[m] = draw(st.integers(-3, 3))
        gens.append(MultiPoly(F, VARS, terms))
    return F, gens


@pytest.mark.parametrize("p", [0, 7, 32003])
@pytest.mark.parametrize("order,sym_order", [("degrevlex", "grevlex"), ("lex", "lex")])
def test_reduced_basis_matches_sympy(p, order, sym_order):
    @settings(max_examples=60)
    @given(systems(p))
    def check(data):
        F, gens = data
        if all(g.is_zero() for g in gens):
            return
        gb = buchberger(gens, order)
        kw = {"modulus": p} if p else {"domain": "QQ"}
        ref = sympy.groebner([to_sympy(g) for g in gens if not g.is_zero()], *SYMS, order=sym_order, **kw)
        ours = {frozenset((m, c if p else Fraction(c)) for m, c in g.monic(MonomialOrder(order)).terms.items()) for g in gb}
        theirs = {monic_terms(sympy.Poly(e, *SYMS, **kw), p or None, sym_order) for e in ref.exprs}
        if p:
            ours = {frozenset((m, int(c) % p) for m, c in g) for g in ours}
        assert ours == theirs
        assert is_groebner(gb) and is_reduced(gb)

    check()


@settings(max_examples=100)
@given(systems(32003))
def test_dimension_independent_of_order(data):
    F, gens = data
    if all(g.is_zero() for g in gens):
        return
    a = buchberger(gens, "degrevlex")
    b = buchberger(gens, "lex")
    if a.is_unit_ideal():
        assert b.is_unit_ideal()
        return
    assert hilbert_dimension(a) == hilbert_dimension(b)


def _dimension_oracle(gb) -> int:
    """Largest variable subset avoided by every leading monomial, by brute force."""
    nv = len(gb.vars)
    lms = gb.leading_monomials()
    for size in range(nv, -1, -1):
        for S in itertools.combinations(range(nv), size):
            if all(any(e and i not in S for i, e in enumerate(m)) for m in lms):
                return size
    return 0


@settings(max_examples=100)
@given(systems(7))
def test_hitting_set_search_matches_subset_scan(data):
    F, gens = data
    gb = buchberger(gens)
    if gb.is_unit_ideal() or not gb.gens:
        return
    assert hilbert_dimension(gb) == _dimension_oracle(gb)


@settings(max_examples=100)
@given(systems(7), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
def test_ideal_elements_reduce_to_zero(data, a, b, c):
    F, gens = data
    gb = buchberger(gens)
    mult = MultiPoly(F, VARS, {(a, b, c): 1, (0, 0, 0): 2})
    combo = MultiPoly.zero(F, VARS)
    for g in gens:
        combo = combo + g * mult
    assert normal_form(combo, gb).is_zero()


def test_known_dimensions():
    F = GF(32003)
    v = ("a", "b", "c", "d")
    P = lambda s: parse_multipoly(s, F, v)  # noqa: E731
    assert ideal_dimension([P("a*b"), P("a*c")]) == 3  # {a=0} u {b=c=0}
    assert ideal_dimension([P("a - b"), P("c - d")]) == 2
    assert ideal_dimension([P("a^2"), P("b^3"), P("c*d")]) == 1
    with pytest.raises(UnitIdealError):
        ideal_dimension([P("a*b - 1"), P("a")])


def test_budget_exceeded():
    F = GF(32003)
    from commulab.symbolic import system_Y

    with pytest.raises(BudgetExceeded):
        buchberger(system_Y(3, 2, F), max_pairs=2)
    rep = variety_dimension_experiment("Y", 3, 2, max_pairs=2)
    assert rep.status == INCONCLUSIVE


@pytest.mark.parametrize(
    "system,n,alpha,expected",
    [("Y", 2, 2, 1), ("Y", 3, 2, 2), ("Y", 3, 3, 2), ("N", 2, None, 2), ("N", 3, None, 6), ("W", 2, None, 3), ("S", 2, 2, 3), ("S", 2, 3, 3)],
)
def test_dimension_table(system, n, alpha, expected):
    rep = variety_dimension_experiment(system, n, alpha)
    assert rep.status == PASS
    assert rep.metrics["dimension"] == expected


def test_fiber_totals():
    for alpha in (2, 3):
        rep = variety_dimension_experiment("S_fiber", 2, alpha)
        assert rep.status == PASS and rep.metrics["total"] == 3
    rep = variety_dimension_experiment("Y", 3, 2, order="lex")
    assert rep.metrics["dimension"] == 2


def test_nilpotent_cone_dimension():
    assert [nilpotent_cone_dimension(n) for n in range(1, 6)] == [0, 2, 6, 12, 20]


def test_wrong_expectation_is_a_fail_with_certificate(monkeypatch):
    import commulab.groebner as g

    monkeypatch.setattr(g, "hilbert_dimension", lambda gb: 99)
    rep = variety_dimension_experiment("N", 2)
    assert rep.status == FAIL
    assert rep.artifacts["leading_monomials"]


def test_block_order_membership_over_parameter_field():
    # x^2 - a lies in <x - b, b^2 - a> over Q(a, b)? b^2 - a involves only parameters,
    # so over K(a, b) it is a non-zero constant and the ideal is the unit ideal.
    Q = Rationals()
    v = ("x", "a", "b")
    gens = [parse_multipoly("a*x - b", Q, v)]
    gb = buchberger(gens, MonomialOrder("degrevlex", split=1))
    assert parametric_normal_form(parse_multipoly("a*x^2 - b*x", Q, v), gb).is_zero()
    assert not parametric_normal_form(parse_multipoly("x^2", Q, v), gb).is_zero()

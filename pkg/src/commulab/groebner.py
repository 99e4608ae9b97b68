"""Buchberger's algorithm, normal forms and Krull dimension of polynomial ideals.

The pair queue follows the normal selection strategy (smallest lcm first) and
prunes pairs with the Gebauer-Moeller update, which implements both of
Buchberger's criteria.  Polynomials are handled internally as ``{monomial:
coefficient}`` dicts with a monic leading term.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from typing import Sequence

from .multipoly import MonomialOrder, MultiPoly, as_order, check_field, mono_lcm
from .rings import Rationals, RingSpec


class BudgetExceeded(RuntimeError):
    """The pair queue or basis outgrew the configured budget."""


class UnitIdealError(ValueError):
    """Dimension of the unit ideal (empty variety) was requested."""


@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    gens: tuple
    field: RingSpec
    vars: tuple
    stats: dict = field(default_factory=dict, compare=False, hash=False)

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() for g in self.gens)

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial(self.order) for g in self.gens]

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)


class _Field:
    """Coefficient arithmetic specialised for GF(p) ints or Fractions."""

    def __init__(self, field: RingSpec):
        self.field = check_field(field)
        self.p = None if isinstance(field, Rationals) else field.m

    def inv(self, c):
        return pow(c, -1, self.p) if self.p else 1 / c


def _monic(terms: dict, lm: tuple, F: _Field) -> dict:
    c = terms[lm]
    if c == 1:
        return terms
    inv = F.inv(c)
    if F.p:
        p = F.p
        return {m: v * inv % p for m, v in terms.items()}
    return {m: v * inv for m, v in terms.items()}


class _Poly:
    __slots__ = ("lm", "tail", "terms", "deg")

    def __init__(self, terms: dict, lm: tuple):
        self.terms = terms
        self.lm = lm
        self.tail = [(m, c) for m, c in terms.items() if m != lm]
        self.deg = sum(lm)


def _reduce(f: dict, basis: Sequence[_Poly], F: _Field, hk) -> dict:
    """Full reduction of ``f`` modulo ``basis``; returns the remainder."""
    f = dict(f)
    heap = [(hk(m), m) for m in f]
    heapq.heapify(heap)
    rem = {}
    p = F.p
    while heap:
        m = heapq.heappop(heap)[1]
        c = f.pop(m, None)
        if c is None:
            continue
        g = None
        for b in basis:
            lm = b.lm
            if all(x <= y for x, y in zip(lm, m)):
                g = b
                break
        if g is None:
            rem[m] = c
            continue
        q = tuple(y - x for x, y in zip(g.lm, m))
        for mg, cg in g.tail:
            mm = tuple(a + b for a, b in zip(mg, q))
            old = f.get(mm)
            if p:
                delta = c * cg
                if old is None:
                    f[mm] = -delta % p
                    heapq.heappush(heap, (hk(mm), mm))
                else:
                    new = (old - delta) % p
                    if new:
                        f[mm] = new
                    else:
                        del f[mm]
            else:
                delta = c * cg
                if old is None:
                    f[mm] = -delta
                    heapq.heappush(heap, (hk(mm), mm))
                else:
                    new = old - delta
                    if new:
                        f[mm] = new
                    else:
                        del f[mm]
    return rem


def _spoly_terms(a: _Poly, b: _Poly, F: _Field) -> dict:
    # both monic: S = (l/lm_a) a - (l/lm_b) b, leading terms cancel
    lcm = mono_lcm(a.lm, b.lm)
    qa = tuple(x - y for x, y in zip(lcm, a.lm))
    qb = tuple(x - y for x, y in zip(lcm, b.lm))
    out: dict = {}
    p = F.p
    for m, c in a.tail:
        out[tuple(x + y for x, y in zip(m, qa))] = c
    for m, c in b.tail:
        mm = tuple(x + y for x, y in zip(m, qb))
        v = out.get(mm, 0) - c
        if p:
            v %= p
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def _coprime(a: tuple, b: tuple) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def buchberger(
    gens: Sequence[MultiPoly],
    order="degrevlex",
    *,
    max_pairs: int | None = None,
    max_basis: int | None = None,
    time_limit: float | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Raises :class:`BudgetExceeded` when more than ``max_pairs`` S-polynomials
    are reduced, the basis grows past ``max_basis``, or ``time_limit`` seconds
    elapse.
    """
    order = as_order(order)
    gens = list(gens)
    if not gens:
        return GroebnerBasis(order, (), None, (), {"pairs": 0})
    fld, vars = gens[0].field, gens[0].vars
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return GroebnerBasis(order, (), fld, vars, {"pairs": 0})
    for g in gens:
        if g.field != fld or g.vars != vars:
            raise ValueError("generators must share field and variables")
    F = _Field(fld)
    hk = order.heap_key
    key = order.key
    start = time.perf_counter()

    polys: list[_Poly] = []
    G: list[int] = []
    B: list[tuple] = []
    stats = {"pairs": 0, "zero_reductions": 0}

    def make(terms: dict) -> _Poly:
        lm = max(terms, key=key)
        return _Poly(_monic(terms, lm, F), lm)

    def update(h: int):
        nonlocal G, B
        lh = polys[h].lm
        C = [(h, g, mono_lcm(lh, polys[g].lm)) for g in G]
        D = []
        while C:
            item = C.pop(0)
            l1 = item[2]
            if _coprime(lh, polys[item[1]].lm) or not (
                any(_divides(o[2], l1) for o in C) or any(_divides(o[2], l1) for o in D)
            ):
                D.append(item)
        E = [d for d in D if not _coprime(lh, polys[d[1]].lm)]
        newB = []
        for (g1, g2, l) in B:
            if (
                _divides(lh, l)
                and mono_lcm(polys[g1].lm, lh) != l
                and mono_lcm(polys[g2].lm, lh) != l
            ):
                continue
            newB.append((g1, g2, l))
        newB.extend(E)
        B = newB
        G = [g for g in G if not _divides(lh, polys[g].lm)] + [h]

    def unit_basis():
        one = MultiPoly.constant(fld, vars, 1)
        stats["seconds"] = time.perf_counter() - start
        return GroebnerBasis(order, (one,), fld, vars, stats)

    # seed with the input generators, smallest first
    for g in sorted(gens, key=lambda q: key(q.leading_monomial(order))):
        r = _reduce(g.terms, [polys[i] for i in G], F, hk)
        if not r:
            continue
        poly = make(r)
        if not any(poly.lm):
            return unit_basis()
        polys.append(poly)
        update(len(polys) - 1)

    while B:
        best = min(range(len(B)), key=lambda k: (sum(B[k][2]), key(B[k][2]), B[k][0], B[k][1]))
        i, j, _ = B.pop(best)
        stats["pairs"] += 1
        if max_pairs is not None and stats["pairs"] > max_pairs:
            raise BudgetExceeded(f"more than {max_pairs} S-pairs")
        if time_limit is not None and time.perf_counter() - start > time_limit:
            raise BudgetExceeded(f"time limit {time_limit}s exceeded")
        s = _spoly_terms(polys[i], polys[j], F)
        r = _reduce(s, [polys[k] for k in G], F, hk) if s else {}
        if not r:
            stats["zero_reductions"] += 1
            continue
        poly = make(r)
        if not any(poly.lm):
            return unit_basis()
        polys.append(poly)
        if max_basis is not None and len(polys) > max_basis:
            raise BudgetExceeded(f"basis larger than {max_basis}")
        update(len(polys) - 1)

    # interreduce the (already minimal) basis
    final = []
    members = [polys[g] for g in G]
    for k, g in enumerate(members):
        others = members[:k] + members[k + 1:]
        tail = _reduce(dict(g.tail), others, F, hk)
        terms = dict(tail)
        terms[g.lm] = 1
        final.append((g.lm, terms))
    final.sort(key=lambda t: key(t[0]), reverse=True)
    out = tuple(MultiPoly(fld, vars, t) for _, t in final)
    stats["seconds"] = time.perf_counter() - start
    stats["basis_size"] = len(out)
    return GroebnerBasis(order, out, fld, vars, stats)


def _as_polys(gb: GroebnerBasis) -> list[_Poly]:
    return [_Poly(dict(g.terms), g.leading_monomial(gb.order)) for g in gb.gens]


def normal_form(p: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    """Remainder of ``p`` modulo the basis; zero iff ``p`` lies in the ideal."""
    if not gb.gens:
        return p
    if p.vars != gb.vars or p.field != gb.field:
        raise ValueError("polynomial and basis use different variables or fields")
    F = _Field(gb.field)
    rem = _reduce(p.terms, _as_polys(gb), F, gb.order.heap_key)
    return MultiPoly(p.field, p.vars, rem)


def is_groebner(gb: GroebnerBasis) -> bool:
    """Post-hoc Buchberger criterion: every S-polynomial reduces to zero."""
    polys = _as_polys(gb)
    if not polys:
        return True
    F = _Field(gb.field)
    for a in range(len(polys)):
        for b in range(a + 1, len(polys)):
            s = _spoly_terms(polys[a], polys[b], F)
            if s and _reduce(s, polys, F, gb.order.heap_key):
                return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    """No term of any generator is divisible by another generator's leading monomial."""
    lms = gb.leading_monomials()
    for k, g in enumerate(gb.gens):
        if g.leading_coefficient(gb.order) != 1:
            return False
        for m in g.terms:
            for j, lm in enumerate(lms):
                if j != k and _divides(lm, m):
                    return False
    return True


def hilbert_dimension(gb: GroebnerBasis) -> int:
    """Krull dimension from the leading-term ideal.

    This is the size of the largest set S of variables such that no leading
    monomial is supported inside S, i.e. ``nvars`` minus a minimum hitting set
    of the leading-monomial supports.
    """
    nvars = len(gb.vars)
    if not gb.gens:
        return nvars
    if gb.is_unit_ideal():
        raise UnitIdealError("unit ideal: the variety is empty")
    supports = set()
    for m in gb.leading_monomials():
        supports.add(sum(1 << i for i, e in enumerate(m) if e))
    # keep inclusion-minimal supports only
    sup = sorted(supports, key=lambda s: bin(s).count("1"))
    minimal = []
    for s in sup:
        if not any(t & s == t for t in minimal):
            minimal.append(s)
    best = [nvars]

    def search(chosen: int, size: int):
        if size >= best[0]:
            return
        unhit = [s for s in minimal if not s & chosen]
        if not unhit:
            best[0] = size
            return
        s = min(unhit, key=lambda t: bin(t).count("1"))
        bits = [i for i in range(nvars) if s >> i & 1]
        for b in bits:
            search(chosen | (1 << b), size + 1)

    search(0, 0)
    return nvars - best[0]


def _primitive(f: MultiPoly) -> MultiPoly:
    # keep pseudo-remainders small: scale so the leading coefficient is 1
    if f.is_zero():
        return f
    return f.monic(MonomialOrder("degrevlex"))


def ideal_dimension(gens: Sequence[MultiPoly], order="degrevlex", **budget) -> int:
    return hilbert_dimension(buchberger(gens, order, **budget))


def parametric_normal_form(p: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    """Normal form over K(params)[main] for a block-order basis.

    ``gb.order`` must be a block order ``split=k``: the first ``k`` variables
    are the unknowns, the rest are parameters treated as elements of the
    coefficient field.  The basis of the ideal I in K[main, params] is then a
    basis of I K(params)[main]; reduction multiplies through by leading
    coefficients (nonzero polynomials in the parameters), so the result is
    zero iff ``p`` lies in the extended ideal.
    """
    k = gb.order.split
    if k is None:
        raise ValueError("parametric normal form needs a block order")
    if p.vars != gb.vars or p.field != gb.field:
        raise ValueError("polynomial and basis use different variables or fields")
    fld, vars = p.field, p.vars
    main_key = MonomialOrder("degrevlex").key

    def split(q: MultiPoly) -> dict:
        groups: dict = {}
        for m, c in q.terms.items():
            head = m[:k] + (0,) * (len(m) - k)
            tail = (0,) * k + m[k:]
            groups.setdefault(head, {})[tail] = c
        return {h: MultiPoly(fld, vars, t) for h, t in groups.items()}

    reducers = []
    for g in gb.gens:
        parts = split(g)
        head = max(parts, key=lambda m: main_key(m[:k]))
        if not any(head[:k]):
            # a nonzero parameter-only element: the extended ideal is the unit ideal
            return MultiPoly.zero(fld, vars)
        reducers.append((head, parts[head], g))

    rem = MultiPoly.zero(fld, vars)
    f = p
    while not f.is_zero():
        parts = split(f)
        head = max(parts, key=lambda m: main_key(m[:k]))
        coeff = parts[head]
        hit = next((r for r in reducers if _divides(r[0], head)), None)
        if hit is None:
            lead = coeff * MultiPoly.monomial(fld, vars, head)
            rem = rem + lead
            f = f - lead
            continue
        rhead, rcoeff, g = hit
        shift = tuple(a - b for a, b in zip(head, rhead))
        f = _primitive(f * rcoeff - (g * coeff).mul_term(shift, 1))
    # rem collects distinct standard main-monomials, each up to a nonzero
    # parameter factor, so it vanishes exactly when the true normal form does
    return rem


# ---------------------------------------------------------------------------
# variety dimension experiments

_SYSTEMS = ("Y", "S_fiber", "S", "N", "W", "V4_fiber", "V4_commuting_fiber")


def nilpotent_cone_dimension(n: int) -> int:
    """n^2 minus the centralizer dimension of J_n: the dimension of the dense regular orbit."""
    from .matrix import centralizer_dimension, jordan_block
    from .rings import Rationals

    return n * n - centralizer_dimension(jordan_block(n, Rationals()))


def variety_dimension_experiment(
    system_id: str,
    n: int | None = None,
    alpha: int | None = None,
    char: int = 32003,
    order="degrevlex",
    max_pairs: int | None = 200_000,
    max_basis: int | None = None,
    time_limit: float | None = 600.0,
):
    """Hilbert dimension of one of the named systems, with derived totals.

    ``Y``/``S_fiber`` are the fibers over B = J_n of AB - BA = A^alpha (total
    adds dim N_n); ``S`` is the full pair variety; ``N``, ``W`` the nilpotent
    cone and commuting nilpotent pairs; ``V4_fiber`` and ``V4_commuting_fiber``
    the n = 4 cube-equation fibers over A = J_4 (totals add dim N_4).
    """
    from . import symbolic as sym
    from .report import FAIL, INCONCLUSIVE, PASS, CheckReport

    if system_id not in _SYSTEMS:
        raise ValueError(f"unknown system {system_id!r}; expected one of {_SYSTEMS}")
    F = sym.coefficient_field(char)
    if system_id in ("V4_fiber", "V4_commuting_fiber"):
        n = 4 if n is None else n
    if n is None:
        raise ValueError(f"system {system_id} needs n")
    if system_id in ("Y", "S_fiber", "S") and alpha is None:
        raise ValueError(f"system {system_id} needs alpha")
    build = {
        "Y": lambda: sym.system_Y(n, alpha, F),
        "S_fiber": lambda: sym.system_Y(n, alpha, F),
        "S": lambda: sym.system_S(n, alpha, F),
        "N": lambda: sym.system_N(n, F),
        "W": lambda: sym.system_W(n, F),
        "V4_fiber": lambda: sym.system_V4_fiber(F, n),
        "V4_commuting_fiber": lambda: sym.system_V4_commuting_fiber(F, n),
    }
    expected = {
        "Y": n - 1,
        "S_fiber": n - 1,
        "S": n * n - 1,
        "N": n * n - n,
        "W": n * n - 1,
        "V4_fiber": 6,
        "V4_commuting_fiber": 2,
    }
    expected_total = {"S_fiber": n * n - 1, "V4_fiber": 18, "V4_commuting_fiber": 14}
    metrics = {"system": system_id, "n": n, "alpha": alpha, "field": str(F), "order": str(as_order(order).kind)}
    if n != 4 and system_id.startswith("V4"):
        expected.pop(system_id)
        expected_total.pop(system_id)
    start = time.perf_counter()
    try:
        gens = build[system_id]()
        gb = buchberger(gens, order, max_pairs=max_pairs, max_basis=max_basis, time_limit=time_limit)
    except BudgetExceeded as exc:
        ms = round((time.perf_counter() - start) * 1000)
        return CheckReport(f"dim:{system_id}", INCONCLUSIVE, f"budget: {exc}", metrics, timing={"ms": ms})
    dim = hilbert_dimension(gb)
    ms = round((time.perf_counter() - start) * 1000)
    metrics.update({"dimension": dim, "basis_size": len(gb), "pairs": gb.stats.get("pairs")})
    if system_id in expected:
        metrics["expected"] = expected[system_id]
    if system_id in expected_total:
        cone = nilpotent_cone_dimension(n)
        metrics["cone_dimension"] = cone
        metrics["total"] = dim + cone
        metrics["expected_total"] = expected_total[system_id]
    ok = metrics.get("expected", dim) == dim and metrics.get("expected_total", metrics.get("total")) == metrics.get("total")
    if ok:
        return CheckReport(f"dim:{system_id}", PASS, "", metrics, timing={"ms": ms})
    return CheckReport(
        f"dim:{system_id}",
        FAIL,
        f"dimension {dim} differs from the expected value",
        metrics,
        artifacts={"leading_monomials": [str(m) for m in gb.leading_monomials()], "basis": [str(g) for g in gb.gens]},
        timing={"ms": ms},
    )

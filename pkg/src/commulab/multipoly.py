"""Multivariate polynomials over GF(p) or Q with lex / degrevlex orders.

Text format: ``3*x12^2*a11 - 1/2*x21``.  Over GF(p) coefficients print as
residues in ``[0, p)``; parsing accepts any rational whose denominator is
invertible.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .rings import Mod, Rationals, RingError, RingSpec, RingValue

MAX_EXPONENT = 2**31 - 1


def check_field(field: RingSpec) -> RingSpec:
    if isinstance(field, Rationals) or (isinstance(field, Mod) and field.is_field):
        return field
    raise RingError(f"multivariate coefficients must be GF(p) or Q, got {field}")


class MonomialOrder:
    """Total, multiplicative monomial order.  Variable 0 is the largest.

    ``kind`` is ``"lex"`` or ``"degrevlex"``.  With ``split=k`` the order is the
    product order that compares the first ``k`` variables by degrevlex and
    breaks ties by degrevlex on the rest (an elimination order for the first
    block).
    """

    KINDS = ("lex", "degrevlex")

    def __init__(self, kind: str = "degrevlex", split: int | None = None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        if split is not None and kind != "degrevlex":
            raise ValueError("block orders are built from degrevlex")
        self.kind = kind
        self.split = split

    @staticmethod
    def _drl(m):
        return (sum(m), tuple(-e for e in reversed(m)))

    @staticmethod
    def _drl_heap(m):
        return (-sum(m), tuple(reversed(m)))

    def key(self, m: tuple) -> tuple:
        """Sort key: larger key means larger monomial."""
        if self.kind == "lex":
            return m
        if self.split is not None:
            k = self.split
            return (self._drl(m[:k]), self._drl(m[k:]))
        return self._drl(m)

    def heap_key(self, m: tuple) -> tuple:
        """Key for a min-heap that pops the largest monomial first."""
        if self.kind == "lex":
            return tuple(-e for e in m)
        if self.split is not None:
            k = self.split
            return (self._drl_heap(m[:k]), self._drl_heap(m[k:]))
        return self._drl_heap(m)

    def max(self, monos: Iterable[tuple]) -> tuple:
        return max(monos, key=self.key)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (other.kind, other.split) == (self.kind, self.split)

    def __hash__(self):
        return hash((self.kind, self.split))

    def __repr__(self):
        if self.split is not None:
            return f"MonomialOrder({self.kind!r}, split={self.split})"
        return f"MonomialOrder({self.kind!r})"


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


def as_order(order) -> MonomialOrder:
    return order if isinstance(order, MonomialOrder) else MonomialOrder(order)


def mono_mul(a: tuple, b: tuple) -> tuple:
    out = tuple(x + y for x, y in zip(a, b))
    if out and max(out) > MAX_EXPONENT:
        raise OverflowError("exponent overflow")
    return out


def mono_divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: tuple, a: tuple) -> tuple:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


class MultiPoly:
    __slots__ = ("field", "vars", "terms")

    def __init__(self, field: RingSpec, vars: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.field = check_field(field)
        self.vars = tuple(vars)
        clean = {}
        if terms:
            nv = len(self.vars)
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != nv:
                    raise ValueError(f"exponent vector {m} does not match {nv} variables")
                c = field.canon(c)
                if not field.is_zero(c):
                    clean[m] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------------
    @classmethod
    def _raw(cls, field, vars, terms: dict) -> "MultiPoly":
        p = cls.__new__(cls)
        p.field, p.vars, p.terms = field, vars, terms
        return p

    @classmethod
    def zero(cls, field, vars) -> "MultiPoly":
        return cls(field, vars)

    @classmethod
    def constant(cls, field, vars, c) -> "MultiPoly":
        return cls(field, vars, {(0,) * len(tuple(vars)): field.canon(c)})

    @classmethod
    def var(cls, field, vars, name: str) -> "MultiPoly":
        vars = tuple(vars)
        i = vars.index(name)
        m = tuple(1 if k == i else 0 for k in range(len(vars)))
        return cls(field, vars, {m: field.one()})

    @classmethod
    def monomial(cls, field, vars, m: tuple, c=1) -> "MultiPoly":
        return cls(field, vars, {tuple(m): field.canon(c)})

    # -- queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def leading_monomial(self, order) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return as_order(order).max(self.terms)

    def leading_term(self, order) -> tuple[tuple, object]:
        m = self.leading_monomial(order)
        return m, self.terms[m]

    def leading_coefficient(self, order) -> RingValue:
        return RingValue(self.field, self.leading_term(order)[1])

    def support_vars(self) -> set[str]:
        return {self.vars[i] for m in self.terms for i, e in enumerate(m) if e}

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.vars != self.vars or other.field != self.field:
                raise ValueError("variable set or field mismatch")
            return other
        if isinstance(other, RingValue):
            other = other.payload
        return MultiPoly.constant(self.field, self.vars, other)

    def __add__(self, other):
        o = self._coerce(other)
        F = self.field
        out = dict(self.terms)
        for m, c in o.terms.items():
            s = F.add(out.get(m, F.zero()), c)
            if F.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return MultiPoly._raw(F, self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return MultiPoly._raw(F, self.vars, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        F = self.field
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = mono_mul(m1, m2)
                s = F.add(out.get(m, F.zero()), F.mul(c1, c2))
                if F.is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return MultiPoly._raw(F, self.vars, out)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        return self * c

    def mul_term(self, m: tuple, c) -> "MultiPoly":
        F = self.field
        c = F.canon(c)
        if F.is_zero(c):
            return MultiPoly.zero(F, self.vars)
        return MultiPoly._raw(F, self.vars, {mono_mul(k, m): F.mul(v, c) for k, v in self.terms.items()})

    def __pow__(self, k: int):
        result = MultiPoly.constant(self.field, self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.field == other.field and self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.vars, frozenset(self.terms.items())))

    def monic(self, order) -> "MultiPoly":
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self * self.field.inverse(c)

    def subs(self, values: Mapping[str, object]) -> "MultiPoly":
        """Substitute field constants for some variables (variable set unchanged)."""
        F = self.field
        idx = {self.vars.index(k): F.canon(v.payload if isinstance(v, RingValue) else v) for k, v in values.items()}
        out: dict = {}
        for m, c in self.terms.items():
            coeff = c
            new = list(m)
            for i, val in idx.items():
                if m[i]:
                    coeff = F.mul(coeff, F.power(val, m[i]))
                    new[i] = 0
            key = tuple(new)
            s = F.add(out.get(key, F.zero()), coeff)
            if F.is_zero(s):
                out.pop(key, None)
            else:
                out[key] = s
        return MultiPoly._raw(F, self.vars, out)

    # -- text -----------------------------------------------------------------
    def sorted_terms(self, order=DEGREVLEX) -> list[tuple[tuple, object]]:
        o = as_order(order)
        return sorted(self.terms.items(), key=lambda t: o.key(t[0]), reverse=True)

    def format(self, order=DEGREVLEX) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_terms(order)):
            neg = isinstance(c, Fraction) and c < 0
            mag = -c if neg else c
            factors = [self.vars[k] if e == 1 else f"{self.vars[k]}^{e}" for k, e in enumerate(m) if e]
            cs = str(mag)
            if factors:
                body = "*".join(factors) if mag == 1 else cs + "*" + "*".join(factors)
            else:
                body = cs
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"MultiPoly({self.field}, {self.format()!r})"


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_]\w*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            break
        num, name, op = mt.groups()
        if num is not None:
            toks.append(("num", num))
        elif name is not None:
            toks.append(("name", name))
        elif op is not None and not op.isspace():
            if op not in "+-*^()":
                raise ValueError(f"unexpected character {op!r} in polynomial")
            toks.append(("op", op))
        pos = mt.end()
    return toks


def parse_multipoly(text: str, field: RingSpec, vars: Sequence[str]) -> MultiPoly:
    """Parse ``text`` into a polynomial in ``vars`` over ``field``."""
    vars = tuple(vars)
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take(kind=None, value=None):
        nonlocal pos
        tok = peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ValueError(f"unexpected token {tok[1]!r} in {text!r}")
        pos += 1
        return tok

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        acc = term() * sign
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while peek() == ("op", "*"):
            take()
            acc = acc * factor()
        return acc

    def factor():
        kind, val = peek()
        if kind == "num":
            take()
            base = MultiPoly.constant(field, vars, Fraction(val))
        elif kind == "name":
            take()
            if val not in vars:
                raise ValueError(f"unknown variable {val!r}")
            base = MultiPoly.var(field, vars, val)
        elif (kind, val) == ("op", "("):
            take()
            base = expr()
            take("op", ")")
        elif (kind, val) == ("op", "-"):
            take()
            return -factor()
        else:
            raise ValueError(f"unexpected token {val!r} in {text!r}")
        if peek() == ("op", "^"):
            take()
            base = base ** int(take("num")[1])
        return base

    result = expr()
    if pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return result


def spoly(p: MultiPoly, q: MultiPoly, order) -> MultiPoly:
    """S-polynomial: leading terms cancel over the lcm of leading monomials."""
    if p.is_zero() or q.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    p._coerce(q)
    F = p.field
    mp, cp = p.leading_term(order)
    mq, cq = q.leading_term(order)
    lcm = mono_lcm(mp, mq)
    return p.mul_term(mono_div(lcm, mp), F.inverse(cp)) - q.mul_term(mono_div(lcm, mq), F.inverse(cq))

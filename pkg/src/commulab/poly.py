"""Univariate polynomials over a ring and Sylvester resultants."""

from __future__ import annotations

from typing import Iterable

from .matrix import Matrix, eval_poly_at_matrix
from .rings import RingError, RingSpec, RingValue


class UniPoly:
    """Polynomial with ascending canonical coefficients; zero is ``coeffs == ()``."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: RingSpec, coeffs: Iterable):
        cs = list(coeffs)
        while cs and ring.is_zero(cs[-1]):
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)

    @classmethod
    def from_values(cls, ring: RingSpec, values) -> "UniPoly":
        return cls(ring, [RingValue.of(ring, v).payload for v in values])

    @classmethod
    def constant(cls, ring: RingSpec, c) -> "UniPoly":
        return cls(ring, [RingValue.of(ring, c).payload])

    @classmethod
    def t(cls, ring: RingSpec) -> "UniPoly":
        return cls(ring, [ring.zero(), ring.one()])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> RingValue:
        if k < len(self.coeffs):
            return RingValue(self.ring, self.coeffs[k])
        return RingValue(self.ring, self.ring.zero())

    def leading(self) -> RingValue:
        return self.coeff(self.degree) if self.coeffs else RingValue(self.ring, self.ring.zero())

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.leading() == 1

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.ring != self.ring:
                raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return UniPoly.constant(self.ring, other)

    def __add__(self, other):
        o = self._coerce(other)
        R = self.ring
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (R.zero(),) * (n - len(self.coeffs))
        b = o.coeffs + (R.zero(),) * (n - len(o.coeffs))
        return UniPoly(R, [R.add(x, y) for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.ring, [self.ring.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        R = self.ring
        if not self.coeffs or not o.coeffs:
            return UniPoly(R, [])
        out = [R.zero()] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o.coeffs):
                out[i + j] = R.add(out[i + j], R.mul(a, b))
        return UniPoly(R, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = UniPoly.constant(self.ring, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.ring == other.ring and (self - other).is_zero()
        if isinstance(other, (int, RingValue)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __call__(self, x):
        if isinstance(x, Matrix):
            return eval_poly_at_matrix(self, x)
        x = RingValue.of(self.ring, x)
        R = self.ring
        acc = R.zero()
        for c in reversed(self.coeffs):
            acc = R.add(R.mul(acc, x.payload), c)
        return RingValue(R, acc)

    def divmod_linear(self, root) -> tuple["UniPoly", RingValue]:
        """Synthetic division by ``t - root``."""
        R = self.ring
        r = RingValue.of(R, root).payload
        out, acc = [], R.zero()
        for c in reversed(self.coeffs):
            acc = R.add(R.mul(acc, r), c)
            out.append(acc)
        rem = out.pop() if out else R.zero()
        return UniPoly(R, reversed(out)), RingValue(R, rem)

    def __repr__(self):
        return f"UniPoly({self.ring}, {self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if self.ring.is_zero(c):
                continue
            cs = self.ring.format_element(c)
            if k == 0:
                terms.append(cs)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                terms.append(mono if c == self.ring.one() else f"{cs}*{mono}")
        return " + ".join(terms)


def sylvester_matrix(f: UniPoly, g: UniPoly) -> Matrix:
    """Sylvester matrix with deg(g) shifted rows of f then deg(f) rows of g."""
    R = f.ring
    m, n = f.degree, g.degree
    size = m + n
    fd = list(reversed(f.coeffs))
    gd = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([R.zero()] * i + fd + [R.zero()] * (size - m - 1 - i))
    for i in range(m):
        rows.append([R.zero()] * i + gd + [R.zero()] * (size - n - 1 - i))
    return Matrix(R, rows)


def resultant(f: UniPoly, g: UniPoly) -> RingValue:
    """det of the Sylvester matrix of a monic f and any g; equals prod g(r_i)."""
    if g.ring != f.ring:
        raise RingError(f"ring mismatch: {f.ring} vs {g.ring}")
    if f.degree < 1 or not f.is_monic():
        raise ValueError("resultant needs f monic of degree >= 1")
    R = f.ring
    if g.is_zero():
        return RingValue(R, R.zero())
    if g.degree == 0:
        return RingValue(R, R.power(g.coeffs[0], f.degree))
    return sylvester_matrix(f, g).det()


def resultant_det_identity_check(X: Matrix, g: UniPoly) -> bool:
    """det(g(X)) == Res(charpoly(X), g)."""
    return eval_poly_at_matrix(g, X).det() == resultant(X.charpoly(), g)

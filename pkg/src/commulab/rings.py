"""Exact commutative rings with unity.

A ring is described by a frozen :class:`RingSpec` subclass.  Ring elements are
plain Python payloads (``int``, ``Fraction``, tuples) manipulated through the
spec's arithmetic methods; :class:`RingValue` wraps a payload together with its
spec for the public API.

Ring-spec mini-language::

    Z | Q | Zmod:<m> | GF:<p> | Dual:<spec> | Prod:<spec>,<spec>[,...]

Nested products may be parenthesised, e.g. ``Prod:(Prod:GF:2,GF:3),Z``; an
unparenthesised ``Prod:`` component swallows the rest of the list.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator


class RingError(ValueError):
    """Malformed ring spec, invalid element, or cross-ring operation."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


def _max_prime_exponent(m: int) -> int:
    # trial division is plenty for the moduli used here
    best, d = 1, 2
    while d * d <= m:
        e = 0
        while m % d == 0:
            m //= d
            e += 1
        best = max(best, e)
        d += 1
    return best


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _strip_parens(text: str) -> str:
    text = text.strip()
    while text.startswith("(") and text.endswith(")") and _balanced(text[1:-1]):
        text = text[1:-1].strip()
    return text


def _balanced(text: str) -> bool:
    depth = 0
    for ch in text:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


class RingSpec:
    """Base class for ring descriptions.  Subclasses are frozen dataclasses."""

    # -- structure -----------------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return False

    @property
    def is_field(self) -> bool:
        return False

    @property
    def characteristic(self) -> int:
        raise NotImplementedError

    def size(self) -> int:
        raise RingError(f"{self} is infinite")

    def nil_exponent(self) -> int:
        """Least t with (nilradical)^t = 0."""
        return 1

    # -- arithmetic on payloads ----------------------------------------------
    def zero(self) -> Any:
        raise NotImplementedError

    def one(self) -> Any:
        raise NotImplementedError

    def from_int(self, k: int) -> Any:
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def dot(self, xs, ys):
        acc = self.zero()
        for x, y in zip(xs, ys):
            acc = self.add(acc, self.mul(x, y))
        return acc

    def power(self, a, k: int):
        result, base = self.one(), a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def is_zero(self, a) -> bool:
        return a == self.zero()

    # -- predicates ----------------------------------------------------------
    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inverse(self, a):
        raise NotImplementedError

    def is_zero_divisor(self, a) -> bool:
        raise NotImplementedError

    # -- enumeration / text --------------------------------------------------
    def elements(self) -> Iterator[Any]:
        raise RingError(f"cannot enumerate infinite ring {self}")

    def parse_element(self, text: str):
        raise NotImplementedError

    def format_element(self, a) -> str:
        return str(a)

    def canon(self, a):
        """Coerce an int or payload-like object to canonical payload form."""
        raise NotImplementedError

    # -- public helpers ------------------------------------------------------
    def __call__(self, value) -> "RingValue":
        return RingValue.of(self, value)

    def enumerate(self) -> Iterator["RingValue"]:
        for p in self.elements():
            yield RingValue(self, p)


@dataclass(frozen=True)
class Integers(RingSpec):
    @property
    def characteristic(self):
        return 0

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, k):
        return int(k)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def dot(self, xs, ys):
        return sum(x * y for x, y in zip(xs, ys))

    def is_unit(self, a):
        return a in (1, -1)

    def inverse(self, a):
        if a not in (1, -1):
            raise RingError(f"{a} is not a unit in Z")
        return a

    def is_zero_divisor(self, a):
        return False

    def parse_element(self, text):
        return int(text.strip())

    def canon(self, a):
        if isinstance(a, Fraction):
            if a.denominator != 1:
                raise RingError(f"{a} is not an integer")
            return a.numerator
        return int(a)

    def __str__(self):
        return "Z"


@dataclass(frozen=True)
class Rationals(RingSpec):
    @property
    def is_field(self):
        return True

    @property
    def characteristic(self):
        return 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, k):
        return Fraction(k)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def is_unit(self, a):
        return a != 0

    def inverse(self, a):
        if a == 0:
            raise RingError("division by zero in Q")
        return 1 / a

    def is_zero_divisor(self, a):
        return False

    def parse_element(self, text):
        return Fraction(text.strip())

    def format_element(self, a):
        return str(a)

    def canon(self, a):
        return Fraction(a)

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class Mod(RingSpec):
    m: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 2:
            raise RingError(f"Zmod needs m >= 2, got {self.m!r}")

    @property
    def is_finite(self):
        return True

    @property
    def is_field(self):
        return is_prime(self.m)

    @property
    def characteristic(self):
        return self.m

    def size(self):
        return self.m

    def nil_exponent(self):
        return _max_prime_exponent(self.m)

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, k):
        return int(k) % self.m

    def add(self, a, b):
        return (a + b) % self.m

    def neg(self, a):
        return -a % self.m

    def sub(self, a, b):
        return (a - b) % self.m

    def mul(self, a, b):
        return a * b % self.m

    def dot(self, xs, ys):
        return sum(x * y for x, y in zip(xs, ys)) % self.m

    def power(self, a, k):
        return pow(a, k, self.m)

    def is_unit(self, a):
        return math.gcd(a, self.m) == 1

    def inverse(self, a):
        if math.gcd(a, self.m) != 1:
            raise RingError(f"{a} is not a unit mod {self.m}")
        return pow(a, -1, self.m)

    def is_zero_divisor(self, a):
        return a != 0 and math.gcd(a, self.m) > 1

    def elements(self):
        return iter(range(self.m))

    def parse_element(self, text):
        return self.canon(Fraction(text.strip()))

    def canon(self, a):
        if isinstance(a, Fraction):
            return a.numerator * self.inverse(a.denominator % self.m) % self.m
        return int(a) % self.m

    def __str__(self):
        return f"Zmod:{self.m}"


@dataclass(frozen=True)
class GF(Mod):
    """Prime field; shares the residue arithmetic of :class:`Mod`."""

    def __post_init__(self):
        if not isinstance(self.m, int) or not is_prime(self.m):
            raise RingError(f"GF needs a prime, got {self.m!r}")

    @property
    def p(self) -> int:
        return self.m

    @property
    def is_field(self):
        return True

    def nil_exponent(self):
        return 1

    def __str__(self):
        return f"GF:{self.m}"


@dataclass(frozen=True)
class Product(RingSpec):
    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) < 2:
            raise RingError("Prod needs at least two components")
        if not all(isinstance(c, RingSpec) for c in comps):
            raise RingError("Prod components must be ring specs")

    @property
    def is_finite(self):
        return all(c.is_finite for c in self.components)

    @property
    def characteristic(self):
        chars = [c.characteristic for c in self.components]
        if 0 in chars:
            return 0
        return math.lcm(*chars)

    def size(self):
        return math.prod(c.size() for c in self.components)

    def nil_exponent(self):
        return max(c.nil_exponent() for c in self.components)

    def zero(self):
        return tuple(c.zero() for c in self.components)

    def one(self):
        return tuple(c.one() for c in self.components)

    def from_int(self, k):
        return tuple(c.from_int(k) for c in self.components)

    def add(self, a, b):
        return tuple(c.add(x, y) for c, x, y in zip(self.components, a, b))

    def neg(self, a):
        return tuple(c.neg(x) for c, x in zip(self.components, a))

    def sub(self, a, b):
        return tuple(c.sub(x, y) for c, x, y in zip(self.components, a, b))

    def mul(self, a, b):
        return tuple(c.mul(x, y) for c, x, y in zip(self.components, a, b))

    def is_zero(self, a):
        return all(c.is_zero(x) for c, x in zip(self.components, a))

    def is_unit(self, a):
        return all(c.is_unit(x) for c, x in zip(self.components, a))

    def inverse(self, a):
        return tuple(c.inverse(x) for c, x in zip(self.components, a))

    def is_zero_divisor(self, a):
        if self.is_zero(a):
            return False
        return any(c.is_zero(x) or c.is_zero_divisor(x) for c, x in zip(self.components, a))

    def elements(self):
        return itertools.product(*(list(c.elements()) for c in self.components))

    def parse_element(self, text):
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            parts = _split_top(text[1:-1], "|")
            if len(parts) != len(self.components):
                raise RingError(f"expected {len(self.components)} components in {text!r}")
            return tuple(c.parse_element(s) for c, s in zip(self.components, parts))
        return self.from_int(int(text))

    def format_element(self, a):
        return "(" + "|".join(c.format_element(x) for c, x in zip(self.components, a)) + ")"

    def canon(self, a):
        if isinstance(a, tuple):
            return tuple(c.canon(x) for c, x in zip(self.components, a))
        return self.from_int(a)

    def __str__(self):
        parts = [f"({c})" if isinstance(c, Product) else str(c) for c in self.components]
        return "Prod:" + ",".join(parts)


@dataclass(frozen=True)
class Dual(RingSpec):
    """``base[eps]/(eps^2)``; payload ``(a, b)`` stands for ``a + b*eps``."""

    base: RingSpec

    @property
    def is_finite(self):
        return self.base.is_finite

    @property
    def characteristic(self):
        return self.base.characteristic

    def size(self):
        return self.base.size() ** 2

    def nil_exponent(self):
        return self.base.nil_exponent() + 1

    def zero(self):
        z = self.base.zero()
        return (z, z)

    def one(self):
        return (self.base.one(), self.base.zero())

    def from_int(self, k):
        return (self.base.from_int(k), self.base.zero())

    def add(self, a, b):
        B = self.base
        return (B.add(a[0], b[0]), B.add(a[1], b[1]))

    def neg(self, a):
        return (self.base.neg(a[0]), self.base.neg(a[1]))

    def mul(self, a, b):
        B = self.base
        return (B.mul(a[0], b[0]), B.add(B.mul(a[0], b[1]), B.mul(a[1], b[0])))

    def is_zero(self, a):
        return self.base.is_zero(a[0]) and self.base.is_zero(a[1])

    def is_unit(self, a):
        return self.base.is_unit(a[0])

    def inverse(self, a):
        B = self.base
        inv = B.inverse(a[0])
        return (inv, B.neg(B.mul(a[1], B.mul(inv, inv))))

    def is_zero_divisor(self, a):
        if self.is_zero(a):
            return False
        return self.base.is_zero(a[0]) or self.base.is_zero_divisor(a[0])

    def elements(self):
        items = list(self.base.elements())
        return itertools.product(items, items)

    def parse_element(self, text):
        text = text.strip()
        if not text.endswith("?e"):
            return (self.base.parse_element(_unbracket(text)), self.base.zero())
        body = text[:-2]
        cut = _last_top_plus(body)
        if cut is None:
            return (self.base.zero(), self.base.parse_element(_unbracket(body)))
        a, b = body[:cut], body[cut + 1:]
        return (self.base.parse_element(_unbracket(a)), self.base.parse_element(_unbracket(b)))

    def format_element(self, a):
        fa, fb = self.base.format_element(a[0]), self.base.format_element(a[1])
        if isinstance(self.base, Dual):
            fa, fb = f"[{fa}]", f"[{fb}]"
        return f"{fa}+{fb}?e"

    def canon(self, a):
        if isinstance(a, tuple):
            return (self.base.canon(a[0]), self.base.canon(a[1]))
        return self.from_int(a)

    def __str__(self):
        return f"Dual:{self.base}"


def _unbracket(text: str) -> str:
    text = text.strip()
    if text.startswith("[") and text.endswith("]"):
        return text[1:-1]
    return text


def _last_top_plus(body: str):
    depth = 0
    for i in range(len(body) - 1, 0, -1):
        ch = body[i]
        if ch in ")]":
            depth += 1
        elif ch in "([":
            depth -= 1
        elif ch == "+" and depth == 0:
            return i
    return None


@dataclass(frozen=True)
class RingValue:
    """An element of a concrete ring.  Arithmetic across rings is an error."""

    spec: RingSpec
    payload: Any

    @classmethod
    def of(cls, spec: RingSpec, value) -> "RingValue":
        if isinstance(value, RingValue):
            if value.spec != spec:
                raise RingError(f"element of {value.spec} used in {spec}")
            return value
        if isinstance(value, str):
            return cls(spec, spec.parse_element(value))
        return cls(spec, spec.canon(value))

    def _other(self, other) -> Any:
        if isinstance(other, RingValue):
            if other.spec != self.spec:
                raise RingError(f"cannot combine {self.spec} and {other.spec}")
            return other.payload
        if isinstance(other, int):
            return self.spec.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingValue(self.spec, self.spec.add(self.payload, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingValue(self.spec, self.spec.sub(self.payload, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingValue(self.spec, self.spec.sub(o, self.payload))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingValue(self.spec, self.spec.mul(self.payload, o))

    __rmul__ = __mul__

    def __neg__(self):
        return RingValue(self.spec, self.spec.neg(self.payload))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RingValue(self.spec, self.spec.power(self.payload, k))

    def __eq__(self, other):
        if isinstance(other, RingValue):
            return self.spec == other.spec and self.spec.is_zero(self.spec.sub(self.payload, other.payload))
        if isinstance(other, int):
            return self.spec.is_zero(self.spec.sub(self.payload, self.spec.from_int(other)))
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.payload))

    def is_zero(self) -> bool:
        return self.spec.is_zero(self.payload)

    def inverse(self) -> "RingValue":
        return RingValue(self.spec, self.spec.inverse(self.payload))

    def __str__(self):
        return self.spec.format_element(self.payload)

    def __repr__(self):
        return f"RingValue({self.spec}, {self})"


# ---------------------------------------------------------------------------
# public operations


def parse_ring(spec_string: str) -> RingSpec:
    """Parse the ring mini-language, e.g. ``"Prod:GF:3,Z"`` or ``"Dual:Q"``."""
    text = _strip_parens(spec_string)
    if not text:
        raise RingError("empty ring spec")
    if text == "Z":
        return Integers()
    if text == "Q":
        return Rationals()
    head, sep, rest = text.partition(":")
    if not sep:
        raise RingError(f"malformed ring spec {spec_string!r}")
    if head in ("Zmod", "GF"):
        try:
            value = int(rest)
        except ValueError:
            raise RingError(f"malformed modulus in {spec_string!r}") from None
        return Mod(value) if head == "Zmod" else GF(value)
    if head == "Dual":
        return Dual(parse_ring(rest))
    if head == "Prod":
        return Product(tuple(parse_ring(p) for p in _split_product(rest)))
    raise RingError(f"unknown ring kind {head!r} in {spec_string!r}")


def _split_product(rest: str) -> list[str]:
    raw = _split_top(rest, ",")
    parts: list[str] = []
    for i, piece in enumerate(raw):
        if piece.strip().startswith("Prod:"):
            parts.append(",".join(raw[i:]))
            break
        parts.append(piece)
    if any(not p.strip() for p in parts):
        raise RingError(f"empty component in Prod:{rest}")
    return parts


def is_unit(x: RingValue) -> bool:
    return x.spec.is_unit(x.payload)


def is_zero_divisor(x: RingValue) -> bool:
    return x.spec.is_zero_divisor(x.payload)


def element_nilindex(x: RingValue, bound: int) -> int | None:
    """Least ``k <= bound`` with ``x**k == 0``; ``None`` if there is none."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    spec, p = x.spec, x.payload
    cur = p
    for k in range(1, bound + 1):
        if spec.is_zero(cur):
            return k
        cur = spec.mul(cur, p)
    return None


def enumerate_ring(spec: RingSpec) -> Iterator[RingValue]:
    if not spec.is_finite:
        raise RingError(f"cannot enumerate infinite ring {spec}")
    return spec.enumerate()

"""Dense exact matrices over a :class:`~commulab.rings.RingSpec`.

Entries are stored as canonical payloads, row-major, in a tuple of tuples.
Everything that needs a determinant or a characteristic polynomial goes through
the division-free Berkowitz recurrence, so zero-divisors in the ring are never a
problem.
"""

from __future__ import annotations

import json
from typing import Callable, Iterable, Sequence

from .rings import RingError, RingSpec, RingValue, parse_ring


class MatrixError(ValueError):
    pass


def berkowitz(entries: Sequence[Sequence], zero, one, add, mul, neg) -> list:
    """Characteristic polynomial coefficients of a square array, descending.

    Returns ``[1, c_{n-1}, ..., c_0]`` with ``det(tI - A) = t^n + c_{n-1} t^{n-1} + ...``.
    Only ring addition and multiplication are used.
    """
    n = len(entries)
    vec = [one]
    for k in range(n):
        # A_{k+1} = [[A_k, C], [R, a]]
        a = entries[k][k]
        R = [entries[k][j] for j in range(k)]
        C = [entries[i][k] for i in range(k)]
        # first column of the Toeplitz matrix: 1, -a, -R C, -R A_k C, ...
        col = [one, neg(a)]
        cur = C
        for _ in range(k):
            s = zero
            for r, c in zip(R, cur):
                s = add(s, mul(r, c))
            col.append(neg(s))
            nxt = []
            for i in range(k):
                s = zero
                for j in range(k):
                    s = add(s, mul(entries[i][j], cur[j]))
                nxt.append(s)
            cur = nxt
        # vec_new = T * vec, T lower-triangular Toeplitz of shape (k+2) x (k+1)
        new = []
        for i in range(k + 2):
            s = zero
            for j in range(k + 1):
                if 0 <= i - j < len(col):
                    s = add(s, mul(col[i - j], vec[j]))
            new.append(s)
        vec = new
    return vec


class Matrix:
    """Immutable n x n matrix with entries in ``ring``."""

    __slots__ = ("ring", "n", "rows", "_hash")

    def __init__(self, ring: RingSpec, rows: Iterable[Iterable]):
        self.ring = ring
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows)
        if self.n < 1 or any(len(r) != self.n for r in self.rows):
            raise MatrixError("matrix must be square with n >= 1")
        self._hash = None

    # -- construction ---------------------------------------------------------
    @classmethod
    def from_values(cls, ring: RingSpec, values) -> "Matrix":
        """Build from nested lists of ints, strings, Fractions or RingValues."""
        return cls(ring, [[RingValue.of(ring, v).payload for v in row] for row in values])

    @classmethod
    def identity(cls, n: int, ring: RingSpec) -> "Matrix":
        z, o = ring.zero(), ring.one()
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, ring: RingSpec) -> "Matrix":
        z = ring.zero()
        return cls(ring, [[z] * n for _ in range(n)])

    @classmethod
    def diag(cls, ring: RingSpec, values) -> "Matrix":
        vals = [RingValue.of(ring, v).payload for v in values]
        n, z = len(vals), ring.zero()
        return cls(ring, [[vals[i] if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def block_diag(cls, ring: RingSpec, blocks: Sequence["Matrix"]) -> "Matrix":
        n = sum(b.n for b in blocks)
        rows = [[ring.zero()] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(b.n):
                for j in range(b.n):
                    rows[off + i][off + j] = b.rows[i][j]
            off += b.n
        return cls(ring, rows)

    # -- access ---------------------------------------------------------------
    def __getitem__(self, ij) -> RingValue:
        i, j = ij
        return RingValue(self.ring, self.rows[i][j])

    def to_values(self) -> list[list[RingValue]]:
        return [[RingValue(self.ring, x) for x in row] for row in self.rows]

    def to_strings(self) -> list[list[str]]:
        f = self.ring.format_element
        return [[f(x) for x in row] for row in self.rows]

    def to_json(self) -> str:
        return json.dumps(self.to_strings())

    @classmethod
    def from_json(cls, ring: RingSpec | str, text: str) -> "Matrix":
        if isinstance(ring, str):
            ring = parse_ring(ring)
        data = json.loads(text)
        return cls(ring, [[ring.parse_element(str(v)) for v in row] for row in data])

    def __repr__(self):
        return f"Matrix({self.ring}, {self.to_strings()})"

    def __str__(self):
        cells = self.to_strings()
        w = max(len(c) for row in cells for c in row)
        return "\n".join("[" + " ".join(c.rjust(w) for c in row) + "]" for row in cells)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.ring != self.ring or other.n != self.n:
            return False
        z = self.ring.is_zero
        sub = self.ring.sub
        return all(z(sub(a, b)) for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.rows))
        return self._hash

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise MatrixError(f"expected Matrix, got {type(other).__name__}")
        if other.ring != self.ring:
            raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")
        if other.n != self.n:
            raise MatrixError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        add = self.ring.add
        return Matrix(self.ring, [[add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        sub = self.ring.sub
        return Matrix(self.ring, [[sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        neg = self.ring.neg
        return Matrix(self.ring, [[neg(a) for a in r] for r in self.rows])

    def __mul__(self, other) -> "Matrix":
        if isinstance(other, Matrix):
            self._check(other)
            cols = list(zip(*other.rows))
            dot = self.ring.dot
            return Matrix(self.ring, [[dot(r, c) for c in cols] for r in self.rows])
        return self.scale(other)

    def __rmul__(self, other) -> "Matrix":
        return self.scale(other)

    def scale(self, c) -> "Matrix":
        c = RingValue.of(self.ring, c).payload
        mul = self.ring.mul
        return Matrix(self.ring, [[mul(c, a) for a in r] for r in self.rows])

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Matrix.identity(self.n, self.ring), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, zip(*self.rows))

    def trace(self) -> RingValue:
        acc = self.ring.zero()
        for i in range(self.n):
            acc = self.ring.add(acc, self.rows[i][i])
        return RingValue(self.ring, acc)

    def is_zero(self) -> bool:
        z = self.ring.is_zero
        return all(z(a) for r in self.rows for a in r)

    def is_upper_triangular(self, strict: bool = False) -> bool:
        z = self.ring.is_zero
        return all(z(self.rows[i][j]) for i in range(self.n) for j in range(self.n) if j < i or (strict and j == i))

    def is_diagonal(self) -> bool:
        z = self.ring.is_zero
        return all(z(self.rows[i][j]) for i in range(self.n) for j in range(self.n) if i != j)

    def shift(self, mu) -> "Matrix":
        """``self - mu*I``."""
        return self - Matrix.identity(self.n, self.ring).scale(mu)

    def block(self, start: int, stop: int) -> "Matrix":
        return Matrix(self.ring, [r[start:stop] for r in self.rows[start:stop]])

    # -- determinants ---------------------------------------------------------
    def charpoly(self):
        """Monic characteristic polynomial ``det(tI - A)`` as a :class:`UniPoly`."""
        from .poly import UniPoly

        R = self.ring
        desc = berkowitz(self.rows, R.zero(), R.one(), R.add, R.mul, R.neg)
        return UniPoly(R, reversed(desc))

    def det(self) -> RingValue:
        R = self.ring
        desc = berkowitz(self.rows, R.zero(), R.one(), R.add, R.mul, R.neg)
        c0 = desc[-1]
        return RingValue(R, c0 if self.n % 2 == 0 else R.neg(c0))

    def adjugate(self) -> "Matrix":
        # A * (A^{n-1} + c_{n-1} A^{n-2} + ... + c_1 I) = -c_0 I
        R = self.ring
        desc = berkowitz(self.rows, R.zero(), R.one(), R.add, R.mul, R.neg)
        acc = Matrix.zeros(self.n, R)
        ident = Matrix.identity(self.n, R)
        for c in desc[:-1]:
            acc = acc * self + ident.scale(RingValue(R, c))
        return acc if self.n % 2 == 1 else -acc

    def inverse(self) -> "Matrix":
        d = self.det()
        if not self.ring.is_unit(d.payload):
            raise MatrixError(f"determinant {d} is not a unit in {self.ring}")
        return self.adjugate().scale(d.inverse())

    def is_invertible(self) -> bool:
        return self.ring.is_unit(self.det().payload)


# ---------------------------------------------------------------------------
# constructors and operations


def jordan_block(n: int, ring: RingSpec) -> Matrix:
    """Nilpotent Jordan block: ones on the first superdiagonal."""
    if n < 1:
        raise MatrixError("n must be >= 1")
    z, o = ring.zero(), ring.one()
    return Matrix(ring, [[o if j == i + 1 else z for j in range(n)] for i in range(n)])


def elementary(n: int, ring: RingSpec, i: int, j: int) -> Matrix:
    """Matrix unit E_ij (0-based indices)."""
    z, o = ring.zero(), ring.one()
    return Matrix(ring, [[o if (r, c) == (i, j) else z for c in range(n)] for r in range(n)])


def commutator(A: Matrix, B: Matrix) -> Matrix:
    return A * B - B * A


def charpoly(A: Matrix):
    return A.charpoly()


def cayley_hamilton_check(A: Matrix) -> bool:
    return eval_poly_at_matrix(A.charpoly(), A).is_zero()


def matrix_nilindex(X: Matrix, bound: int) -> int | None:
    """Least ``k <= bound`` with ``X**k == 0``, else ``None``."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    cur = X
    for k in range(1, bound + 1):
        if cur.is_zero():
            return k
        if k < bound:
            cur = cur * X
    return None


def nilpotency_bound(X: Matrix) -> int:
    """Exponent at which every nilpotent matrix over ``X.ring`` of size n vanishes.

    Modulo the nilradical a nilpotent matrix satisfies ``X^n = 0``, so
    ``X^(n*t) = 0`` where ``t`` is the nilpotency index of the nilradical.
    """
    return X.n * X.ring.nil_exponent()


def is_nilpotent(X: Matrix) -> bool:
    return (X ** nilpotency_bound(X)).is_zero()


def conjugate(A: Matrix, P: Matrix) -> Matrix:
    """``P A P^-1``; P must have unit determinant."""
    return P * A * P.inverse()


def eval_poly_at_matrix(g, X: Matrix) -> Matrix:
    if g.ring != X.ring:
        raise RingError(f"polynomial over {g.ring} evaluated at matrix over {X.ring}")
    ident = Matrix.identity(X.n, X.ring)
    acc = Matrix.zeros(X.n, X.ring)
    for c in reversed(g.coeffs):
        acc = acc * X + ident.scale(RingValue(X.ring, c))
    return acc


# ---------------------------------------------------------------------------
# linear algebra over fields


def _require_field(ring: RingSpec):
    if not ring.is_field:
        raise RingError(f"{ring} is not a field")


def rref(ring: RingSpec, rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of a rectangular payload array over a field."""
    _require_field(ring)
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if not ring.is_zero(M[i][c])), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = ring.inverse(M[r][c])
        M[r] = [ring.mul(inv, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and not ring.is_zero(M[i][c]):
                f = M[i][c]
                M[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def nullspace(ring: RingSpec, rows: Sequence[Sequence], ncols: int | None = None) -> list[tuple]:
    """Basis of {v : M v = 0} for a rectangular payload array (free variable = 1)."""
    if ncols is None:
        ncols = len(rows[0])
    R, pivots = rref(ring, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ring.zero()] * ncols
        v[f] = ring.one()
        for row, p in zip(R, pivots):
            v[p] = ring.neg(row[f])
        basis.append(tuple(v))
    return basis


def kernel_basis(A: Matrix) -> list[tuple[RingValue, ...]]:
    """Null-space basis of A over a field via exact Gaussian elimination."""
    _require_field(A.ring)
    return [tuple(RingValue(A.ring, x) for x in v) for v in nullspace(A.ring, A.rows, A.n)]


def rank(A: Matrix) -> int:
    _require_field(A.ring)
    return len(rref(A.ring, A.rows)[1])


def span_rref(ring: RingSpec, vectors: Sequence[Sequence]) -> list[tuple]:
    """Canonical form of the span of payload vectors (rows of the RREF)."""
    if not vectors:
        return []
    R, _ = rref(ring, vectors)
    return [tuple(r) for r in R]


def mat_vec(A: Matrix, v: Sequence) -> tuple:
    dot = A.ring.dot
    return tuple(dot(r, v) for r in A.rows)


def from_columns(ring: RingSpec, cols: Sequence[Sequence]) -> Matrix:
    return Matrix(ring, zip(*cols))


def map_entries(A: Matrix, fn: Callable) -> Matrix:
    return Matrix(A.ring, [[fn(x) for x in r] for r in A.rows])


def ad_matrix(A: Matrix) -> list[list]:
    """Payload matrix of Y -> AY - YA on row-major coordinates."""
    R, n = A.ring, A.n
    rows = []
    for i in range(n):
        for j in range(n):
            row = [R.zero()] * (n * n)
            for k in range(n):
                row[k * n + j] = R.add(row[k * n + j], A.rows[i][k])
                row[i * n + k] = R.sub(row[i * n + k], A.rows[k][j])
            rows.append(row)
    return rows


def centralizer_dimension(A: Matrix) -> int:
    """dim ker(ad A) over a field."""
    _require_field(A.ring)
    return A.n * A.n - len(rref(A.ring, ad_matrix(A))[1])

"""Dense matrices over an order (or its fraction field).

A matrix with ``M`` rows and ``N`` columns stands for the morphism
``E^N -> E^M`` acting on column vectors, ``x -> A x``.  Composition is the
matrix product, so ``(A @ B)`` is "first B, then A".
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainValueError, OrderMismatch, SingularMatrix, SizeMismatch
from .orders import (
    OrderElement,
    OrderSpec,
    element_from_json,
    element_to_json,
    order_from_json,
    order_to_json,
)


def _pair_mul(x, y, t, n):
    return (x[0] * y[0] - n * x[1] * y[1], x[0] * y[1] + x[1] * y[0] + t * x[1] * y[1])


def _pair_exact_div(x, y, t, n):
    """``x / y`` in the order, assuming ``y`` divides ``x``."""
    conj = (y[0] + t * y[1], -y[1])
    num = _pair_mul(x, conj, t, n)
    nm = y[0] * y[0] + t * y[0] * y[1] + n * y[1] * y[1]
    return (num[0] // nm, num[1] // nm)


def _bareiss_pairs(a, t, n):
    """Fraction-free determinant of a square matrix of ``(a, b)`` integer pairs."""
    a = [list(r) for r in a]
    size = len(a)
    if size == 0:
        return (1, 0)
    sign, prev = 1, (1, 0)
    for k in range(size - 1):
        if a[k][k] == (0, 0):
            p = next((i for i in range(k + 1, size) if a[i][k] != (0, 0)), None)
            if p is None:
                return (0, 0)
            a[k], a[p] = a[p], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, size):
            lead = a[i][k]
            row = a[i]
            for j in range(k + 1, size):
                u = _pair_mul(row[j], piv, t, n)
                v = _pair_mul(lead, a[k][j], t, n)
                row[j] = _pair_exact_div((u[0] - v[0], u[1] - v[1]), prev, t, n)
        prev = piv
    d = a[size - 1][size - 1]
    return (sign * d[0], sign * d[1])


class Matrix:
    __slots__ = ("order", "rows", "cols", "entries", "_hash")

    def __init__(self, order: OrderSpec, entries: Sequence[Sequence]):
        rows = tuple(
            tuple(e if isinstance(e, OrderElement) else OrderElement(order, e) for e in row)
            for row in entries
        )
        if not rows or not rows[0]:
            raise SizeMismatch("matrices need at least one row and one column")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise SizeMismatch("ragged matrix")
        for r in rows:
            for e in r:
                if e.order != order:
                    raise OrderMismatch("entry over %s in a matrix over %s" % (e.order, order))
        self.order = order
        self.entries = rows
        self.rows = len(rows)
        self.cols = ncols
        self._hash = None

    # constructors ------------------------------------------------------
    @classmethod
    def identity(cls, order: OrderSpec, n: int) -> Matrix:
        return cls.scalar(order, n, 1)

    @classmethod
    def scalar(cls, order: OrderSpec, n: int, value) -> Matrix:
        z = order.zero()
        v = value if isinstance(value, OrderElement) else OrderElement(order, value)
        return cls(order, [[v if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, order: OrderSpec, rows: int, cols: int) -> Matrix:
        z = order.zero()
        return cls(order, [[z] * cols for _ in range(rows)])

    @classmethod
    def from_pairs(cls, order: OrderSpec, grid: Iterable[Iterable]) -> Matrix:
        """Build from ``[[a, b], ...]`` pairs or bare integers."""
        out = []
        for row in grid:
            out.append([
                OrderElement(order, *e) if isinstance(e, (tuple, list)) else OrderElement(order, e)
                for e in row
            ])
        return cls(order, out)

    @classmethod
    def column(cls, order: OrderSpec, values: Iterable) -> Matrix:
        return cls(order, [[v] for v in values])

    @classmethod
    def row(cls, order: OrderSpec, values: Iterable) -> Matrix:
        return cls(order, [list(values)])

    # basic protocol ----------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> OrderElement:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.order == other.order and self.entries == other.entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.order, self.entries))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return "Matrix(%s, [%s])" % (self.order, body)

    def key(self) -> tuple:
        return tuple(e.key() for row in self.entries for e in row)

    # arithmetic --------------------------------------------------------
    def _check_same(self, other: Matrix) -> None:
        if other.order != self.order:
            raise OrderMismatch("%s vs %s" % (self.order, other.order))
        if other.shape != self.shape:
            raise SizeMismatch("shapes %s and %s differ" % (self.shape, other.shape))

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix(self.order, [
            [x + y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)
        ])

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix(self.order, [
            [x - y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)
        ])

    def __neg__(self) -> Matrix:
        return Matrix(self.order, [[-x for x in r] for r in self.entries])

    def scale(self, c) -> Matrix:
        return Matrix(self.order, [[x * c for x in r] for r in self.entries])

    def __matmul__(self, other: Matrix) -> Matrix:
        if other.order != self.order:
            raise OrderMismatch("%s vs %s" % (self.order, other.order))
        if self.cols != other.rows:
            raise SizeMismatch("cannot compose %s with %s" % (self.shape, other.shape))
        cols = list(zip(*other.entries))
        z = self.order.zero()
        out = []
        for r in self.entries:
            row = []
            for c in cols:
                acc = z
                for x, y in zip(r, c):
                    if x.a or x.b:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return Matrix(self.order, out)

    def transpose(self) -> Matrix:
        return Matrix(self.order, list(zip(*self.entries)))

    def conj(self) -> Matrix:
        return Matrix(self.order, [[x.conj() for x in r] for r in self.entries])

    def dagger(self) -> Matrix:
        """Conjugate transpose."""
        return Matrix(self.order, [[x.conj() for x in c] for c in zip(*self.entries)])

    def select(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> Matrix:
        rows = range(self.rows) if rows is None else rows
        cols = range(self.cols) if cols is None else cols
        return Matrix(self.order, [[self.entries[i][j] for j in cols] for i in rows])

    def vstack(self, other: Matrix) -> Matrix:
        if other.cols != self.cols or other.order != self.order:
            raise SizeMismatch("cannot stack %s over %s" % (self.shape, other.shape))
        return Matrix(self.order, self.entries + other.entries)

    def hstack(self, other: Matrix) -> Matrix:
        if other.rows != self.rows or other.order != self.order:
            raise SizeMismatch("cannot place %s beside %s" % (self.shape, other.shape))
        return Matrix(self.order, [a + b for a, b in zip(self.entries, other.entries)])

    # predicates --------------------------------------------------------
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_integral(self) -> bool:
        return all(e.is_integral() for r in self.entries for e in r)

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.entries for e in r)

    def is_identity_multiple(self, c) -> bool:
        if not self.is_square():
            return False
        return self == Matrix.scalar(self.order, self.rows, c)

    def is_hermitian(self) -> bool:
        return self.is_square() and self == self.dagger()

    # linear algebra over the fraction field ----------------------------
    def _echelon(self):
        """Gaussian elimination over K; returns (reduced rows, pivots, sign)."""
        m = [list(r) for r in self.entries]
        pivots = []
        sign = 1
        r = 0
        for c in range(self.cols):
            p = next((i for i in range(r, self.rows) if not m[i][c].is_zero()), None)
            if p is None:
                continue
            if p != r:
                m[r], m[p] = m[p], m[r]
                sign = -sign
            inv = m[r][c].inverse()
            for i in range(r + 1, self.rows):
                if not m[i][c].is_zero():
                    f = m[i][c] * inv
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m, pivots, sign

    def rank(self) -> int:
        return len(self._echelon()[1])

    def det(self) -> OrderElement:
        if not self.is_square():
            raise SizeMismatch("determinant of a non-square %s matrix" % (self.shape,))
        # clear denominators, then eliminate fraction-free on integer pairs
        D = 1
        for r in self.entries:
            for e in r:
                D = math.lcm(D, e.denominator())
        pairs = [[(int(e.a * D), int(e.b * D)) for e in r] for r in self.entries]
        a, b = _bareiss_pairs(pairs, self.order.t, self.order.n)
        scale = D ** self.rows
        return OrderElement(self.order, Fraction(a, scale), Fraction(b, scale))

    def inverse(self) -> Matrix:
        """Inverse over the fraction field."""
        if not self.is_square():
            raise SizeMismatch("inverse of a non-square %s matrix" % (self.shape,))
        n = self.rows
        o = self.order
        one, z = o.one(), o.zero()
        m = [list(r) + [one if i == j else z for j in range(n)] for i, r in enumerate(self.entries)]
        for c in range(n):
            p = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
            if p is None:
                raise SingularMatrix("matrix is singular")
            m[c], m[p] = m[p], m[c]
            inv = m[c][c].inverse()
            m[c] = [x * inv for x in m[c]]
            for i in range(n):
                if i != c and not m[i][c].is_zero():
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return Matrix(o, [r[n:] for r in m])

    def denominator(self) -> int:
        return math.lcm(*(e.denominator() for r in self.entries for e in r))

    # JSON --------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "order": order_to_json(self.order),
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[element_to_json(e) for e in r] for r in self.entries],
        }

    @classmethod
    def from_json(cls, doc: dict, order: OrderSpec | None = None) -> Matrix:
        if order is None:
            order = order_from_json(doc["order"])
        grid = doc["entries"]
        m = cls(order, [[element_from_json(order, e) for e in r] for r in grid])
        if "rows" in doc and doc["rows"] != m.rows or "cols" in doc and doc["cols"] != m.cols:
            raise DomainValueError("declared shape does not match the entries")
        return m


MorphismMatrix = Matrix


def regular_rep(m: Matrix) -> list[list]:
    """Integer (or rational) matrix of ``m`` on the rank-2 lattice of each coordinate.

    The entry ``x = a + b*w`` acts on the basis ``(1, w)`` by the block
    ``[[a, -n*b], [b, a + t*b]]``; over Z this is the scalar block ``a*I_2``.
    The result has shape ``2M x 2N`` and is multiplicative:
    ``regular_rep(A @ B) == regular_rep(A) * regular_rep(B)``.
    """
    o = m.order
    out = [[0] * (2 * m.cols) for _ in range(2 * m.rows)]
    for i, row in enumerate(m.entries):
        for j, x in enumerate(row):
            a, b = x.a, x.b
            out[2 * i][2 * j] = a
            out[2 * i][2 * j + 1] = -o.n * b
            out[2 * i + 1][2 * j] = b
            out[2 * i + 1][2 * j + 1] = a + o.t * b
    return out


def int_matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in cols] for r in a]

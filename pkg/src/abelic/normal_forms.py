"""Hermite and Smith normal forms over Euclidean orders.

Both routines are transform-tracking: ``hnf`` returns ``(H, U)`` with
``U @ M == H`` and ``smith_form`` returns ``(D, U, V)`` with ``U @ M @ V == D``,
``U`` and ``V`` unimodular.  Pivots and elementary divisors are normalized to
their canonical associate (see :func:`abelic.orders.canonical_associate`).
"""

from __future__ import annotations

import math

from .errors import NonEuclideanOrder, SingularMatrix, SizeMismatch
from .matrices import Matrix
from .orders import OrderElement, canonical_associate, euclid_divmod


def _require_euclidean(m: Matrix) -> None:
    if not m.order.euclidean:
        raise NonEuclideanOrder("normal forms need a Euclidean order, got %s" % m.order)


def _quotient(x: OrderElement, p: OrderElement) -> OrderElement:
    """Quotient used to reduce ``x`` modulo the pivot ``p``.

    Over Z this is floor division so residues land in ``[0, p)``; over the
    quadratic orders it is the Euclidean (nearest) quotient.
    """
    if x.order.is_integers:
        return OrderElement(x.order, x.a // p.a)
    return euclid_divmod(x, p)[0]


def _identity_rows(order, n):
    one, z = order.one(), order.zero()
    return [[one if i == j else z for j in range(n)] for i in range(n)]


def _row_axpy(rows, dst, src, q):
    """rows[dst] -= q * rows[src]"""
    rows[dst] = [x - q * y for x, y in zip(rows[dst], rows[src])]


def hnf(m: Matrix) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form: ``U @ m == H`` with ``H`` upper echelon.

    The row span (equivalently the column span of the transposes) is preserved.
    """
    _require_euclidean(m)
    h = [list(r) for r in m.entries]
    u = _identity_rows(m.order, m.rows)
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        while True:
            live = [i for i in range(r, m.rows) if not h[i][c].is_zero()]
            if not live:
                break
            p = min(live, key=lambda i: (h[i][c].norm(), i))
            h[r], h[p] = h[p], h[r]
            u[r], u[p] = u[p], u[r]
            clean = True
            for i in range(r + 1, m.rows):
                if not h[i][c].is_zero():
                    q = euclid_divmod(h[i][c], h[r][c])[0]
                    _row_axpy(h, i, r, q)
                    _row_axpy(u, i, r, q)
                    clean = clean and h[i][c].is_zero()
            if clean:
                break
        if h[r][c].is_zero():
            continue
        _, unit = canonical_associate(h[r][c])
        h[r] = [x * unit for x in h[r]]
        u[r] = [x * unit for x in u[r]]
        for i in range(r):
            q = _quotient(h[i][c], h[r][c])
            if not q.is_zero():
                _row_axpy(h, i, r, q)
                _row_axpy(u, i, r, q)
        r += 1
    return Matrix(m.order, h), Matrix(m.order, u)


def hnf_pivots(h: Matrix) -> list[tuple[int, int]]:
    """``(row, col)`` positions of the leading entries of an echelon matrix."""
    out = []
    for i, row in enumerate(h.entries):
        j = next((j for j, e in enumerate(row) if not e.is_zero()), None)
        if j is not None:
            out.append((i, j))
    return out


def smith_form(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``D = U @ m @ V`` with ``d_1 | d_2 | ...`` on the diagonal."""
    _require_euclidean(m)
    o = m.order
    a = [list(r) for r in m.entries]
    u = _identity_rows(o, m.rows)
    # V is tracked through its transpose so column operations become row operations
    vt = _identity_rows(o, m.cols)
    nr, nc = m.rows, m.cols

    def col_axpy(dst, src, q):
        for row in a:
            row[dst] = row[dst] - q * row[src]
        _row_axpy(vt, dst, src, q)

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        vt[i], vt[j] = vt[j], vt[i]

    for t in range(min(nr, nc)):
        while True:
            cands = [(a[i][j].norm(), i, j) for i in range(t, nr) for j in range(t, nc) if not a[i][j].is_zero()]
            if not cands:
                break
            _, pi, pj = min(cands)
            if pi != t:
                a[t], a[pi] = a[pi], a[t]
                u[t], u[pi] = u[pi], u[t]
            if pj != t:
                col_swap(t, pj)
            clean = True
            for i in range(t + 1, nr):
                if not a[i][t].is_zero():
                    q = euclid_divmod(a[i][t], a[t][t])[0]
                    _row_axpy(a, i, t, q)
                    _row_axpy(u, i, t, q)
                    clean = clean and a[i][t].is_zero()
            for j in range(t + 1, nc):
                if not a[t][j].is_zero():
                    q = euclid_divmod(a[t][j], a[t][t])[0]
                    col_axpy(j, t, q)
                    clean = clean and a[t][j].is_zero()
            if not clean:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if not a[t][t].divides(a[i][j])),
                None,
            )
            if bad is None:
                break
            # fold the offending row into the pivot row and start over
            one = o.one()
            _row_axpy(a, t, bad[0], -one)
            _row_axpy(u, t, bad[0], -one)
        if t < nr and t < nc and not a[t][t].is_zero():
            _, unit = canonical_associate(a[t][t])
            a[t] = [x * unit for x in a[t]]
            u[t] = [x * unit for x in u[t]]
    d = Matrix(o, a)
    return d, Matrix(o, u), Matrix(o, vt).transpose()


def elementary_divisors(m: Matrix) -> list[OrderElement]:
    d, _, _ = smith_form(m)
    return [d[i, i] for i in range(min(d.rows, d.cols))]


def smith(m: Matrix) -> list[OrderElement]:
    """Elementary divisors of a nonsingular square matrix."""
    if not m.is_square():
        raise SizeMismatch("smith expects a square matrix, got %s" % (m.shape,))
    _require_euclidean(m)
    divs = elementary_divisors(m)
    if any(x.is_zero() for x in divs):
        raise SingularMatrix("matrix is singular")
    return divs


def integer_smith(rows: list[list[int]]) -> list[int]:
    """Elementary divisors (nonnegative) of an integer matrix, zeros included."""
    from .orders import ZZ

    divs = elementary_divisors(Matrix(ZZ, rows))
    return [abs(x.a) for x in divs]


def module_index(divisors: list[OrderElement]) -> int:
    """Lattice index ``prod norm(d_j)`` of the module with these divisors."""
    return math.prod(int(d.norm()) for d in divisors)

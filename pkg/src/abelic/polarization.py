"""Neron-Severi classes on ``E^N`` as Hermitian matrices.

The product polarization ``L_N`` is the identity matrix.  A row ``v`` (a
morphism ``E^N -> E``) pulls the polarization of ``E`` back to the rank-one
class ``v^dagger v``; a matrix ``psi`` pulls ``H`` back to ``psi^dagger H psi``.
Intersection numbers are mixed discriminants: ``(H_1 ... H_N)`` is the
coefficient of ``t_1 ... t_N`` in ``det(sum t_i H_i)``, so ``(L_N)^N = N!``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BadIndexRange, BadMultiplicity, DomainValueError, InconsistentSplit, SizeMismatch
from .matrices import Matrix
from .orders import OrderElement, OrderSpec, order_from_json, order_to_json, rational_from_json, rational_to_str


def _rational(x: OrderElement) -> Fraction:
    if x.b != 0:
        raise DomainValueError("expected a rational value, got %s" % x)
    return Fraction(x.a)


class HermitianClass:
    """A class on ``E^N`` given by an ``N x N`` conjugate-symmetric matrix over K."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Matrix):
        if not matrix.is_hermitian():
            raise DomainValueError("class matrix must equal its conjugate transpose")
        self.matrix = matrix

    @classmethod
    def identity(cls, order: OrderSpec, n: int) -> HermitianClass:
        return cls(Matrix.identity(order, n))

    @classmethod
    def zero(cls, order: OrderSpec, n: int) -> HermitianClass:
        return cls(Matrix.zeros(order, n, n))

    @classmethod
    def diagonal(cls, order: OrderSpec, values: Sequence) -> HermitianClass:
        n = len(values)
        z = order.zero()
        return cls(Matrix(order, [[OrderElement(order, values[i]) if i == j else z for j in range(n)] for i in range(n)]))

    @classmethod
    def rank_one(cls, row: Matrix) -> HermitianClass:
        """``v^dagger v`` for a ``1 x N`` row ``v``."""
        if row.rows != 1:
            raise SizeMismatch("rank_one expects a single row")
        return cls(row.dagger() @ row)

    @property
    def order(self) -> OrderSpec:
        return self.matrix.order

    @property
    def size(self) -> int:
        return self.matrix.rows

    def __eq__(self, other) -> bool:
        return isinstance(other, HermitianClass) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return "HermitianClass(%r)" % (self.matrix,)

    def __add__(self, other: HermitianClass) -> HermitianClass:
        return tensor(self, other)

    def scale(self, m) -> HermitianClass:
        return HermitianClass(self.matrix.scale(m))

    def det(self) -> Fraction:
        return _rational(self.matrix.det())

    def principal_minors(self) -> list[Fraction]:
        n = self.size
        out = []
        for k in range(1, n + 1):
            for idx in itertools.combinations(range(n), k):
                out.append(_rational(self.matrix.select(idx, idx).det()))
        return out

    def is_positive_definite(self) -> bool:
        n = self.size
        return all(_rational(self.matrix.select(range(k), range(k)).det()) > 0 for k in range(1, n + 1))

    def to_json(self) -> dict:
        return {
            "order": order_to_json(self.order),
            "size": self.size,
            "entries": [[[rational_to_str(e.a), rational_to_str(e.b)] for e in r] for r in self.matrix.entries],
        }

    @classmethod
    def from_json(cls, doc: dict, order: OrderSpec | None = None) -> HermitianClass:
        if order is None:
            order = order_from_json(doc["order"])
        rows = [[OrderElement(order, rational_from_json(e[0]), rational_from_json(e[1])) for e in r] for r in doc["entries"]]
        h = cls(Matrix(order, rows))
        if "size" in doc and doc["size"] != h.size:
            raise DomainValueError("declared size does not match the entries")
        return h


@dataclass(frozen=True)
class FormalChernClass:
    """A formal sum of row-pullback symbols ``m * (v)^*(L)``."""

    order: OrderSpec
    N: int
    terms: tuple[tuple[Matrix, int], ...]

    @classmethod
    def from_rows(cls, rows: Matrix, indices: Iterable[int] | None = None, multiplicity: int = 1) -> FormalChernClass:
        idx = range(rows.rows) if indices is None else indices
        return cls(rows.order, rows.cols, tuple((rows.select([i]), multiplicity) for i in idx))

    def __add__(self, other: FormalChernClass) -> FormalChernClass:
        if other.order != self.order or other.N != self.N:
            raise SizeMismatch("formal classes live on different powers")
        merged: dict[Matrix, int] = {}
        for v, m in self.terms + other.terms:
            merged[v] = merged.get(v, 0) + m
        return FormalChernClass(self.order, self.N, tuple(merged.items()))

    def scale(self, k: int) -> FormalChernClass:
        return FormalChernClass(self.order, self.N, tuple((v, m * k) for v, m in self.terms))

    def pullback(self, psi: Matrix) -> FormalChernClass:
        if psi.rows != self.N:
            raise SizeMismatch("pullback needs a map into E^%d" % self.N)
        return FormalChernClass(self.order, psi.cols, tuple((v @ psi, m) for v, m in self.terms))

    def collapse(self) -> HermitianClass:
        out = Matrix.zeros(self.order, self.N, self.N)
        for v, m in self.terms:
            out = out + (v.dagger() @ v).scale(m)
        return HermitianClass(out)


def pullback_class(h: HermitianClass, psi: Matrix) -> HermitianClass:
    """``psi^* H = psi^dagger H psi`` for ``psi : E^N -> E^M`` and ``H`` on ``E^M``."""
    if psi.rows != h.size:
        raise SizeMismatch("class of size %d cannot be pulled back along a %s map" % (h.size, psi.shape))
    if psi.order != h.order:
        raise SizeMismatch("order mismatch")
    return HermitianClass(psi.dagger() @ h.matrix @ psi)


def tensor(h1: HermitianClass, h2: HermitianClass) -> HermitianClass:
    if h1.size != h2.size:
        raise SizeMismatch("cannot tensor classes of sizes %d and %d" % (h1.size, h2.size))
    return HermitianClass(h1.matrix + h2.matrix)


def power(h: HermitianClass, m: int) -> HermitianClass:
    if m < 1:
        raise DomainValueError("tensor power needs m >= 1")
    return h.scale(m)


def tensor_power(h1: HermitianClass, h2: HermitianClass | None = None, m: int = 1) -> HermitianClass:
    """``(H1 (x) H2)^m``; with ``h2=None`` just ``H1^m``."""
    base = h1 if h2 is None else tensor(h1, h2)
    return power(base, m)


def _expand(classes) -> list[HermitianClass]:
    out = []
    for c in classes:
        if isinstance(c, HermitianClass):
            out.append(c)
        else:
            h, m = c
            if m < 0:
                raise BadMultiplicity("negative multiplicity %r" % (m,))
            out.extend([h] * m)
    return out


def intersection_number(classes) -> Fraction:
    """``N! * MixedDisc(H_1, ..., H_N)``.

    ``classes`` is a list of classes or ``(class, multiplicity)`` pairs whose
    multiplicities add up to ``N``.  The coefficient of ``t_1...t_N`` is taken
    by inclusion-exclusion over subsets:
    ``sum_S (-1)^(N-|S|) det(sum_{i in S} H_i)``.
    """
    hs = _expand(classes)
    if not hs:
        raise BadMultiplicity("no classes given")
    n = hs[0].size
    if any(h.size != n for h in hs):
        raise SizeMismatch("classes of different sizes")
    if len(hs) != n:
        raise BadMultiplicity("multiplicities add up to %d on E^%d" % (len(hs), n))
    # a subset's sum only depends on how many copies of each distinct class it takes
    distinct: list[HermitianClass] = []
    mult: list[int] = []
    for h in hs:
        if h in distinct:
            mult[distinct.index(h)] += 1
        else:
            distinct.append(h)
            mult.append(1)
    order = hs[0].order
    total = Fraction(0)
    for counts in itertools.product(*(range(m + 1) for m in mult)):
        k = sum(counts)
        if k == 0:
            continue
        weight = 1
        acc = Matrix.zeros(order, n, n)
        for h, m, c in zip(distinct, mult, counts):
            weight *= math.comb(m, c)
            if c:
                acc = acc + h.matrix.scale(c)
        sign = -1 if (n - k) % 2 else 1
        total += sign * weight * _rational(acc.det())
    return total


def degree_of_class(h: HermitianClass, n: int | None = None) -> Fraction:
    """``(c_1 H)^n = n! det H``."""
    if n is not None and n != h.size:
        raise SizeMismatch("class has size %d, not %d" % (h.size, n))
    return math.factorial(h.size) * h.det()


def binomial_multiplicity(N: int, n: int) -> dict:
    """``binom(N-1, n-1)``, witnessed by counting index occurrences over increasing n-tuples."""
    if not 1 <= n <= N:
        raise BadIndexRange("need 1 <= n <= N, got n=%r, N=%r" % (n, N))
    tuples = list(itertools.combinations(range(1, N + 1), n))
    counts = {i: sum(1 for t in tuples if i in t) for i in range(1, N + 1)}
    mult = math.comb(N - 1, n - 1)
    if set(counts.values()) != {mult}:
        raise AssertionError("occurrence counts %r disagree with binom(N-1, n-1)" % (counts,))
    return {"multiplicity": mult, "index_set_size": len(tuples), "occurrences": counts}


def index_set(N: int, n: int) -> list[tuple[int, ...]]:
    """Increasing ``n``-tuples of 0-based indices into ``range(N)``."""
    return list(itertools.combinations(range(N), n))


def verify_relchiave(split) -> dict:
    """Check the line-bundle equivalence for a split as exact matrix identities.

    Flags:
      ``tensor_collapse``  sum over I of ``phi_I^* L_n`` equals ``binom * phihat^dagger phihat``
      ``pullback``         ``phi^dagger (that class) phi == alpha^2 * binom * 1``
      ``restricted``       the same identity restricted to B through ``P``
      ``restricted_small`` the second form, through ``varphi_B`` and the ``varphi_I``
    """
    phi, phihat, alpha = split.phi, split.phi_hat, split.alpha
    N, n = phi.rows, split.B.n
    order = phi.order
    if not (phihat @ phi).is_identity_multiple(alpha) or not (phi @ phihat).is_identity_multiple(alpha):
        raise InconsistentSplit("phihat * phi is not alpha * identity")
    mult = binomial_multiplicity(N, n)["multiplicity"]

    formal = FormalChernClass(order, N, ())
    for I in index_set(N, n):
        formal = formal + FormalChernClass.from_rows(phihat, I)
    lhs = formal.collapse()
    rhs = HermitianClass(phihat.dagger() @ phihat).scale(mult)
    flag1 = lhs == rhs

    pulled = pullback_class(lhs, phi)
    target = HermitianClass.identity(order, N).scale(alpha * alpha * mult)
    flag2 = pulled == target

    P = split.B.P
    flag3 = pullback_class(pulled, P) == pullback_class(target, P)

    # second isomorphism: through varphi_B = phi_{B'} P and varphi_I = rows I of the last n columns
    small = Matrix.zeros(order, n, n)
    block = phihat.select(None, range(N - n, N))
    for I in index_set(N, n):
        vi = block.select(I)
        small = small + vi.dagger() @ vi
    varphi_b = split.phi_b_prime @ P
    flag4 = pullback_class(HermitianClass(small), varphi_b) == pullback_class(target, P)

    return {
        "binom": mult,
        "alpha": alpha,
        "tensor_collapse": flag1,
        "pullback": flag2,
        "restricted": flag3,
        "restricted_small": flag4,
        "lhs": lhs,
        "rhs": rhs,
        "ok": flag1 and flag2 and flag3 and flag4,
    }


def verify_gael(rows: Matrix, n: int, reference: Sequence[HermitianClass]) -> dict:
    """Degree identity for the tensor product of the ``phi_I^* L_n``.

    Both sides are intersection numbers against the ``N - n`` reference
    classes: ``<c^n . ref>`` with ``c = binom * sum_i v_i^dagger v_i`` on the
    left, and ``binom^n * sum_I <c_I^n . ref>`` with
    ``c_I = sum_{i in I} v_i^dagger v_i`` on the right.
    """
    N = rows.cols
    if rows.rows != N:
        raise SizeMismatch("expected N rows of length N")
    if not 1 <= n < N:
        raise BadIndexRange("need 1 <= n < N, got n=%r, N=%r" % (n, N))
    if len(reference) != N - n:
        raise SizeMismatch("need %d reference classes, got %d" % (N - n, len(reference)))
    mult = math.comb(N - 1, n - 1)
    order = rows.order
    singles = [HermitianClass.rank_one(rows.select([i])) for i in range(N)]
    full = HermitianClass.zero(order, N)
    for s in singles:
        full = full + s
    full = full.scale(mult)
    lhs = intersection_number([(full, n)] + list(reference))
    rhs = Fraction(0)
    for I in index_set(N, n):
        c = HermitianClass.zero(order, N)
        for i in I:
            c = c + singles[i]
        rhs += intersection_number([(c, n)] + list(reference))
    rhs *= mult ** n
    return {"lhs": lhs, "rhs": rhs, "equal": lhs == rhs, "binom": mult}


def t_bounds(norm_t, N: int, quantity: str = "height", dim_x: int | None = None) -> dict:
    """Multipliers by which the normalizing isomorphism can move heights or degrees.

    ``norm_t`` is an upper bound for ``||T||^2``.  Heights move within
    ``(norm_t^-(N-1), norm_t)``; degrees of an ``X`` of dimension ``dim_x``
    within ``(norm_t^-N, norm_t^dim_x)``.  Both bounds hold up to implicit
    constants, reported as markers only.
    """
    t = Fraction(norm_t)
    if t < 1:
        raise DomainValueError("||T||^2 >= 1 for an isomorphism of E^N")
    if quantity == "height":
        lower, upper = t ** -(N - 1), t
    elif quantity == "degree":
        if dim_x is None:
            raise DomainValueError("degree bounds need dim_x")
        lower, upper = t ** -N, t ** dim_x
    else:
        raise DomainValueError("quantity must be 'height' or 'degree'")
    return {"quantity": quantity, "lower": lower, "upper": upper, "lower_relation": "<<", "upper_relation": "<<"}

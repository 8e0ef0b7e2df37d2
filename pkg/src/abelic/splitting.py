"""Abelian subvarieties of ``E^N`` as saturated modules, and their splittings.

An abelian subvariety ``B`` of dimension ``n`` is the image of an ``N x n``
matrix ``P`` of full column rank whose column module is saturated.  A split
stacks ``phi_B`` (``N - n`` rows killing ``P``) on ``phi_B'`` (``n`` rows,
nonsingular on ``B``) into a square isogeny ``phi``, together with its dual
``phi_hat`` and the multiplier ``alpha`` of ``phi_hat phi = [alpha]``.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Sequence

from .errors import (
    DomainValueError,
    MinorVanished,
    NonEuclideanOrder,
    NotSaturated,
    SearchBudgetExceeded,
    SizeMismatch,
)
from .isogeny import degree, dual_and_alpha
from .matrices import Matrix
from .normal_forms import hnf, smith_form
from .orders import OrderElement, OrderSpec, order_to_json
from .polarization import HermitianClass, degree_of_class, index_set


def _require_euclidean(order: OrderSpec) -> None:
    if not order.euclidean:
        raise NonEuclideanOrder("splitting needs a Euclidean order, got %s" % order)


def _is_unit(x: OrderElement) -> bool:
    return not x.is_zero() and x.is_unit()


@dataclass(frozen=True)
class SubvarietyModule:
    order: OrderSpec
    N: int
    n: int
    P: Matrix
    saturated: bool
    connecting_index: int = 1

    def to_json(self) -> dict:
        return {
            "order": order_to_json(self.order),
            "N": self.N,
            "n": self.n,
            "P": self.P.to_json(),
            "saturated": self.saturated,
            "connecting_index": self.connecting_index,
        }


def _saturation_divisors(P: Matrix) -> list[OrderElement]:
    d, _, _ = smith_form(P)
    return [d[i, i] for i in range(P.cols)]


def make_module(P: Matrix) -> SubvarietyModule:
    """Wrap generators; the ``saturated`` flag is computed, not trusted."""
    if P.cols > P.rows:
        raise SizeMismatch("a rank-n submodule of O^N needs n <= N, got %s" % (P.shape,))
    if P.rank() != P.cols:
        raise DomainValueError("generators must have full column rank")
    sat = P.order.euclidean and all(_is_unit(x) for x in _saturation_divisors(P))
    return SubvarietyModule(P.order, P.rows, P.cols, P, bool(sat))


def _canonical_columns(S: Matrix) -> Matrix:
    """Column Hermite form: same column module, canonical generators."""
    h, _ = hnf(S.transpose())
    return h.transpose()


def saturate(B: SubvarietyModule) -> SubvarietyModule:
    """Saturation ``(P K^n) cap O^N`` with canonical generators.

    ``connecting_index`` is the lattice index of the original module in its
    saturation, i.e. the degree of ``E^n -> B`` given by the old generators.
    """
    _require_euclidean(B.order)
    d, u, _ = smith_form(B.P)
    sat = u.inverse().select(None, range(B.n))
    idx = math.prod(int(d[i, i].norm()) for i in range(B.n))
    return SubvarietyModule(B.order, B.N, B.n, _canonical_columns(sat), True, idx)


def _left_kernel(P: Matrix) -> tuple[Matrix, Matrix]:
    """``(K, C)`` with ``K P = 0``, ``K`` in row Hermite form and ``(K; C)`` unimodular."""
    d, u, _ = smith_form(P)
    N, n = P.shape
    if not all(_is_unit(d[i, i]) for i in range(n)):
        raise NotSaturated("generators do not span a saturated module")
    if n == N:
        return None, u.select(range(n))
    k, _ = hnf(u.select(range(n, N)))
    return k, u.select(range(n))


def _coordinate_complement(phi_b: Matrix, n: int) -> Matrix | None:
    """Standard basis rows completing ``phi_b`` to a unimodular matrix.

    Coordinate sets are tried from the last coordinates backwards so the
    choice is deterministic.
    """
    order = phi_b.order
    N = phi_b.cols
    ident = Matrix.identity(order, N)
    for S in sorted(itertools.combinations(range(N), n), reverse=True):
        cand = phi_b.vstack(ident.select(S))
        if _is_unit(cand.det()):
            return ident.select(S)
    return None


@dataclass(frozen=True)
class SubvarietySplit:
    B: SubvarietyModule
    phi_b: Matrix | None
    phi_b_prime: Matrix
    T: Matrix
    phi_hat: Matrix
    alpha: int
    strategy: str
    norm_t: int = 1
    family: dict | None = field(default=None, compare=False)

    @property
    def N(self) -> int:
        return self.B.N

    @property
    def n(self) -> int:
        return self.B.n

    @property
    def phi(self) -> Matrix:
        if self.phi_b is None:
            return self.phi_b_prime
        return self.phi_b.vstack(self.phi_b_prime)

    @property
    def degree(self) -> int:
        return degree(self.phi)

    def to_json(self) -> dict:
        out = {
            "B": self.B.to_json(),
            "strategy": self.strategy,
            "phi_B": None if self.phi_b is None else self.phi_b.to_json(),
            "phi_B_prime": self.phi_b_prime.to_json(),
            "phi": self.phi.to_json(),
            "T": self.T.to_json(),
            "norm_T": self.norm_t,
            "phi_hat": self.phi_hat.to_json(),
            "alpha": self.alpha,
            "degree": self.degree,
        }
        if self.family is not None:
            out["family"] = [{"I": [i + 1 for i in I], "phi_I": m.to_json()} for I, m in self.family.items()]
        return out


def complement_and_split(B: SubvarietyModule, strategy: str | Matrix = "unimodular") -> SubvarietySplit:
    """Build ``phi = (phi_B; phi_B')`` for a saturated ``B``.

    ``strategy``:
      ``"unimodular"``  ``phi_B'`` completes ``phi_B`` to a unimodular matrix,
                        preferring standard basis rows, so ``alpha = 1``
      ``"orthogonal"``  ``phi_B' = P^dagger``
      a Matrix          used verbatim as ``phi_B'`` (``n x N``)
    """
    _require_euclidean(B.order)
    if not B.saturated:
        raise NotSaturated("saturate the module first")
    phi_b, fallback = _left_kernel(B.P)
    if isinstance(strategy, Matrix):
        if strategy.shape != (B.n, B.N):
            raise SizeMismatch("phi_B' must be %d x %d" % (B.n, B.N))
        prime, name = strategy, "explicit"
    elif strategy == "orthogonal":
        prime, name = B.P.dagger(), strategy
    elif strategy == "unimodular":
        prime = None if phi_b is None else _coordinate_complement(phi_b, B.n)
        prime, name = (fallback if prime is None else prime), strategy
    else:
        raise DomainValueError("unknown complement strategy %r" % (strategy,))
    if (prime @ B.P).det().is_zero():
        raise DomainValueError("phi_B' is singular on B")
    phi = prime if phi_b is None else phi_b.vstack(prime)
    phi_hat, alpha = dual_and_alpha(phi)
    return SubvarietySplit(B, phi_b, prime, Matrix.identity(B.order, B.N), phi_hat, alpha, name)


def _last_minors_ok(rows: list[list[OrderElement]], n: int) -> bool:
    N = len(rows)
    block = [r[N - n:] for r in rows]
    order = rows[0][0].order
    for I in itertools.combinations(range(N), n):
        if Matrix(order, [block[i] for i in I]).det().is_zero():
            return False
    return True


def frobenius_norm2(m: Matrix) -> int:
    return sum(int(e.norm()) for r in m.entries for e in r)


def normalize_T(split: SubvarietySplit, budget: int = 3) -> SubvarietySplit:
    """Find a unimodular ``T`` making every ``n x n`` minor of the last ``n``
    columns of ``alpha (phi T)^-1 = T^-1 phi_hat`` nonzero.

    Breadth-first over products of at most ``budget`` elementary shears
    ``I + u e_ij`` (``u`` a unit), in a fixed order, so the first hit is
    the least one.  Coordinates are transported: ``phi <- phi T``,
    ``P <- T^-1 P``, ``phi_hat <- T^-1 phi_hat``; ``alpha`` is unchanged.
    """
    N, n = split.N, split.n
    order = split.B.order
    start = [list(r) for r in split.phi_hat.entries]
    ident = Matrix.identity(order, N)
    if _last_minors_ok(start, n):
        return replace(split, T=ident, norm_t=1)

    moves = [(i, j, u) for i in range(N) for j in range(N) if i != j for u in order.units()]
    # state: (rows of T^-1 phi_hat, T as nested lists)
    seen = {tuple(tuple(e.key() for e in r) for r in start)}
    frontier = deque([(start, [list(r) for r in ident.entries], 0)])
    while frontier:
        rows, t, depth = frontier.popleft()
        if depth == budget:
            continue
        for i, j, u in moves:
            # T <- T (I + u e_ij): column j += u * column i
            # T^-1 <- (I - u e_ij) T^-1: row i -= u * row j
            new_rows = [list(r) for r in rows]
            new_rows[i] = [x - u * y for x, y in zip(rows[i], rows[j])]
            key = tuple(tuple(e.key() for e in r) for r in new_rows)
            if key in seen:
                continue
            seen.add(key)
            new_t = [list(r) for r in t]
            for r in new_t:
                r[j] = r[j] + u * r[i]
            if _last_minors_ok(new_rows, n):
                return _transport(split, Matrix(order, new_t), Matrix(order, new_rows))
            frontier.append((new_rows, new_t, depth + 1))
    raise SearchBudgetExceeded("no normalizing T within %d elementary steps" % budget)


def _transport(split: SubvarietySplit, T: Matrix, phi_hat: Matrix) -> SubvarietySplit:
    t_inv = T.inverse()
    P = t_inv @ split.B.P
    B = replace(split.B, P=P)
    phi_b = None if split.phi_b is None else split.phi_b @ T
    return replace(
        split,
        B=B,
        phi_b=phi_b,
        phi_b_prime=split.phi_b_prime @ T,
        T=T,
        phi_hat=phi_hat,
        norm_t=frobenius_norm2(T),
        family=None,
    )


def phi_family(split: SubvarietySplit) -> SubvarietySplit:
    """Attach ``phi_I = rows I of phi_hat`` for every increasing ``n``-tuple ``I``."""
    N, n = split.N, split.n
    fam = {}
    for I in index_set(N, n):
        phi_i = split.phi_hat.select(I)
        if phi_i.select(None, range(N - n, N)).det().is_zero():
            raise MinorVanished("minor on rows %s vanishes; run normalize_T first" % ([i + 1 for i in I],))
        fam[I] = phi_i
    return replace(split, family=fam)


def full_split(P: Matrix, strategy: str | Matrix = "unimodular", budget: int = 3) -> SubvarietySplit:
    """Saturate, split, normalize and attach the family in one go."""
    B = make_module(P)
    if not B.saturated:
        B = saturate(B)
    return phi_family(normalize_T(complement_and_split(B, strategy), budget))


def diagram_check(split: SubvarietySplit) -> dict:
    phi, phi_hat, alpha = split.phi, split.phi_hat, split.alpha
    P = split.B.P
    N, n = split.N, split.n
    ambient = (phi_hat @ phi).is_identity_multiple(alpha) and (phi @ phi_hat).is_identity_multiple(alpha)
    kills = split.phi_b is None or (split.phi_b @ P).is_zero()
    restricted = not (split.phi_b_prime @ P).det().is_zero()
    image = phi @ P
    outer = phi_hat @ image == P.scale(alpha)
    family_ok = True
    fam = split.family if split.family is not None else {I: phi_hat.select(I) for I in index_set(N, n)}
    for I, phi_i in fam.items():
        one_way = (phi_hat @ image).select(I)
        other_way = phi_i @ image
        family_ok = family_ok and one_way == other_way == P.select(I).scale(alpha)
    flags = {
        "ambient": ambient,
        "kills_B": kills,
        "restriction_nonsingular": restricted,
        "outer_square": outer,
        "family_squares": family_ok,
    }
    flags["ok"] = all(flags.values())
    return flags


def push_degree_bound(split: SubvarietySplit, target: HermitianClass | None = None) -> dict:
    """``|B cap ker phi| * deg(target)`` and the ceiling ``deg phi * deg(target)``."""
    if target is None:
        target = HermitianClass.identity(split.B.order, split.n)
    if target.size != split.n:
        raise SizeMismatch("target class must live on E^%d" % split.n)
    restricted = split.phi_b_prime @ split.B.P
    idx = degree(restricted)
    dc = degree_of_class(target)
    value = idx * dc
    ceiling = split.degree * dc
    if value > ceiling:
        raise AssertionError("pushforward degree %s exceeds %s" % (value, ceiling))
    return {"intersection_order": idx, "value": value, "ceiling": ceiling}


@dataclass(frozen=True)
class ProductStructure:
    factors: tuple[tuple[OrderSpec, int, int, SubvarietySplit], ...]

    @property
    def blocks(self) -> list[Matrix]:
        """Diagonal blocks of ``Phi_H``; off-diagonal blocks are zero."""
        return [f[3].phi for f in self.factors]

    @property
    def alpha(self) -> int:
        return max(s.alpha ** 2 * math.comb(N - 1, n - 1) for _, N, n, s in self.factors)

    @property
    def index_set(self) -> list[tuple]:
        return list(itertools.product(*(index_set(N, n) for _, N, n, _ in self.factors)))

    def family(self, key: Sequence[tuple[int, ...]]) -> list[Matrix]:
        """Blocks of ``Phi_I`` for a tuple ``(I_1, ..., I_r)``."""
        return [s.phi_hat.select(I) for (_, _, _, s), I in zip(self.factors, key)]

    def product_class(self) -> list[HermitianClass]:
        return [HermitianClass.identity(o, n) for o, _, n, _ in self.factors]

    def diagram_check(self) -> dict:
        per = [diagram_check(s) for *_, s in self.factors]
        return {"factors": per, "ok": all(p["ok"] for p in per)}

    def to_json(self) -> dict:
        return {
            "factors": [
                {"order": order_to_json(o), "N": N, "n": n, "split": s.to_json()} for o, N, n, s in self.factors
            ],
            "alpha": self.alpha,
            "index_set_size": len(self.index_set),
        }


def product_assemble(splits: Sequence[SubvarietySplit]) -> ProductStructure:
    if not splits:
        raise DomainValueError("no factors")
    return ProductStructure(tuple((s.B.order, s.N, s.n, s) for s in splits))

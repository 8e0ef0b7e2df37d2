"""Brute-force torsion models used as an independent oracle.

A :class:`FiniteModel` of modulus ``c`` is ``E^N[c]``, identified with
``(Z/c)^(2N)`` through the rank-2 lattice of each coordinate: the vector ``v``
stands for the torus point ``v/c``.  Matrices act through ``regular_rep``.

Preimages under an isogeny generally leave ``E^N[c]``; they are computed in
the model of modulus ``c*alpha`` so that every set below is the true subset of
the torus, not its trace on a finite model.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import CapExceeded, EmptySet, ModulusIncompatible, SingularMatrix, SizeMismatch
from .isogeny import degree, dual_and_alpha, kernel_structure
from .matrices import Matrix, regular_rep
from .orders import GAUSSIAN, ZZ, OrderSpec, elements_with_norm_at_most, order_from_json, order_to_json

SCAN_LIMIT = 1 << 18


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def lattice_index(m: Matrix) -> int:
    """``[Lambda : M Lambda]`` as the absolute integer determinant of ``regular_rep(M)``."""
    if not m.is_square():
        raise SizeMismatch("lattice index needs a square matrix")
    d = abs(bareiss_det(regular_rep(m)))
    if d == 0:
        raise SingularMatrix("matrix is singular")
    return d


@dataclass(frozen=True)
class FiniteModel:
    order: OrderSpec
    N: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1 or self.N < 1:
            raise ValueError("modulus and N must be positive")

    @property
    def rank(self) -> int:
        return 2 * self.N

    @property
    def size(self) -> int:
        return self.modulus ** self.rank

    def action(self, m: Matrix) -> np.ndarray:
        if m.order != self.order or not m.is_square() or m.rows != self.N:
            raise SizeMismatch("matrix does not act on this model")
        if not m.is_integral():
            raise ModulusIncompatible("only integral matrices act on torsion models")
        return np.array(regular_rep(m), dtype=np.int64) % self.modulus

    def apply(self, m: Matrix, pts: np.ndarray) -> np.ndarray:
        return (pts @ self.action(m).T) % self.modulus

    @property
    def code_dtype(self):
        # codes are base-c numerals; past int64 they fall back to Python ints
        return np.int64 if self.size < 1 << 62 else object

    def zero_codes(self) -> np.ndarray:
        return np.zeros(1, dtype=self.code_dtype)

    def encode(self, pts: np.ndarray) -> np.ndarray:
        c = self.modulus
        out = np.zeros(len(pts), dtype=self.code_dtype)
        if out.dtype == object:
            pts = np.asarray(pts).astype(object)
        for j in range(self.rank):
            out = out * c + pts[:, j]
        return out

    def decode(self, codes: np.ndarray) -> np.ndarray:
        c = self.modulus
        codes = np.asarray(codes, dtype=self.code_dtype)
        out = np.empty((len(codes), self.rank), dtype=np.int64)
        for j in reversed(range(self.rank)):
            out[:, j] = codes % c
            codes = codes // c
        return out

    def all_points(self) -> np.ndarray:
        return self.decode(np.arange(self.size, dtype=np.int64))

    def points(self, pts) -> PointSet:
        arr = np.asarray(pts, dtype=np.int64).reshape(-1, self.rank) % self.modulus
        return PointSet(self, np.unique(self.encode(arr)))

    def scaled(self, factor: int) -> FiniteModel:
        return FiniteModel(self.order, self.N, self.modulus * factor)

    def to_json(self) -> dict:
        return {"order": order_to_json(self.order), "N": self.N, "modulus": self.modulus}


@dataclass(frozen=True, eq=False)
class PointSet:
    """A finite subset of a torsion model, kept as sorted unique codes."""

    model: FiniteModel
    codes: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return int(self.codes.size)

    @property
    def points(self) -> np.ndarray:
        return self.model.decode(self.codes)

    def as_tuples(self) -> list[tuple[int, ...]]:
        return [tuple(int(v) for v in p) for p in self.points]

    def lift(self, modulus: int) -> PointSet:
        """The same torus points seen in the model of a multiple modulus."""
        c = self.model.modulus
        if modulus % c:
            raise ModulusIncompatible("%d is not a multiple of %d" % (modulus, c))
        target = FiniteModel(self.model.order, self.model.N, modulus)
        return target.points(self.points * (modulus // c))

    def same_points(self, other: PointSet) -> bool:
        m = math.lcm(self.model.modulus, other.model.modulus)
        a, b = self.lift(m), other.lift(m)
        return a.codes.size == b.codes.size and bool(np.array_equal(a.codes, b.codes))

    def killed_by(self, k: int) -> PointSet:
        """Points of order dividing ``k``."""
        pts = self.points
        keep = np.all((pts * k) % self.model.modulus == 0, axis=1)
        return PointSet(self.model, self.codes[keep])

    def in_kernel_of(self, m: Matrix) -> PointSet:
        pts = self.points
        keep = np.all(self.model.apply(m, pts) == 0, axis=1)
        return PointSet(self.model, self.codes[keep])

    def translate(self, t: np.ndarray) -> PointSet:
        return self.model.points(self.points + np.asarray(t, dtype=np.int64))

    def to_json(self) -> dict:
        return {"model": self.model.to_json(), "points": [list(p) for p in self.as_tuples()]}


def _add_codes(model: FiniteModel, codes: np.ndarray, t: np.ndarray) -> np.ndarray:
    return model.encode((model.decode(codes) + t) % model.modulus)


def subgroup_closure(model: FiniteModel, gens: np.ndarray, start: np.ndarray | None = None) -> np.ndarray:
    """Sorted codes of the subgroup generated by ``gens`` (and ``start``)."""
    group = model.zero_codes() if start is None else np.asarray(start, dtype=model.code_dtype)
    seen = set(group.tolist())
    for g in np.asarray(gens, dtype=np.int64).reshape(-1, model.rank):
        g = g % model.modulus
        base = group
        acc = [group]
        shift = g.copy()
        # cosets of a subgroup are equal or disjoint: stop at the first repeat
        while model.encode(shift[None, :]).tolist()[0] not in seen:
            coset = _add_codes(model, base, shift)
            seen.update(coset.tolist())
            acc.append(coset)
            shift = (shift + g) % model.modulus
        group = np.unique(np.concatenate(acc))
    return group


def enumerate_kernel(m: Matrix, cap: int = 10_000, method: str = "auto") -> PointSet:
    """All points of ``ker M``, inside the model of modulus ``alpha(M)``.

    ``ker M`` lies in ``E^N[alpha]`` because ``dual @ M = alpha``.  Small
    models are scanned exhaustively; larger ones are generated from the
    columns of ``regular_rep(dual)`` and every generated point is re-checked.
    """
    deg = lattice_index(m)
    if deg > cap:
        raise CapExceeded("kernel has %d points, cap is %d" % (deg, cap))
    dual, alpha = dual_and_alpha(m)
    model = FiniteModel(m.order, m.rows, alpha)
    if alpha == 1:
        return PointSet(model, model.zero_codes())
    act = model.action(m)
    if method == "auto":
        method = "scan" if model.size <= SCAN_LIMIT else "closure"
    if method == "scan":
        found = []
        step = 1 << 16
        for lo in range(0, model.size, step):
            codes = np.arange(lo, min(lo + step, model.size), dtype=np.int64)
            pts = model.decode(codes)
            hit = np.all((pts @ act.T) % alpha == 0, axis=1)
            found.append(codes[hit])
        codes = np.concatenate(found)
    elif method == "closure":
        gens = (np.array(regular_rep(dual), dtype=np.int64) % alpha).T
        codes = subgroup_closure(model, gens)
        if not np.all((model.decode(codes) @ act.T) % alpha == 0):
            raise AssertionError("generated point outside the kernel")
    else:
        raise ValueError("unknown method %r" % (method,))
    return PointSet(model, codes)


def group_invariant_counts(ps: PointSet, exponent: int | None = None) -> dict[int, int]:
    """``k -> |G[k]|`` for every divisor ``k`` of the exponent of ``G``."""
    c = ps.model.modulus
    pts = ps.points
    if exponent is None:
        exponent = c
    out = {}
    for k in range(1, exponent + 1):
        if exponent % k == 0:
            out[k] = int(np.all((pts * k) % c == 0, axis=1).sum())
    return out


def predicted_counts(divisors: Sequence[int], exponent: int) -> dict[int, int]:
    """``|G[k]|`` for ``G = prod Z/d_i``."""
    return {k: math.prod(math.gcd(k, d) for d in divisors) for k in range(1, exponent + 1) if exponent % k == 0}


def finite_stab(model: FiniteModel, Y) -> PointSet:
    """``{t : Y + t = Y}`` for a finite subset ``Y`` of the model."""
    ys = Y if isinstance(Y, PointSet) else model.points(Y)
    model = ys.model
    if len(ys) == 0:
        raise EmptySet("the stabilizer of the empty set is not computed")
    pts = ys.points
    c = model.modulus
    ycodes = ys.codes
    cands = model.encode((pts - pts[0]) % c)
    cands.sort()
    for idx in np.linspace(0, len(pts) - 1, num=min(8, len(pts)), dtype=int)[1:]:
        cands = np.intersect1d(cands, model.encode((pts - pts[idx]) % c), assume_unique=True)
    stab = model.zero_codes()
    remaining = np.setdiff1d(cands, stab, assume_unique=True)
    while remaining.size:
        t = model.decode(remaining[:1])[0]
        if np.isin(model.encode((pts + t) % c), ycodes, assume_unique=True).all():
            stab = subgroup_closure(model, t[None, :], start=stab)
            remaining = np.setdiff1d(remaining, stab, assume_unique=True)
        else:
            # stab is already known to fix Y, so the whole coset t + stab fails
            remaining = np.setdiff1d(remaining, _add_codes(model, stab, t), assume_unique=True)
    return PointSet(model, stab)


def preimage(m: Matrix, ys: PointSet) -> PointSet:
    """``M^-1(Y)`` in the torus, returned in the model of modulus ``c*alpha(M)``."""
    dual, alpha = dual_and_alpha(m)
    c = ys.model.modulus
    big = ys.model.scaled(alpha)
    ker = enumerate_kernel(m, cap=max(10_000, lattice_index(m)))
    kpts = ker.points * c
    base = (ys.points @ np.array(regular_rep(dual), dtype=np.int64).T) % big.modulus
    allpts = (base[:, None, :] + kpts[None, :, :]).reshape(-1, big.rank)
    out = big.points(allpts)
    # every point must land in Y, and the count must be |Y| * deg M
    image = big.apply(m, out.points)
    if not np.isin(big.encode(image), ys.lift(big.modulus).codes).all():
        raise AssertionError("preimage point does not map into Y")
    if len(out) != len(ys) * len(ker):
        raise AssertionError("preimage has the wrong size")
    return out


def stab_lemma_checks(model: FiniteModel, Y, m: Matrix, a: int) -> dict:
    """Both stabilizer identities for a finite ``Y`` and ``phi = m``.

    (i)  ``Stab phi^-1(Y) == phi^-1(Stab Y)``
    (ii) ``|Stab phihat^-1(Y) cap ker[a]| == |ker phihat| * |Stab Y cap ker phi|``
         where ``phihat = (a/alpha) * dual`` so that ``phi phihat = [a]``.
    """
    ys = Y if isinstance(Y, PointSet) else model.points(Y)
    dual, alpha = dual_and_alpha(m)
    if a <= 0 or a % alpha:
        raise ModulusIncompatible("no phihat with phi*phihat = [%d]: alpha(phi) = %d" % (a, alpha))
    phihat = dual.scale(a // alpha)

    lhs_i = finite_stab(ys.model, preimage(m, ys))
    stab_y = finite_stab(ys.model, ys)
    rhs_i = preimage(m, stab_y)
    flag_i = lhs_i.same_points(rhs_i)

    pre_hat = preimage(phihat, ys)
    lhs_ii = len(finite_stab(pre_hat.model, pre_hat).killed_by(a))
    ker_hat = lattice_index(phihat)
    stab_cap_ker = len(stab_y.in_kernel_of(m))
    rhs_ii = ker_hat * stab_cap_ker
    return {
        "alpha": alpha,
        "a": a,
        "part_i": {"lhs_size": len(lhs_i), "rhs_size": len(rhs_i), "equal": bool(flag_i)},
        "part_ii": {
            "lhs": lhs_ii,
            "ker_phihat": ker_hat,
            "stab_cap_ker_phi": stab_cap_ker,
            "rhs": rhs_ii,
            "equal": lhs_ii == rhs_ii,
        },
        "ok": bool(flag_i) and lhs_ii == rhs_ii,
    }


# subgroups of (Z/c)^k -------------------------------------------------

@dataclass(frozen=True)
class Subgroup:
    """``L / cZ^k`` for a lattice ``cZ^k <= L <= Z^k`` in row Hermite form."""

    model: FiniteModel
    basis: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.basis[i][i] for i in range(len(self.basis)))

    @property
    def order(self) -> int:
        return self.model.size // math.prod(self.diagonal)

    def elements(self) -> PointSet:
        c = self.model.modulus
        h = np.array(self.basis, dtype=np.int64)
        ranges = [np.arange(c // d, dtype=np.int64) for d in self.diagonal]
        coeffs = np.array(np.meshgrid(*ranges, indexing="ij")).reshape(len(ranges), -1).T
        return self.model.points(coeffs @ h)

    def coset_reps(self) -> np.ndarray:
        ranges = [np.arange(d, dtype=np.int64) for d in self.diagonal]
        return np.array(np.meshgrid(*ranges, indexing="ij")).reshape(len(ranges), -1).T

    def cosets(self) -> Iterator[PointSet]:
        g = self.elements()
        for r in self.coset_reps():
            yield g.translate(r)


def _in_lattice(basis, v) -> bool:
    v = list(v)
    for i, row in enumerate(basis):
        if v[i] % row[i]:
            return False
        q = v[i] // row[i]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return True


def subgroups(model: FiniteModel) -> Iterator[Subgroup]:
    """Every subgroup of the model, each exactly once (canonical Hermite basis)."""
    c, k = model.modulus, model.rank
    divs = [d for d in range(1, c + 1) if c % d == 0]
    for diag in itertools.product(divs, repeat=k):
        slots = [(i, j) for i in range(k) for j in range(i + 1, k)]
        for vals in itertools.product(*[range(diag[j]) for _, j in slots]):
            basis = [[0] * k for _ in range(k)]
            for i in range(k):
                basis[i][i] = diag[i]
            for (i, j), v in zip(slots, vals):
                basis[i][j] = v
            if all(_in_lattice(basis, [c if t == j else 0 for t in range(k)]) for j in range(k)):
                yield Subgroup(model, tuple(tuple(r) for r in basis))


# randomized and exhaustive suites --------------------------------------

def random_nonsingular(order: OrderSpec, n: int, norm_bound: int, rng: random.Random) -> Matrix:
    pool = elements_with_norm_at_most(order, norm_bound)
    while True:
        m = Matrix(order, [[rng.choice(pool) for _ in range(n)] for _ in range(n)])
        if not m.det().is_zero():
            return m


def endomorphisms(order: OrderSpec, n: int, norm_bound: int) -> Iterator[Matrix]:
    """Every nonsingular ``n x n`` matrix with entries of norm at most ``norm_bound``."""
    pool = elements_with_norm_at_most(order, norm_bound)
    for vals in itertools.product(pool, repeat=n * n):
        m = Matrix(order, [vals[i * n:(i + 1) * n] for i in range(n)])
        if not m.det().is_zero():
            yield m


_ORDER_NAMES = {"Z": ZZ, "Zi": GAUSSIAN}


def _parse_order(o) -> OrderSpec:
    if isinstance(o, OrderSpec):
        return o
    if isinstance(o, str):
        return _ORDER_NAMES[o]
    return order_from_json(o)


DEFAULT_SCOPE = {
    "suites": ["degrees", "kernels", "stab"],
    "orders": ["Z", "Zi"],
    "count": 500,
    "max_N": 3,
    "norm_bound": 3,
    "cap": 10_000,
    "seed": 0,
    "stab_moduli": [2, 3, 4, 6],
    "stab_N": [1],
    "stab_norm_bound": 2,
    "inject_fault": False,
}


def _record(summary, suite, ok, witness):
    s = summary.setdefault(suite, {"checked": 0, "passed": 0, "failures": []})
    s["checked"] += 1
    if ok:
        s["passed"] += 1
    else:
        s["failures"].append(witness)


def cross_check(scope: dict | None = None) -> dict:
    """Run the registered equivalence suites and report pass counts.

    ``scope=None`` (or ``{}``) runs nothing and returns an empty summary; pass
    ``DEFAULT_SCOPE`` (or a partial override of it) for the standard run.
    Failures are returned as data with a JSON-ready witness.
    """
    if not scope:
        return {}
    opts = dict(DEFAULT_SCOPE)
    opts.update(scope)
    rng = random.Random(opts["seed"])
    summary: dict = {}
    fault_pending = bool(opts["inject_fault"])
    suites = opts["suites"]
    orders = [_parse_order(o) for o in opts["orders"]]

    if "degrees" in suites or "kernels" in suites:
        for order in orders:
            for _ in range(opts["count"]):
                n = rng.randint(1, opts["max_N"])
                m = random_nonsingular(order, n, opts["norm_bound"], rng)
                fast = degree(m)
                idx = lattice_index(m)
                if fault_pending:
                    idx, fault_pending = -idx, False
                witness = {"matrix": m.to_json()}
                enum = None
                if idx <= opts["cap"] and fast <= opts["cap"]:
                    enum = enumerate_kernel(m, cap=opts["cap"])
                if "degrees" in suites:
                    ok = fast == idx and (enum is None or len(enum) == fast)
                    _record(summary, "degrees", ok, dict(witness, fast=fast, lattice_index=idx,
                                                         enumerated=None if enum is None else len(enum)))
                if "kernels" in suites and enum is not None:
                    divs = kernel_structure(m)
                    exp = enum.model.modulus
                    ok = group_invariant_counts(enum, exp) == predicted_counts(divs, exp)
                    _record(summary, "kernels", ok, dict(witness, divisors=divs))

    if "stab" in suites:
        for order in orders:
            for n in opts["stab_N"]:
                for c in opts["stab_moduli"]:
                    model = FiniteModel(order, n, c)
                    subs = list(subgroups(model))
                    for m in endomorphisms(order, n, opts["stab_norm_bound"]):
                        alpha = dual_and_alpha(m)[1]
                        for sg in subs:
                            for y in sg.cosets():
                                v = stab_lemma_checks(model, y, m, alpha)
                                _record(summary, "stab", v["ok"], {
                                    "model": model.to_json(), "matrix": m.to_json(),
                                    "subgroup": [list(r) for r in sg.basis], "verdict": v,
                                })
    return summary

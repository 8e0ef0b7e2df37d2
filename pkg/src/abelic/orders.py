"""Exact arithmetic in Z and in imaginary quadratic orders.

An imaginary quadratic order of conductor ``f`` in ``Q(sqrt(-d))`` is written
``Z + Z*w`` with ``w = f*sqrt(-d)`` when ``-d = 2, 3 (mod 4)`` and
``w = f*(1 + sqrt(-d))/2`` when ``-d = 1 (mod 4)``.  In both cases
``w**2 = t*w - n`` for integers ``t`` (trace of ``w``) and ``n`` (norm of ``w``),
which is all the multiplication rule needs.

Elements are pairs ``(a, b)`` meaning ``a + b*w``.  The same class also holds
elements of the fraction field (rational coordinates); ``is_integral`` tells
the two apart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .errors import BadConductor, DomainValueError, NonEuclideanOrder, NotSquarefree, OrderMismatch

Rational = Union[int, Fraction]

RATIONAL_INTEGERS = "rational-integers"
IMAGINARY_QUADRATIC = "imaginary-quadratic"
_KIND_ALIASES = {
    "Z": RATIONAL_INTEGERS,
    RATIONAL_INTEGERS: RATIONAL_INTEGERS,
    "iq": IMAGINARY_QUADRATIC,
    IMAGINARY_QUADRATIC: IMAGINARY_QUADRATIC,
}
EUCLIDEAN_D = frozenset({1, 2, 3, 7, 11})


def _canon(x: Rational) -> Rational:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def is_squarefree(d: int) -> bool:
    if d < 1:
        return False
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        p += 1
    return True


@dataclass(frozen=True)
class OrderSpec:
    kind: str
    d: int = 1
    f: int = 1

    @property
    def is_integers(self) -> bool:
        return self.kind == RATIONAL_INTEGERS

    @property
    def euclidean(self) -> bool:
        return self.is_integers or (self.f == 1 and self.d in EUCLIDEAN_D)

    @property
    def half_integral(self) -> bool:
        """True when the generator is ``f*(1 + sqrt(-d))/2``."""
        return not self.is_integers and self.d % 4 == 3

    @property
    def t(self) -> int:
        """Trace of the generator ``w``."""
        return self.f if self.half_integral else 0

    @property
    def n(self) -> int:
        """Norm of the generator ``w``."""
        if self.is_integers:
            return 0
        if self.half_integral:
            return self.f * self.f * (1 + self.d) // 4
        return self.f * self.f * self.d

    @property
    def discriminant(self) -> int:
        return self.t * self.t - 4 * self.n

    def units(self) -> tuple[OrderElement, ...]:
        if self.is_integers or self.f != 1 or self.d not in (1, 3):
            raw = [(1, 0), (-1, 0)]
        elif self.d == 1:
            raw = [(1, 0), (0, 1), (-1, 0), (0, -1)]
        else:
            # w = (1 + sqrt(-3))/2 is a primitive sixth root of unity
            raw = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]
        return tuple(OrderElement(self, a, b) for a, b in raw)

    def __call__(self, a: Rational = 0, b: Rational = 0) -> OrderElement:
        return OrderElement(self, a, b)

    def zero(self) -> OrderElement:
        return OrderElement(self, 0, 0)

    def one(self) -> OrderElement:
        return OrderElement(self, 1, 0)

    def gen(self) -> OrderElement:
        if self.is_integers:
            raise DomainValueError("Z has no quadratic generator")
        return OrderElement(self, 0, 1)

    def __str__(self) -> str:
        if self.is_integers:
            return "Z"
        tag = "Z[(1+sqrt(-%d))/2]" % self.d if self.half_integral else "Z[sqrt(-%d)]" % self.d
        return tag if self.f == 1 else "%s conductor %d" % (tag, self.f)


def make_order(kind: str, d: int = 1, f: int = 1) -> OrderSpec:
    """Validate and build an :class:`OrderSpec`.

    ``kind`` accepts the long names or the JSON short forms ``"Z"``/``"iq"``.
    """
    try:
        kind = _KIND_ALIASES[kind]
    except KeyError:
        raise DomainValueError("unknown order kind %r" % (kind,)) from None
    if kind == RATIONAL_INTEGERS:
        return OrderSpec(RATIONAL_INTEGERS, 1, 1)
    if not isinstance(f, int) or f < 1:
        raise BadConductor("conductor must be a positive integer, got %r" % (f,))
    if not isinstance(d, int) or not is_squarefree(d):
        raise NotSquarefree("d must be a squarefree positive integer, got %r" % (d,))
    return OrderSpec(IMAGINARY_QUADRATIC, d, f)


ZZ = make_order("Z")
GAUSSIAN = make_order("iq", 1, 1)
EISENSTEIN = make_order("iq", 3, 1)


class OrderElement:
    """``a + b*w`` in an order (or its fraction field when a, b are rational)."""

    __slots__ = ("order", "a", "b")

    def __init__(self, order: OrderSpec, a: Rational = 0, b: Rational = 0):
        a, b = _canon(a), _canon(b)
        if order.is_integers and b != 0:
            raise DomainValueError("elements of Z have b = 0")
        self.order = order
        self.a = a
        self.b = b

    # coercion ---------------------------------------------------------
    def _coerce(self, other) -> OrderElement:
        if isinstance(other, OrderElement):
            if other.order != self.order:
                raise OrderMismatch("%s vs %s" % (self.order, other.order))
            return other
        if isinstance(other, (int, Fraction)):
            return OrderElement(self.order, other, 0)
        return NotImplemented

    # ring operations --------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return OrderElement(self.order, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> OrderElement:
        return OrderElement(self.order, -self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return OrderElement(self.order, self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        o = self.order
        a, b, c, d = self.a, self.b, other.a, other.b
        bd = b * d
        return OrderElement(o, a * c - o.n * bd, a * d + b * c + o.t * bd)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int) -> OrderElement:
        if e < 0:
            return self.inverse() ** (-e)
        out, base = self.order.one(), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> OrderElement:
        return OrderElement(self.order, self.a + self.order.t * self.b, -self.b)

    def norm(self) -> Rational:
        o = self.order
        return _canon(self.a * self.a + o.t * self.a * self.b + o.n * self.b * self.b)

    def trace(self) -> Rational:
        return _canon(2 * self.a + self.order.t * self.b)

    def inverse(self) -> OrderElement:
        nm = self.norm()
        if nm == 0:
            raise ZeroDivisionError("division by zero in %s" % self.order)
        c = self.conj()
        return OrderElement(self.order, Fraction(c.a) / nm, Fraction(c.b) / nm)

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_integral(self) -> bool:
        return isinstance(self.a, int) and isinstance(self.b, int)

    def is_unit(self) -> bool:
        return self.is_integral() and self.norm() == 1

    def is_rational(self) -> bool:
        return self.b == 0

    def denominator(self) -> int:
        """Least positive integer ``m`` with ``m*self`` integral."""
        return math.lcm(Fraction(self.a).denominator, Fraction(self.b).denominator)

    def divides(self, other: OrderElement) -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other / self).is_integral()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, OrderElement):
            return NotImplemented
        return self.order == other.order and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.order, self.a, self.b))

    def key(self) -> tuple:
        return (self.a, self.b)

    def to_complex(self) -> complex:
        o = self.order
        if o.is_integers:
            return complex(float(self.a), 0.0)
        if o.half_integral:
            w = complex(o.f / 2, o.f * math.sqrt(o.d) / 2)
        else:
            w = complex(0.0, o.f * math.sqrt(o.d))
        return float(self.a) + float(self.b) * w

    def __repr__(self) -> str:
        return "OrderElement(%s, %s, %s)" % (self.order, self.a, self.b)

    def __str__(self) -> str:
        if self.order.is_integers or self.b == 0:
            return str(self.a)
        sym = "w"
        if self.a == 0:
            return "%s*%s" % (self.b, sym)
        return "%s%+d*%s" % (self.a, self.b, sym) if isinstance(self.b, int) else "%s+(%s)*%s" % (self.a, self.b, sym)


def element_ops(x: OrderElement, y: OrderElement) -> dict:
    """The add/mul/conj/norm family on a pair of elements of one order."""
    if x.order != y.order:
        raise OrderMismatch("%s vs %s" % (x.order, y.order))
    return {
        "sum": x + y,
        "product": x * y,
        "conj_x": x.conj(),
        "conj_y": y.conj(),
        "norm_x": x.norm(),
        "norm_y": y.norm(),
    }


# units and canonical associates --------------------------------------

def _in_fundamental_sector(x: OrderElement) -> bool:
    o = x.order
    nunits = len(o.units())
    if nunits == 2:
        return x.b > 0 or (x.b == 0 and x.a > 0)
    # Z[i] and Z[w] with w a sixth root of unity: the sector between 1 and the
    # next unit counter-clockwise is exactly {a > 0, b >= 0} in the basis (1, w)
    return x.a > 0 and x.b >= 0


def canonical_associate(x: OrderElement) -> tuple[OrderElement, OrderElement]:
    """Return ``(u*x, u)`` with ``u`` a unit and ``u*x`` the canonical associate.

    The canonical associate is the one whose argument lies in ``[0, 2*pi/w)``
    where ``w`` is the number of units (positive integers for Z).
    """
    if x.is_zero():
        return x, x.order.one()
    for u in x.order.units():
        y = u * x
        if _in_fundamental_sector(y):
            return y, u
    raise AssertionError("no canonical associate for %r" % (x,))


# euclidean division ---------------------------------------------------

def _floor_ceil(q: Rational) -> tuple[int, ...]:
    fl = math.floor(q)
    return (fl,) if fl == q else (fl, fl + 1)


def euclid_divmod(x: OrderElement, y: OrderElement) -> tuple[OrderElement, OrderElement]:
    """``x = q*y + r`` with ``norm(r) < norm(y)`` in a Euclidean order."""
    o = x.order
    if not o.euclidean:
        raise NonEuclideanOrder("order %s is not norm-Euclidean" % o)
    if y.is_zero():
        raise ZeroDivisionError("euclidean division by zero")
    exact = x / y
    if exact.is_integral():
        return exact, o.zero()
    best = None
    # the nearest lattice point is a vertex of the containing cell
    for qa in _floor_ceil(exact.a):
        for qb in _floor_ceil(exact.b):
            q = OrderElement(o, qa, qb)
            r = x - q * y
            key = (r.norm(), r.key())
            if best is None or key < best[0]:
                best = (key, q, r)
    _, q, r = best
    if not r.norm() < y.norm():
        raise AssertionError("euclidean step failed for %r / %r" % (x, y))
    return q, r


def gcd(x: OrderElement, y: OrderElement) -> OrderElement:
    """Canonical generator of the ideal ``(x, y)`` in a Euclidean order."""
    while not y.is_zero():
        _, r = euclid_divmod(x, y)
        x, y = y, r
    return canonical_associate(x)[0]


def elements_with_norm_at_most(order: OrderSpec, bound: int) -> list[OrderElement]:
    """All elements of norm ``<= bound`` in a fixed deterministic order."""
    out = []
    if order.is_integers:
        r = math.isqrt(bound)
        return [OrderElement(order, a, 0) for a in range(-r, r + 1)]
    # norm(a + b w) >= |disc| b^2 / 4
    bmax = math.isqrt(4 * bound // abs(order.discriminant)) + 1
    for b in range(-bmax, bmax + 1):
        # a^2 + t a b + n b^2 <= bound; complete the square in a
        amax = math.isqrt(bound) + abs(order.t * b) + 1
        for a in range(-amax, amax + 1):
            x = OrderElement(order, a, b)
            if x.norm() <= bound:
                out.append(x)
    out.sort(key=lambda e: (e.norm(), e.a, e.b))
    return out


def iter_nonzero(order: OrderSpec, bound: int) -> Iterator[OrderElement]:
    return (x for x in elements_with_norm_at_most(order, bound) if not x.is_zero())


# JSON -----------------------------------------------------------------

def order_to_json(order: OrderSpec) -> dict:
    if order.is_integers:
        return {"kind": "Z"}
    return {"kind": "iq", "d": order.d, "f": order.f}


def order_from_json(doc: dict) -> OrderSpec:
    kind = doc.get("kind")
    if _KIND_ALIASES.get(kind) == RATIONAL_INTEGERS:
        return ZZ
    return make_order(kind, doc.get("d", 1), doc.get("f", 1))


def rational_to_str(x: Rational) -> str:
    x = _canon(x)
    if isinstance(x, int):
        return str(x)
    return "%d/%d" % (x.numerator, x.denominator)


def rational_from_json(v) -> Rational:
    if isinstance(v, bool):
        raise DomainValueError("expected a rational, got %r" % (v,))
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return _canon(Fraction(v.strip()))
        except (ValueError, ZeroDivisionError):
            raise DomainValueError("bad rational literal %r" % (v,)) from None
    raise DomainValueError("expected an integer or a 'p/q' string, got %r" % (v,))


def element_to_json(x: OrderElement) -> list[str]:
    return [rational_to_str(x.a), rational_to_str(x.b)]


def element_from_json(order: OrderSpec, v) -> OrderElement:
    if isinstance(v, list):
        if len(v) != 2:
            raise DomainValueError("element must be a pair [a, b], got %r" % (v,))
        return OrderElement(order, rational_from_json(v[0]), rational_from_json(v[1]))
    return OrderElement(order, rational_from_json(v), 0)

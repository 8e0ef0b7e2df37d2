"""Rigorous enclosures of the lower bounds for essential minima.

All implicit constants are inputs.  Values are returned as rational
intervals that contain the real number; ``exact`` marks a collapsed interval.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BadDimension, DomainValueError
from .intervals import log_power_enclosure, power_enclosure
from .orders import rational_to_str

DEFAULT_PRECISION = 128

FLAG_NONPOSITIVE_DEG_H = "nonpositive_degH_exponent"


def _pos(name: str, x, at_least=None) -> Fraction:
    v = Fraction(x)
    if v <= 0:
        raise DomainValueError("%s must be positive, got %s" % (name, v))
    if at_least is not None and v < at_least:
        raise DomainValueError("%s must be >= %s, got %s" % (name, at_least, v))
    return v


def _codim(codim) -> int:
    if not isinstance(codim, int) or isinstance(codim, bool) or codim < 1:
        raise BadDimension("codimension must be a positive integer, got %r" % (codim,))
    return codim


@dataclass(frozen=True)
class BoundResult:
    lower: Fraction
    upper: Fraction
    exact: bool
    flags: tuple[str, ...] = ()
    precision: int = DEFAULT_PRECISION

    def contains(self, x) -> bool:
        return self.lower <= x <= self.upper

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def scale(self, k) -> BoundResult:
        k = Fraction(k)
        return BoundResult(self.lower * k, self.upper * k, self.exact, self.flags, self.precision)

    def to_json(self) -> dict:
        out = {"lower": rational_to_str(self.lower), "upper": rational_to_str(self.upper), "exact": self.exact}
        if self.flags:
            out["flags"] = list(self.flags)
        return out


@dataclass(frozen=True)
class BoundQuery:
    degH: Fraction
    degY: Fraction
    codim: int
    eta: Fraction
    constant_c: Fraction = Fraction(1)
    dimB: int | None = None
    omega: Fraction | None = None
    C0: Fraction | None = None
    flags: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def make(cls, degH, degY, codim, eta, constant_c=1, dimB=None, omega=None, C0=None) -> BoundQuery:
        codim = _codim(codim)
        eta = _pos("eta", eta)
        flags = (FLAG_NONPOSITIVE_DEG_H,) if eta >= Fraction(1, codim) else ()
        return cls(
            _pos("degH", degH, 1),
            _pos("degY", degY, 1),
            codim,
            eta,
            _pos("c", constant_c),
            dimB,
            None if omega is None else _pos("omega", omega),
            None if C0 is None else _pos("C0", C0),
            flags,
        )


def _result(lo, hi, exact, bits, flags=()) -> BoundResult:
    return BoundResult(lo, hi, exact, tuple(flags), bits)


def galateau_lambda(dimB: int, codim: int) -> int:
    """``(5 dimB (1 + codim))^(1 + codim)``."""
    if dimB < 1:
        raise BadDimension("dimB must be >= 1")
    _codim(codim)
    return (5 * dimB * (1 + codim)) ** (1 + codim)


def galateau_bound(C0, omega, degY, lam: int, precision: int = DEFAULT_PRECISION, log_enclosure=None) -> BoundResult:
    """Enclose ``C0 / omega * ln(3 degY)^(-lam)`` with the natural log.

    ``log_enclosure(x, bits) -> (lo, hi)`` replaces the built-in enclosure of
    ``ln x``; it exists so tests can pin the logarithm to a known value.
    """
    c = _pos("C0", C0) / _pos("omega", omega)
    degY = _pos("degY", degY, 1)
    if lam < 1:
        raise DomainValueError("lambda must be a positive integer")
    lo, hi, exact = log_power_enclosure(c, 3 * degY, lam, precision, log_enclosure)
    return _result(lo, hi, exact, precision)


def effective_bogomolov(C, degY, codim: int, eta, precision: int = DEFAULT_PRECISION) -> BoundResult:
    """Enclose ``C * degY^(-1/codim - eta)``."""
    codim = _codim(codim)
    eta = _pos("eta", eta)
    e = Fraction(1, codim) + eta
    lo, hi, exact = power_enclosure(_pos("C", C), [(_pos("degY", degY, 1), -e)], precision)
    return _result(lo, hi, exact, precision)


def main_bound(q: BoundQuery, precision: int = DEFAULT_PRECISION) -> BoundResult:
    """Enclose ``c * degH^(1/codim - eta) * degY^(-1/codim - eta)``."""
    inv = Fraction(1, q.codim)
    factors = [(q.degH, inv - q.eta), (q.degY, -inv - q.eta)]
    lo, hi, exact = power_enclosure(q.constant_c, factors, precision)
    return _result(lo, hi, exact, precision, q.flags)


def isogeny_bound(deg_pullback_B, deg_pullback_Y, codim: int, eta, C=1, precision: int = DEFAULT_PRECISION) -> BoundResult:
    """The isogeny-pullback bound; the same formula as :func:`main_bound`."""
    q = BoundQuery.make(deg_pullback_B, deg_pullback_Y, codim, eta, C)
    return main_bound(q, precision)


def translate_theta(c1, degB, degY, codim: int, eta, precision: int = DEFAULT_PRECISION) -> tuple[BoundResult, BoundResult]:
    """``theta`` for the subgroup case and the quarter ``theta / 4`` that survives translation."""
    theta = main_bound(BoundQuery.make(degB, degY, codim, eta, c1), precision)
    return theta, theta.scale(Fraction(1, 4))

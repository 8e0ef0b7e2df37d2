"""Outward-rounded enclosures of products of rational powers.

Every enclosure lives on a dyadic grid ``2^-k``.  For a value ``c * R^(1/q)``
with ``R`` rational the lower endpoint is ``floor(2^k R^(1/q)) / 2^k``,
computed with an exact integer ``q``-th root, so raising ``k`` gives nested
intervals.  ``k`` is the requested precision plus a shift that depends only
on the magnitude of the value, which keeps the relative width near
``2^-precision`` for very small values.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable

import mpmath
from sympy import integer_nthroot

from .errors import DomainValueError, PrecisionTooLow

GUARD_BITS = 64


def iroot(n: int, q: int) -> tuple[int, bool]:
    """``(floor(n^(1/q)), exact)`` for ``n >= 0``."""
    if n < 0:
        raise DomainValueError("root of a negative number")
    r, exact = integer_nthroot(n, q)
    return int(r), bool(exact)


def _check_precision(bits: int) -> None:
    if not isinstance(bits, int) or bits < 2:
        raise PrecisionTooLow("precision must be an integer >= 2 bits, got %r" % (bits,))


def floor_to_grid(x: Fraction, k: int) -> Fraction:
    return Fraction((x.numerator << k) // x.denominator, 1 << k)


def ceil_to_grid(x: Fraction, k: int) -> Fraction:
    return Fraction(-((-x.numerator << k) // x.denominator), 1 << k)


def _magnitude_shift(log2_value: float) -> int:
    """Extra grid bits so a value of this size keeps its relative precision."""
    return max(0, math.ceil(-log2_value)) + 2


def combine_powers(factors: Iterable[tuple]) -> tuple[Fraction, int]:
    """``prod x_i^(e_i)`` as ``R^(1/q)`` with ``R`` rational and ``q`` the exponent lcm."""
    factors = [(Fraction(x), Fraction(e)) for x, e in factors]
    for x, _ in factors:
        if x <= 0:
            raise DomainValueError("bases must be positive, got %s" % x)
    q = math.lcm(*(e.denominator for _, e in factors)) if factors else 1
    R = Fraction(1)
    for x, e in factors:
        p = int(e * q)
        R *= x ** p
    return R, q


def power_enclosure(c, factors: Iterable[tuple], bits: int) -> tuple[Fraction, Fraction, bool]:
    """Enclose ``c * prod x_i^(e_i)``; returns ``(lower, upper, exact)``.

    ``exact`` is set when the combined radical is a rational number, which is
    then returned as both endpoints.
    """
    _check_precision(bits)
    c = Fraction(c)
    if c <= 0:
        raise DomainValueError("constant must be positive")
    R, q = combine_powers(factors)
    num_root, num_exact = iroot(R.numerator, q)
    den_root, den_exact = iroot(R.denominator, q)
    if num_exact and den_exact:
        v = c * Fraction(num_root, den_root)
        return v, v, True
    log2_r = (R.numerator.bit_length() - R.denominator.bit_length()) / q
    k = bits + _magnitude_shift(log2_r)
    scaled = (R.numerator << (k * q)) // R.denominator
    lo_int, _ = iroot(scaled, q)
    lo = Fraction(lo_int, 1 << k)
    hi = Fraction(lo_int + 1, 1 << k)
    return c * lo, c * hi, False


def _raw_to_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    v = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -v if sign else v


def log_enclosure(x, bits: int) -> tuple[Fraction, Fraction]:
    """Outward enclosure of the natural log of a positive rational, on a ``2^-(bits+GUARD)`` grid."""
    _check_precision(bits)
    x = Fraction(x)
    if x <= 0:
        raise DomainValueError("log of a nonpositive number")
    if x == 1:
        return Fraction(0), Fraction(0)
    ctx = mpmath.iv
    old = ctx.prec
    try:
        ctx.prec = bits + 2 * GUARD_BITS
        v = ctx.log(ctx.mpf(x.numerator) / ctx.mpf(x.denominator))
        a, b = (_raw_to_fraction(r) for r in v._mpi_)
    finally:
        ctx.prec = old
    k = bits + GUARD_BITS
    return floor_to_grid(a, k), ceil_to_grid(b, k)


LogEnclosure = Callable[[Fraction, int], tuple]


def log_power_enclosure(
    c, x, lam: int, bits: int, log_enclosure_fn: LogEnclosure | None = None
) -> tuple[Fraction, Fraction, bool]:
    """Enclose ``c * ln(x)^(-lam)`` for ``x > 1``."""
    _check_precision(bits)
    c = Fraction(c)
    fn = log_enclosure_fn or log_enclosure
    a, b = (Fraction(v) for v in fn(Fraction(x), bits))
    if a <= 0:
        raise PrecisionTooLow("log enclosure does not separate from 0")
    if a == b:
        v = c / a ** lam
        return v, v, True
    lo_exact, hi_exact = c / b ** lam, c / a ** lam
    # magnitude from a fixed float estimate so the grid does not move with bits
    ln_est = math.log(float(x)) if fn is log_enclosure else float(a)
    est = math.log2(float(c)) - lam * math.log2(ln_est)
    k = bits + _magnitude_shift(est)
    return floor_to_grid(lo_exact, k), ceil_to_grid(hi_exact, k), False

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from abelic.errors import BadConductor, DomainValueError, NotSquarefree, OrderMismatch
from abelic.orders import (
    EISENSTEIN,
    GAUSSIAN,
    OrderElement,
    canonical_associate,
    element_from_json,
    element_ops,
    element_to_json,
    elements_with_norm_at_most,
    euclid_divmod,
    gcd,
    make_order,
    order_from_json,
    order_to_json,
)

from conftest import ORDERS, elements, orders
from oracles import complex_entry


def test_make_order_examples():
    assert make_order("rational-integers").euclidean
    zi = make_order("imaginary-quadratic", 1, 1)
    assert zi == GAUSSIAN and zi.euclidean
    q5 = make_order("imaginary-quadratic", 5, 1)
    assert not q5.euclidean


def test_make_order_rejects_bad_input():
    with pytest.raises(NotSquarefree):
        make_order("iq", 4)
    with pytest.raises(BadConductor):
        make_order("iq", 1, 0)
    with pytest.raises(DomainValueError):
        make_order("octonions")


def test_conductor_orders_are_not_euclidean():
    assert not make_order("iq", 1, 2).euclidean
    assert make_order("iq", 3, 2).n == 4


def test_norm_examples():
    i = GAUSSIAN.gen()
    assert (1 + i).norm() == 2
    assert GAUSSIAN.zero().norm() == 0
    w = EISENSTEIN.gen()
    assert (2 + w).norm() == 7


def test_generator_relation():
    for o in ORDERS[1:] + [make_order("iq", 2), make_order("iq", 7), make_order("iq", 3, 3)]:
        w = o.gen()
        assert w * w == o.t * w - o.n


def test_element_ops_family():
    i = GAUSSIAN.gen()
    ops = element_ops(1 + i, 2 - i)
    assert ops["sum"] == GAUSSIAN(3, 0)
    assert ops["product"] == GAUSSIAN(3, 1)
    assert ops["conj_x"] == 1 - i
    assert ops["norm_y"] == 5
    with pytest.raises(OrderMismatch):
        element_ops(1 + i, EISENSTEIN.one())


def test_units_have_norm_one():
    for o in ORDERS:
        us = o.units()
        assert all(u.norm() == 1 for u in us)
    assert len(GAUSSIAN.units()) == 4 and len(EISENSTEIN.units()) == 6


def test_norm_multiplicative_bulk():
    rng = random.Random(3)
    for o in ORDERS:
        for _ in range(10_000):
            x = o(rng.randint(-20, 20), 0 if o.is_integers else rng.randint(-20, 20))
            y = o(rng.randint(-20, 20), 0 if o.is_integers else rng.randint(-20, 20))
            assert (x * y).norm() == x.norm() * y.norm()


@given(st.data())
def test_norm_matches_complex_model(data):
    o = data.draw(orders)
    x = data.draw(elements(o, 10))
    assert abs(abs(complex_entry(x)) ** 2 - float(x.norm())) < 1e-6


@given(st.data())
def test_euclidean_division(data):
    o = data.draw(orders)
    x = data.draw(elements(o, 30))
    y = data.draw(elements(o, 6))
    if y.is_zero():
        return
    q, r = euclid_divmod(x, y)
    assert q * y + r == x
    assert r.norm() < y.norm()


@given(st.data())
def test_gcd_divides_and_is_canonical(data):
    o = data.draw(orders)
    x = data.draw(elements(o, 12))
    y = data.draw(elements(o, 12))
    if x.is_zero() and y.is_zero():
        return
    g = gcd(x, y)
    assert g.divides(x) and g.divides(y)
    assert canonical_associate(g)[0] == g
    # every common divisor of small norm divides g
    for z in elements_with_norm_at_most(o, 5):
        if not z.is_zero() and z.divides(x) and z.divides(y):
            assert z.divides(g)


@given(st.data())
def test_canonical_associate_is_class_invariant(data):
    o = data.draw(orders)
    x = data.draw(elements(o, 8))
    c, u = canonical_associate(x)
    assert u * x == c
    for v in o.units():
        assert canonical_associate(v * x)[0] == c


def test_inverse_in_fraction_field():
    x = GAUSSIAN(1, 1)
    inv = x.inverse()
    assert inv == GAUSSIAN(Fraction(1, 2), Fraction(-1, 2))
    assert x * inv == GAUSSIAN.one()
    assert not inv.is_integral() and inv.denominator() == 2


def test_elements_with_norm_at_most_is_complete():
    for o in ORDERS:
        pool = set(e.key() for e in elements_with_norm_at_most(o, 5))
        for a in range(-6, 7):
            for b in ([0] if o.is_integers else range(-6, 7)):
                x = OrderElement(o, a, b)
                assert (x.norm() <= 5) == (x.key() in pool)


def test_json_round_trip():
    for o in ORDERS + [make_order("iq", 5, 2)]:
        assert order_from_json(order_to_json(o)) == o
        x = o(Fraction(3, 2), 0 if o.is_integers else -7)
        assert element_from_json(o, element_to_json(x)) == x

from __future__ import annotations

import copy
from types import SimpleNamespace
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abelic.bounds import isogeny_bound
from abelic.errors import BadDimensions, DomainValueError, EmptyFactorList
from abelic.ledger import (
    ETA,
    Affine,
    M,
    Monomial,
    check_step,
    ledger_exponents,
    mu_rules,
    naive_verify,
    thm28_ledger,
    thm41_ledger,
    verify,
)

from oracles import encloses, reference_value


def encloses_fraction(doc, ref) -> bool:
    return encloses(SimpleNamespace(lower=doc["lower"], upper=doc["upper"]), ref)


def test_affine_arithmetic():
    e = Affine(Fraction(1, 2), Fraction(-3))
    assert str(e) == "1/2 - 3*eta"
    assert e.at(Fraction(1, 10)) == Fraction(1, 5)
    assert (e + ETA).at(0) == Fraction(1, 2)
    assert e.nonnegative(Fraction(1, 6)) and not e.nonnegative(Fraction(1, 5))
    assert not e.nonnegative(None) and Affine(1, 2).nonnegative(None)
    with pytest.raises(DomainValueError):
        ETA * ETA


def test_monomial_arithmetic():
    m = M("a", 2) * Monomial.num(12)
    assert m.exponent("a") == Affine.of(2)
    assert m.exponent(2) == Affine.of(2) and m.exponent(3) == Affine.of(1)
    assert (m / m).is_one()
    assert ((M("x") ** ETA) ** 2 / M("x") ** (2 * ETA)).is_one()


def test_thm28_example():
    tr = thm28_ledger(2, 1, Fraction(1, 10))
    assert ledger_exponents(tr) == (Fraction(9, 10), Fraction(11, 10))
    assert tr.proven
    assert all(naive_verify(tr))


def test_thm28_other_examples():
    tr = thm28_ledger(3, 1, Fraction(1, 12))
    assert tr.final["numerator_exponent"] == Fraction(1, 4)
    sym = thm28_ledger(4, 1)
    assert sym.proven and all(naive_verify(sym))
    assert sym.final["numerator_form"] == Affine(Fraction(1, 3), -5)
    assert sym.final["denominator_form"] == Affine(Fraction(1, 3), 1)
    with pytest.raises(BadDimensions):
        thm28_ledger(2, 2)
    with pytest.raises(DomainValueError):
        thm28_ledger(2, 1, 0)


def test_thm28_kernel_cancellation_is_a_monomial_identity():
    g, d = 3, 1
    a = M("a")
    tr = thm28_ledger(g, d)
    khat = tr.relations["dual"].expr
    assert (a ** (2 * g - 2 * d) * a ** (2 * d) / (khat * M("kphi"))).is_one()


@settings(max_examples=25)
@given(st.integers(2, 6), st.data())
def test_thm28_exponents_all_parameters(g, data):
    d = data.draw(st.integers(1, g - 1))
    eta = data.draw(st.fractions(min_value=Fraction(1, 100), max_value=1, max_denominator=100))
    tr = thm28_ledger(g, d, eta)
    c = g - d
    assert ledger_exponents(tr) == (Fraction(1, c) - 2 * c * eta + eta, Fraction(1, c) + eta)
    assert tr.final["rescaled_numerator_exponent"] == Fraction(1, c) - eta
    assert tr.proven
    assert all(naive_verify(tr))


def _tampered(tr, index: int, factor):
    bad = copy.deepcopy(tr)
    step = bad.all_steps[index]
    step.rhs = step.rhs * factor
    return verify(bad), step


@pytest.mark.parametrize("index", range(7))
def test_tampered_thm28_step_fails_both_verifiers(index):
    tr = thm28_ledger(3, 1, Fraction(1, 7))
    bad, step = _tampered(tr, index, M("kphi"))
    assert step.verdict == "failed"
    assert not bad.proven
    assert naive_verify(bad)[index] is False


def test_tampered_certificate_exponent_fails():
    tr = thm28_ledger(2, 1)
    bad = copy.deepcopy(tr)
    step = bad.steps[5]
    kind, name, base, e = step.certificate[2]
    step.certificate[2] = (kind, name, base, e - 4 * ETA)  # negative exponent on a ">=" rule
    assert not check_step(step, bad)
    assert naive_verify(bad)[5] is False


def test_thm41_single_factor_matches_isogeny_chain():
    for g, d, eta in [(2, 1, Fraction(1, 10)), (5, 2, Fraction(1, 30)), (4, 3, Fraction(1, 3))]:
        t28 = thm28_ledger(g, d, eta)
        t41 = thm41_ledger(g - d, eta, [1], [1], degH=9, degY=5)
        assert ledger_exponents(t41) == (
            t28.final["rescaled_numerator_exponent"],
            t28.final["rescaled_denominator_exponent"],
        )
        assert t41.final["alpha"] == 1 and t41.final["binom_max"] == 1
        assert t41.final["absorption_constant"]["exact"]
        assert t41.final["absorption_constant"]["lower"] == 1
        ref = isogeny_bound(9, 5, g - d, eta)
        got = t41.final["value_over_C"]
        assert (got["lower"], got["upper"]) == (ref.lower, ref.upper)
        assert t41.proven and all(naive_verify(t41))


def test_thm41_two_factors():
    tr = thm41_ledger(1, Fraction(1, 10), [1, 1], [1, 2], ns=[1, 2])
    assert tr.final["binom_max"] == 4
    ab = tr.final["absorption_constant"]
    assert encloses_fraction(ab, reference_value(1, [(4, Fraction(-9, 10))]))
    assert tr.proven and all(naive_verify(tr))


def test_thm41_alpha_bookkeeping():
    tr = thm41_ledger(2, Fraction(1, 7), [2, 3], [1, 2], ns=[1, 2], dim_y=3)
    assert tr.final["alpha"] == max(4 * 1, 9 * 2)
    alpha_factor = tr.final["constant_factors"][0]
    assert alpha_factor["exponent"] == -(1 + 3 * (Fraction(1, 2) + Fraction(1, 7)))
    # E8 / E9 is exactly alpha^-(1 + dimY(1/codim + eta)) binom^-(1/codim - eta)
    e8, e9 = tr.steps[-1].lhs, tr.steps[-1].rhs
    ratio = e8 / e9
    # alpha = 18 = 2 * 3^2 and binom_max = 4 = 2^2
    alpha_exp = -(Affine.of(1) + 3 * Affine(Fraction(1, 2), 1))
    binom_exp = -Affine(Fraction(1, 2), -1)
    assert ratio.exponent(2) == alpha_exp + 2 * binom_exp
    assert ratio.exponent(3) == 2 * alpha_exp
    assert tr.proven and all(naive_verify(tr))


def test_thm41_validation_and_flags():
    with pytest.raises(EmptyFactorList):
        thm41_ledger(1, Fraction(1, 2), [], [])
    with pytest.raises(DomainValueError):
        thm41_ledger(1, Fraction(1, 2), [1], [1, 1])
    tr = thm41_ledger(2, 1, [1], [1])
    assert "nonpositive_degH_exponent" in tr.flags


def test_mu_rules():
    r = mu_rules("power-eq", {"m": 3})
    assert r["relation"] == "=" and r["rhs"] == Monomial.num(3) * M("mu")
    p = mu_rules("pullback-eq", {"phi": "psi", "Y": "Z"})
    assert p["relation"] == "=" and "psi" in p["lhs"] and "psi(Z)" in p["rhs"]
    t = mu_rules("tensor-superadd", {"k": 4})
    assert t["relation"] == ">=" and t["summands"] == 4 and t["rhs"].count("+") == 3
    with pytest.raises(DomainValueError):
        mu_rules("power-eq", {"m": 0})

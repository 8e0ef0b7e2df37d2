"""
Exponent bookkeeping with certificates
======================================

The ledger tracks exponents of degH, degY and alpha as affine functions of
eta.  Every step carries a certificate, and a second verifier rechecks each
one symbolically.
"""

from __future__ import annotations

from fractions import Fraction

from abelic.ledger import ledger_exponents, naive_verify, thm28_ledger, thm41_ledger

trace = thm28_ledger(g=2, d=1, eta=Fraction(1, 10))
for step in trace.steps:
    print(step.lhs, step.relation, step.rhs, " by", step.justification, "->", step.verdict)
print("final exponents", ledger_exponents(trace), "proven", trace.proven)
print("independent check", naive_verify(trace))

# symbolic eta
print({k: str(v) for k, v in thm28_ledger(3, 1).final.items()})

# a product of two factors with dual multipliers 2 and 3
prod = thm41_ledger(1, Fraction(1, 10), alphas=[2, 3], binoms=[1, 1])
print(prod.final)

"""
Certified lower bounds
======================

Each bound is a closed rational interval guaranteed to contain the real
value; asking for more bits shrinks it.
"""

from __future__ import annotations

from abelic.bounds import BoundQuery, galateau_bound, galateau_lambda, main_bound

q = BoundQuery.make(degH=7, degY=3, codim=2, eta="1/9", constant_c="5/2")
for bits in (16, 64, 256):
    r = main_bound(q, bits)
    print(bits, "bits:", float(r.lower), "width", float(r.width))

# perfect powers come back exact
print(main_bound(BoundQuery.make(8, 2, 1, "1/2")))

lam = galateau_lambda(1, 1)
print("lambda", lam, galateau_bound(1, 2, 5, lam, 64).to_json())

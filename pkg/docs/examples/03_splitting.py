"""
Splitting off an abelian subvariety
===================================

A subvariety of E^N is the image of a column matrix P.  We complete it to an
isogeny ``phi`` from E^n x E^(N-n), find the dual, and check the identities
that tie the degrees together.
"""

from __future__ import annotations

from abelic.matrices import Matrix
from abelic.orders import GAUSSIAN
from abelic.polarization import verify_relchiave
from abelic.splitting import diagram_check, full_split, push_degree_bound

i = GAUSSIAN.gen()
P = Matrix(GAUSSIAN, [[1], [1 + i], [2]])

for strategy in ("unimodular", "orthogonal"):
    s = full_split(P, strategy)
    print(strategy, "alpha", s.alpha, "||T||^2 <=", s.norm_t)
    print("  phi\n", s.phi)
    print("  relation flags", verify_relchiave(s)["ok"], " diagram", diagram_check(s)["ok"])
    print("  push degree", push_degree_bound(s))

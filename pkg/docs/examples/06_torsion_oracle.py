"""
Brute force on torsion points
=============================

Finite models ``(Lambda / c Lambda)^N`` let us list kernels, subgroups and
stabilizers and compare them with the closed formulas.
"""

from __future__ import annotations

from abelic.isogeny import dual_and_alpha
from abelic.matrices import Matrix
from abelic.orders import ZZ
from abelic.torsion import DEFAULT_SCOPE, FiniteModel, cross_check, finite_stab, stab_lemma_checks, subgroups

model = FiniteModel(ZZ, 1, 4)
subs = list(subgroups(model))
print(len(subs), "subgroups of (Z/4)^2")

m = Matrix(ZZ, [[2]])
a = dual_and_alpha(m)[1]
for sg in subs[:3]:
    Y = next(sg.cosets())
    print(sg.diagonal, "stabilizer size", len(finite_stab(model, Y)), stab_lemma_checks(model, Y, m, a)["ok"])

summary = cross_check(dict(DEFAULT_SCOPE, count=20, max_N=2))
print({k: (v["checked"], v["passed"]) for k, v in summary.items() if isinstance(v, dict)})

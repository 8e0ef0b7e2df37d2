"""
Line bundles as Hermitian matrices
==================================

Pulling back along a matrix is congruence ``psi^dagger H psi``; top
intersection numbers are mixed discriminants.
"""

from __future__ import annotations

from abelic.matrices import Matrix
from abelic.orders import EISENSTEIN
from abelic.polarization import (
    HermitianClass,
    binomial_multiplicity,
    degree_of_class,
    intersection_number,
    pullback_class,
    verify_gael,
)

w = EISENSTEIN.gen()
L = HermitianClass.identity(EISENSTEIN, 2)
psi = Matrix(EISENSTEIN, [[1, w], [0, 2]])

pulled = pullback_class(L, psi)
print("pulled back class\n", pulled.matrix)

# the degree of a class scales by the degree of the isogeny
print("deg L =", degree_of_class(L), " deg psi^*L =", degree_of_class(pulled))

# mixed terms: (L . psi^*L) on E^2
print("(L . psi^*L) =", intersection_number([L, pulled]))

# the tensor product of the pulled back bundles over all n-subsets has the
# expected degree against the remaining reference classes
rows = Matrix(EISENSTEIN, [[1, 0, w], [0, 1, 1], [1, 1, 0]])
print(binomial_multiplicity(3, 2)["multiplicity"], verify_gael(rows, 2, [HermitianClass.identity(EISENSTEIN, 3)]))

"""
Isogenies of E^N as matrices
============================

A square matrix over the endomorphism ring acts on E^N.  Its degree is the
size of its kernel, and a dual matrix composes with it to multiplication by
an integer alpha.
"""

from __future__ import annotations

from abelic.isogeny import degree, dual_and_alpha, kernel_structure
from abelic.matrices import Matrix
from abelic.orders import GAUSSIAN
from abelic.torsion import enumerate_kernel

i = GAUSSIAN.gen()
M = Matrix(GAUSSIAN, [[1 + i, 1], [0, 2]])

# the degree is |norm(det)|^1 taken through the integer representation
print("degree", degree(M))

# the dual is the smallest integer multiple of the inverse that is integral
dual, alpha = dual_and_alpha(M)
print("alpha", alpha)
print("dual @ M == alpha * I:", (dual @ M).is_identity_multiple(alpha))

# the kernel as an abelian group, and its points listed in a finite model
print("kernel invariants", kernel_structure(M))
ker = enumerate_kernel(M)
print("kernel points", len(ker), "in", ker.model.modulus, "torsion")

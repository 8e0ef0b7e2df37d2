"""Square matrices over an order as isogenies of ``E^N``.

Degrees are kernel cardinalities on the lattice model ``C^N / Lambda``:
``deg M = [Lambda : M Lambda] = |det regular_rep(M)|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadDimension, DomainValueError, SingularMatrix, SizeMismatch, ZeroStabOrder
from .matrices import Matrix, regular_rep
from .normal_forms import integer_smith, smith
from .orders import OrderElement


def _require_square(m: Matrix) -> None:
    if not m.is_square():
        raise SizeMismatch("an isogeny of E^N needs a square matrix, got %s" % (m.shape,))


def degree(m: Matrix) -> int:
    """``|ker M|``: ``|Nm(det M)|``, which is ``(det M)**2`` over Z."""
    _require_square(m)
    d = m.det()
    if d.is_zero():
        raise SingularMatrix("matrix is singular")
    return abs(int(d.norm()))


def dual_and_alpha(m: Matrix) -> tuple[Matrix, int]:
    """The minimal ``alpha`` with ``alpha * M^-1`` integral, and that dual.

    ``alpha`` is the lcm of the denominators of the coordinates of the entries
    of ``M^-1`` in the basis ``(1, w)``, so minimality is entrywise.
    """
    _require_square(m)
    inv = m.inverse()
    alpha = inv.denominator()
    return inv.scale(alpha), alpha


@dataclass(frozen=True)
class IsogenyData:
    matrix: Matrix
    degree: int
    alpha: int
    dual: Matrix
    kernel_divisors: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def check(self) -> bool:
        n = self.dim
        ok = (self.dual @ self.matrix).is_identity_multiple(self.alpha)
        ok = ok and (self.matrix @ self.dual).is_identity_multiple(self.alpha)
        prod = 1
        for d in self.kernel_divisors:
            prod *= d
        ok = ok and prod == self.degree and self.alpha <= self.degree
        return ok and self.degree * degree(self.dual) == self.alpha ** (2 * n)


def isogeny_data(m: Matrix) -> IsogenyData:
    dual, alpha = dual_and_alpha(m)
    return IsogenyData(m, degree(m), alpha, dual, tuple(kernel_structure(m)))


def kernel_structure(m: Matrix, over: str = "Z") -> list:
    """Elementary divisors of ``Lambda / M Lambda``.

    ``over="Z"`` gives the ``2N`` integer invariants (ones included) of the
    finite abelian group; ``over="order"`` gives the ``N`` elementary divisors
    of the module over a Euclidean order.
    """
    _require_square(m)
    if over == "order":
        return smith(m)
    if over != "Z":
        raise DomainValueError("over must be 'Z' or 'order'")
    divs = integer_smith(regular_rep(m))
    if 0 in divs:
        raise SingularMatrix("matrix is singular")
    return divs


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def deg_preimage(D: int, d: int, a: int, degY) -> Fraction:
    """Degree of ``[a]^-1 Y`` for ``Y`` of dimension ``d`` in an abelian variety of dimension ``D``."""
    if not 0 <= d <= D:
        raise BadDimension("need 0 <= d <= D, got d=%r, D=%r" % (d, D))
    if a == 0:
        raise DomainValueError("[0] is not an isogeny")
    degY = _as_fraction(degY)
    if degY <= 0:
        raise DomainValueError("degrees are positive")
    return abs(a) ** (2 * (D - d)) * degY


def deg_image(a: int, d: int, stab_ker_order: int, degY) -> Fraction:
    """Degree of ``[a] Y`` given ``|Stab Y cap ker[a]|``."""
    if stab_ker_order < 1:
        raise ZeroStabOrder("|Stab Y cap ker[a]| must be at least 1, got %r" % (stab_ker_order,))
    if d < 0:
        raise BadDimension("negative dimension %r" % (d,))
    return Fraction(abs(a) ** (2 * d)) * _as_fraction(degY) / stab_ker_order


def pushforward_degree(stab_ker_order, deg_image_val) -> Fraction:
    """Degree of the cycle ``phi_*(Y)``: the image degree times the fibre multiplicity."""
    return _as_fraction(stab_ker_order) * _as_fraction(deg_image_val)


def stab_lemma_checks(model, Y, m: Matrix, a: int) -> dict:
    """Check both stabilizer identities for ``Y`` inside a finite torsion model.

    See :func:`abelic.torsion.stab_lemma_checks`.
    """
    from . import torsion

    return torsion.stab_lemma_checks(model, Y, m, a)


def scalar_matrix(order, n: int, a) -> Matrix:
    return Matrix.scalar(order, n, a if isinstance(a, OrderElement) else OrderElement(order, a))

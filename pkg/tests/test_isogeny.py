from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from abelic.errors import BadDimension, SingularMatrix, SizeMismatch, ZeroStabOrder
from abelic.isogeny import (
    deg_image,
    deg_preimage,
    degree,
    dual_and_alpha,
    isogeny_data,
    kernel_structure,
    pushforward_degree,
    scalar_matrix,
)
from abelic.matrices import Matrix, regular_rep
from abelic.orders import GAUSSIAN, ZZ

from conftest import matrices, orders
from oracles import leibniz_det


def _brute_kernel(m: Matrix) -> np.ndarray:
    """Kernel points ``v/D`` with ``D = |det rep|``, found by scanning ``(Z/D)^(2N)``."""
    rep = np.array(regular_rep(m), dtype=np.int64)
    D = abs(leibniz_det(regular_rep(m)))
    k = rep.shape[1]
    grid = np.array(list(itertools.product(range(D), repeat=k)), dtype=np.int64).reshape(-1, k)
    hit = np.all((grid @ rep.T) % D == 0, axis=1)
    return grid[hit], D


def test_degree_examples():
    for a in (1, 2, 3):
        for n in (1, 2):
            assert degree(scalar_matrix(ZZ, n, a)) == a ** (2 * n)
    assert degree(Matrix(ZZ, [[1, 1], [0, 1]])) == 1
    assert degree(Matrix(ZZ, [[1, 1], [1, -1]])) == 4
    with pytest.raises(SingularMatrix):
        degree(Matrix(ZZ, [[1, 1], [1, 1]]))
    with pytest.raises(SizeMismatch):
        degree(Matrix(ZZ, [[1, 1]]))


def test_dual_examples():
    u = Matrix(ZZ, [[2, 1], [1, 1]])
    dual, alpha = dual_and_alpha(u)
    assert alpha == 1 and dual == u.inverse()
    m = Matrix(ZZ, [[1, 1], [1, -1]])
    assert dual_and_alpha(m) == (m, 2)
    i = GAUSSIAN.gen()
    dual, alpha = dual_and_alpha(Matrix(GAUSSIAN, [[1 + i]]))
    assert alpha == 2 and dual == Matrix(GAUSSIAN, [[1 - i]])


def test_kernel_structure_examples():
    assert kernel_structure(scalar_matrix(ZZ, 1, 2)) == [2, 2]
    assert kernel_structure(Matrix(ZZ, [[1, 1], [1, -1]])) == [1, 1, 2, 2]
    i = GAUSSIAN.gen()
    m = Matrix(GAUSSIAN, [[1 + i]])
    assert math.prod(kernel_structure(m)) == 2
    assert kernel_structure(m, over="order") == [1 + i]


@given(matrices(bound=3, nonsingular=True))
def test_degree_matches_rep_det_and_count(m):
    d = degree(m)
    assert d == abs(leibniz_det(regular_rep(m)))
    if d ** (2 * m.rows) <= 50_000:
        pts, _ = _brute_kernel(m)
        assert len(pts) == d


@given(matrices(bound=3, nonsingular=True))
def test_kernel_structure_matches_brute_force(m):
    d = degree(m)
    if d ** (2 * m.rows) > 50_000:
        return
    pts, D = _brute_kernel(m)
    divs = kernel_structure(m)
    assert math.prod(divs) == d
    for a, b in zip(divs, divs[1:]):
        assert b % a == 0
    for k in range(1, D + 1):
        if D % k == 0:
            killed = int(np.all((pts * k) % D == 0, axis=1).sum())
            assert killed == math.prod(math.gcd(k, x) for x in divs)


@given(matrices(bound=3, nonsingular=True))
def test_dual_relation_and_minimality(m):
    dual, alpha = dual_and_alpha(m)
    n = m.rows
    assert (dual @ m).is_identity_multiple(alpha)
    assert (m @ dual).is_identity_multiple(alpha)
    assert dual.is_integral()
    inv = m.inverse()
    for p in range(2, alpha + 1):
        if alpha % p == 0 and all(alpha % q for q in range(2, p)):
            assert not inv.scale(alpha // p).is_integral()
    assert degree(m) * degree(dual) == alpha ** (2 * n)


@given(st.data())
def test_degree_multiplicative(data):
    o = data.draw(orders)
    n = data.draw(st.integers(1, 3))
    a = data.draw(matrices(order=o, rows=n, nonsingular=True))
    b = data.draw(matrices(order=o, rows=n, nonsingular=True))
    assert degree(a @ b) == degree(a) * degree(b)


def test_isogeny_data_check():
    info = isogeny_data(Matrix(GAUSSIAN, [[GAUSSIAN(1, 1), 0], [2, 3]]))
    assert info.check()
    assert info.degree == 2 * 9


def test_degree_formulas():
    assert deg_preimage(2, 1, 1, 5) == 5
    assert deg_preimage(2, 1, 3, 5) == 45
    assert deg_preimage(3, 0, 2, 1) == 64
    assert deg_image(1, 1, 1, 7) == 7
    assert deg_image(2, 1, 4, 3) == 3
    assert deg_image(2, 0, 4, 8) == 2
    assert pushforward_degree(1, 5) == 5
    assert pushforward_degree(4, 3) == 12
    with pytest.raises(BadDimension):
        deg_preimage(1, 2, 1, 1)
    with pytest.raises(ZeroStabOrder):
        deg_image(2, 1, 0, 1)

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from abelic.errors import CapExceeded, EmptySet, ModulusIncompatible
from abelic.isogeny import deg_image, degree, pushforward_degree, scalar_matrix
from abelic.matrices import Matrix
from abelic.orders import GAUSSIAN, ZZ
from abelic.torsion import (
    FiniteModel,
    bareiss_det,
    cross_check,
    enumerate_kernel,
    finite_stab,
    lattice_index,
    stab_lemma_checks,
    subgroups,
)

from conftest import matrices
from oracles import all_subgroup_count, leibniz_det


def _brute_stab(model: FiniteModel, ys) -> set:
    pts = {tuple(p) for p in ys.as_tuples()}
    c = model.modulus
    out = set()
    for t in model.all_points():
        if {tuple((np.array(p) + t) % c) for p in pts} == pts:
            out.add(tuple(int(x) for x in t))
    return out


def test_lattice_index_examples():
    assert lattice_index(Matrix.identity(ZZ, 2)) == 1
    assert lattice_index(Matrix(ZZ, [[1, 1], [1, -1]])) == 4
    assert lattice_index(Matrix(GAUSSIAN, [[GAUSSIAN(1, 1)]])) == 2


@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_matches_leibniz(rows):
    assert bareiss_det(rows) == leibniz_det(rows)


def test_enumerate_kernel_examples():
    assert enumerate_kernel(Matrix(ZZ, [[2, 1], [1, 1]])).as_tuples() == [(0, 0, 0, 0)]
    k = enumerate_kernel(scalar_matrix(ZZ, 1, 2))
    assert len(k) == 4 and k.model.modulus == 2
    k = enumerate_kernel(Matrix(ZZ, [[1, 1], [1, -1]]))
    assert len(k) == 4 and k.model.modulus == 2
    assert all(all(2 * x % 2 == 0 for x in p) for p in k.as_tuples())


def test_enumerate_kernel_cap():
    with pytest.raises(CapExceeded):
        enumerate_kernel(scalar_matrix(ZZ, 2, 5), cap=100)


@given(matrices(bound=3, nonsingular=True))
def test_enumeration_methods_agree(m):
    d = degree(m)
    if d > 4000:
        return
    a = enumerate_kernel(m, cap=5000, method="closure")
    assert len(a) == d == lattice_index(m)
    if a.model.size <= 1 << 16:
        b = enumerate_kernel(m, cap=5000, method="scan")
        assert np.array_equal(a.codes, b.codes)


def test_finite_stab_examples():
    model = FiniteModel(ZZ, 1, 4)
    assert finite_stab(model, [[0, 0]]).as_tuples() == [(0, 0)]
    assert len(finite_stab(model, model.all_points())) == 16
    two_torsion = [[x, y] for x in (0, 2) for y in (0, 2)]
    coset = [[x + 1, y] for x, y in two_torsion]
    st_ = finite_stab(model, coset)
    assert sorted(st_.as_tuples()) == sorted(tuple(p) for p in two_torsion)
    with pytest.raises(EmptySet):
        finite_stab(model, np.zeros((0, 2), dtype=np.int64))


@given(st.integers(0, 2**16 - 1), st.sampled_from([3, 4, 6]))
def test_finite_stab_matches_brute_force(mask, c):
    model = FiniteModel(ZZ, 1, c)
    pts = model.all_points()
    chosen = [p for i, p in enumerate(pts) if mask >> (i % 16) & 1 and i < 16] or [pts[0]]
    ys = model.points(chosen)
    got = {tuple(p) for p in finite_stab(model, ys).as_tuples()}
    assert got == _brute_stab(model, ys)
    assert (0, 0) in got


def test_subgroup_enumeration_counts():
    for c, N in [(2, 1), (3, 1), (4, 1), (6, 1), (2, 2)]:
        model = FiniteModel(GAUSSIAN, N, c)
        assert sum(1 for _ in subgroups(model)) == all_subgroup_count(c, 2 * N)


def test_subgroup_cosets_have_their_subgroup_as_stab():
    model = FiniteModel(GAUSSIAN, 1, 4)
    for sg in subgroups(model):
        g = sg.elements()
        assert len(g) == sg.order
        for y in sg.cosets():
            assert finite_stab(model, y).same_points(g)


def test_stab_lemma_examples():
    model = FiniteModel(ZZ, 1, 4)
    v = stab_lemma_checks(model, model.all_points(), scalar_matrix(ZZ, 1, 2), 2)
    assert v["ok"] and v["part_i"]["equal"]
    two_torsion = [[x, y] for x in (0, 2) for y in (0, 2)]
    v = stab_lemma_checks(model, two_torsion, scalar_matrix(ZZ, 1, 2), 2)
    assert v["part_ii"]["lhs"] == 4 and v["part_ii"]["rhs"] == 4 and v["ok"]
    gm = FiniteModel(GAUSSIAN, 1, 4)
    phi = Matrix(GAUSSIAN, [[GAUSSIAN(1, 1)]])
    ker = enumerate_kernel(phi).lift(4)
    assert stab_lemma_checks(gm, ker, phi, 2)["ok"]
    with pytest.raises(ModulusIncompatible):
        stab_lemma_checks(gm, ker, phi, 3)


def test_deg_image_on_finite_model():
    # Y = coset of G = <(1,0),(0,2)> in E[4]; |G cap E[2]| = 4, so |[2]Y| = 8 / 4
    model = FiniteModel(ZZ, 1, 4)
    G = model.points([[a, 2 * b] for a in range(4) for b in range(2)])
    Y = G.translate(np.array([0, 1]))
    image = model.points(model.apply(scalar_matrix(ZZ, 1, 2), Y.points))
    inter = len(finite_stab(model, Y).killed_by(2))
    assert inter == 4
    assert len(image) == deg_image(2, 0, inter, len(Y)) == 2


def test_pushforward_fibre_count():
    # phi = [[1,1],[1,-1]] on the model E^2[2]; |Stab Y cap ker phi| = 2 and |phi(Y)| = 4
    model = FiniteModel(ZZ, 2, 2)
    phi = Matrix(ZZ, [[1, 1], [1, -1]])
    ker = enumerate_kernel(phi).lift(2)
    gen = np.array([[1, 0, 0, 0], [0, 1, 0, 0]])
    base = model.points([(a * gen[0] + b * gen[1]) % 2 for a in range(2) for b in range(2)])
    Y = model.points(np.concatenate([base.points, (base.points + ker.points[1]) % 2]))
    stab_ker = len(finite_stab(model, Y).in_kernel_of(phi))
    images = [tuple(p) for p in model.apply(phi, Y.points)]
    assert stab_ker == 2 and len(set(images)) == 4
    assert len(images) == pushforward_degree(stab_ker, len(set(images))) == 8


def test_cross_check_harness():
    assert cross_check({}) == {}
    scope = {"suites": ["degrees", "kernels"], "count": 40, "seed": 5}
    res = cross_check(scope)
    assert res["degrees"]["passed"] == res["degrees"]["checked"] == 80
    assert res["kernels"]["failures"] == []
    bad = cross_check(dict(scope, inject_fault=True))
    assert len(bad["degrees"]["failures"]) == 1
    assert "matrix" in bad["degrees"]["failures"][0]
    assert cross_check(scope) == res

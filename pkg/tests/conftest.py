from __future__ import annotations

import sys
from pathlib import Path

from hypothesis import assume, settings
from hypothesis import strategies as st

from abelic.matrices import Matrix
from abelic.orders import EISENSTEIN, GAUSSIAN, ZZ, OrderElement

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ORDERS = [ZZ, GAUSSIAN, EISENSTEIN]
orders = st.sampled_from(ORDERS)


def elements(order, bound: int = 3):
    if order.is_integers:
        return st.integers(-bound, bound).map(lambda a: OrderElement(order, a))
    return st.tuples(st.integers(-bound, bound), st.integers(-bound, bound)).map(
        lambda ab: OrderElement(order, *ab)
    )


@st.composite
def matrices(draw, order=None, rows=None, cols=None, bound: int = 3, nonsingular: bool = False):
    order = order if order is not None else draw(orders)
    r = rows if rows is not None else draw(st.integers(1, 3))
    c = cols if cols is not None else (r if nonsingular else draw(st.integers(1, 3)))
    m = Matrix(order, [[draw(elements(order, bound)) for _ in range(c)] for _ in range(r)])
    if nonsingular:
        assume(not m.det().is_zero())
    return m


@st.composite
def unimodular(draw, order, n: int, steps: int = 4):
    """Product of a unit diagonal and a few elementary shears."""
    units = order.units()
    m = Matrix(order, [[draw(st.sampled_from(units)) if i == j else 0 for j in range(n)] for i in range(n)])
    if n == 1:
        return m
    for _ in range(draw(st.integers(0, steps))):
        i, j = draw(st.permutations(range(n)))[:2]
        k = draw(elements(order, 2))
        rows = [list(r) for r in m.entries]
        rows[i] = [x + k * y for x, y in zip(rows[i], rows[j])]
        m = Matrix(order, rows)
    return m


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])

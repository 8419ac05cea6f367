import time

import pytest

from guardlab.core import Prod
from guardlab.finset import ConstantDelaySets, FinSet, group_witness


@pytest.mark.parametrize("n, candidates, solutions", [(1, 1, 1), (2, 4, 0), (3, 27, 0), (4, 256, 0)])
def test_group_witness(n, candidates, solutions):
    t = time.perf_counter()
    w = group_witness(n)
    assert (w["candidates"], w["solutions"]) == (candidates, solutions)
    assert time.perf_counter() - t < 1.0


def test_trivial_group_solution_table():
    assert group_witness(1)["solution_tables"] == [{"0": {"0": "0"}}]


def test_constant_delay_dagger_ignores_the_delayed_argument():
    cat = ConstantDelaySets()
    x, y = FinSet(("a", "b")), FinSet((0, 1))
    dom = Prod(cat.delay_obj(x), y)
    f = cat.morphism(dom, x, {((), 0): "b", ((), 1): "a"})
    assert cat.table(cat.dagger(f))[0] == {0: "b", 1: "a"}

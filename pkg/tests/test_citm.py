import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from guardlab.citm import (
    CUT,
    DEFAULT_SIGNATURE,
    EquationMorphism,
    GuardednessError,
    KMor,
    ParseError,
    Signature,
    TreeCategory,
    TreeStore,
    Vars,
    check_solution,
    guardedness_factor,
    parse_system,
    solve,
    solve_by_iteration,
)
from guardlab.core import Later, Prod

WORKED = """sig: *:2, c:0; vars: x1, x2; params: y1, y2
x1 = *(x2, y1)
x2 = *(*(x1, y2), c)
"""


def show(e, t):
    return e.store.show(t, lambda v, _s: str(v))


def test_worked_system_depth_four():
    _, e = parse_system(WORKED, 4)
    sol = solve(e)
    assert show(e, sol["x1"]) == "*(*(*(□, y2), c), y1)"
    assert show(e, sol["x2"]) == "*(*(*(□, y1), y2), c)"
    assert solve_by_iteration(e) == sol


def test_worked_system_square_at_depth_eight():
    _, e = parse_system(WORKED, 8)
    assert check_solution(e, solve(e))


def test_unary_loop_keeps_one_layer_per_level_below_the_cut():
    _, e = parse_system("sig: s:1; vars: x\nx = s(x)\n", 5)
    assert show(e, solve(e)["x"]) == "s(s(s(s(□))))"


def test_parameter_body():
    _, e = parse_system("sig: c:0; vars: x; params: y\nx = y\n", 4)
    assert show(e, solve(e)["x"]) == "y"


def test_empty_system():
    e = EquationMorphism((), (), {}, TreeStore(4))
    assert solve(e) == {}


def test_bare_variable_is_unguarded():
    with pytest.raises(GuardednessError) as info:
        parse_system("sig: c:0; vars: x, z\nx = c\nz = x\n")
    assert info.value.variable == "z"


@pytest.mark.parametrize("text", [
    "",
    "vars: x\nx = c\n",
    "sig: c:0; vars: x\n",
    "sig: c:0; vars: x\nx = d\n",
    "sig: *:2; vars: x\nx = *(x)\n",
    "sig: c:0; vars: x\nx = c\nx = c\n",
    "sig: c:0; vars: x; params: x\nx = c\n",
])
def test_malformed_systems(text):
    with pytest.raises(ParseError):
        parse_system(text)


def test_wrong_solution_fails_the_square():
    _, e = parse_system(WORKED, 6)
    sol = solve(e)
    bad = dict(sol, x1=sol["x2"])
    assert not check_solution(e, bad)


@st.composite
def systems(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(0, 4))
    seed = draw(st.integers(0, 2 ** 32))
    depth = draw(st.sampled_from([4, 8, 12]))
    sig = draw(st.sampled_from([DEFAULT_SIGNATURE, Signature((("s", 1), ("c", 0))),
                                Signature((("*", 2), ("s", 1), ("d", 0)))]))
    rng = random.Random(seed)
    store = TreeStore(depth)
    xs = tuple(f"x{i}" for i in range(n))
    ys = tuple(f"y{i}" for i in range(m))
    leaves = [("l", x) for x in xs] + [("r", y) for y in ys]
    bodies = {}
    for x in xs:
        if ys and rng.random() < 0.15:
            bodies[x] = store.var(("r", rng.choice(ys)))
        else:
            bodies[x] = store.random_tree(rng, sig, lambda: rng.choice(leaves), 3, op_rooted=True)
    return EquationMorphism(xs, ys, bodies, store)


@settings(max_examples=150, deadline=None)
@given(systems())
def test_random_guarded_systems(e):
    sol = solve(e)
    assert check_solution(e, sol)
    assert solve_by_iteration(e) == sol


# -- the category view ---------------------------------------------------------

def sigma_loop(depth):
    cat = TreeCategory(Signature((("s", 1), ("c", 0))), depth)
    st_ = cat.store
    x, y = Vars(("x",)), Vars(())
    f = KMor(Prod(Later(x), y), x, lambda v: st_.var(("l", st_.op("s", [st_.var(v)]))))
    return cat, f


def test_guarded_leaf_flattens_to_its_tree():
    cat, f = sigma_loop(6)
    body, factor = guardedness_factor(cat.store, f.at)
    assert cat.store.show(body("x")) == "s(l.x)"
    assert factor("x")[0] == "guarded"


def test_category_dagger_of_unary_loop():
    cat, f = sigma_loop(4)
    assert cat.store.show(cat.dagger(f).at("x")) == "s(s(s(□)))"


def test_parameter_leaf_factors_through_the_right_summand():
    cat = TreeCategory(DEFAULT_SIGNATURE, 4)
    st_ = cat.store
    x, y = Vars(("x",)), Vars(("y",))
    f = KMor(Prod(Later(x), y), x, lambda v: st_.var(("r", "y")))
    _, factor = guardedness_factor(st_, f.at)
    assert factor("x") == ("param", "y")
    assert cat.dagger(f).at("x") == st_.var("y")


def test_category_dagger_matches_solver_on_flattened_system():
    cat = TreeCategory(DEFAULT_SIGNATURE, 8)
    st_ = cat.store
    x, y = Vars(("x1", "x2")), Vars(("y1", "y2"))
    g1 = st_.op("*", [st_.var("x2"), st_.var("x1")])
    g2 = st_.op("*", [st_.var("x1"), st_.op("c")])
    table = {
        "x1": st_.op("*", [st_.var(("l", g1)), st_.var(("r", "y1"))]),
        "x2": st_.op("*", [st_.op("*", [st_.var(("l", g2)), st_.var(("r", "y2"))]), st_.op("c")]),
    }
    f = KMor(Prod(Later(x), y), x, table.__getitem__)
    body, _ = guardedness_factor(st_, f.at)
    e = EquationMorphism(x.names, y.names, {v: body(v) for v in x.names}, st_)
    sol = solve(e)
    d = cat.dagger(f)
    assert all(d.at(v) == sol[v] for v in x.names)
    assert check_solution(e, sol)


def test_truncation_marker_is_shared():
    store = TreeStore(2)
    t = store.op("*", [store.op("*", [store.op("c"), store.op("c")]), store.op("c")])
    assert store.truncate(t) == store.op("*", [CUT, store.op("c")])

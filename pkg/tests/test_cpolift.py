import random

from guardlab.core import Later, NoMorphismError, Prod, Unit, check_guarded_square, enumerate_solutions
from guardlab.cpolift import BOT, LiftCategory, PointedIdCategory, Up, check_lift_double_dagger, two_chain_instance
from guardlab.laws import _uniform_premise
from guardlab.posets import FinPoset, chain


def test_lift_of_two_chain():
    cat = LiftCategory()
    lx = Later(chain(2))
    assert cat.carrier(lx) == ((BOT, Up(0), Up(1)),)
    assert cat.le(lx) == frozenset({(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)})


def test_lift_of_empty_poset_is_a_point():
    cat = LiftCategory()
    assert cat.carrier(Later(FinPoset.from_relation((), []))) == ((BOT,),)


def test_lifted_map_keeps_bottom():
    cat = LiftCategory()
    x = chain(3)
    f = cat.morphism(x, x, {0: 1, 1: 2, 2: 2})
    t = cat.table(cat.delay_mor(f))[0]
    assert t[BOT] == BOT
    assert all(t[Up(i)] == Up(f.comps[0][i]) for i in range(3))


def test_two_chain_has_two_solutions_and_least_is_zero():
    cat, f = two_chain_instance()
    sols = enumerate_solutions(cat, f)
    assert sorted(cat.table(s)[0][()] for s in sols) == [0, 1]
    assert all(check_guarded_square(cat, f, s) for s in sols)
    assert cat.table(cat.dagger(f))[0] == {(): 0}
    s, iterates = cat.kleene(f)
    assert cat.table(s)[0] == {(): Up(0)}
    assert len(iterates) == 2


def test_constant_map_gives_constant_dagger():
    cat = LiftCategory()
    x, y = chain(3), chain(2)
    f = cat.morphism(Prod(Later(x), y), x, {e: 2 for e in cat.carrier(Prod(Later(x), y))[0]})
    assert set(cat.table(cat.dagger(f))[0].values()) == {2}


def test_dagger_is_least_solution(rng):
    cat = LiftCategory()
    checked = 0
    for _ in range(150):
        x = cat.random_poset_obj(rng)
        y = rng.choice([Unit(), chain(1), chain(2), FinPoset.from_relation((0, 1), [])])
        try:
            f = cat.random_mor(Prod(Later(x), y), x, rng)
        except NoMorphismError:
            continue
        sols = enumerate_solutions(cat, f)
        d = cat.dagger(f)
        assert d in sols
        assert all(cat.pointwise_le(d, s) for s in sols)
        checked += 1
    assert checked >= 100


def test_double_dagger_on_constant_and_two_chain_variant():
    cat = LiftCategory()
    x = chain(2)
    lx = Later(x)
    dom = Prod(lx, Prod(lx, Unit()))
    const = cat.morphism(dom, x, {e: 1 for e in cat.carrier(dom)[0]})
    assert check_lift_double_dagger(cat, const).passed
    # the two-chain map, ignoring its second delayed argument
    table = {(a, (b, ())): (0 if a in (BOT, Up(0)) else 1) for a, (b, _) in cat.carrier(dom)[0]}
    f = cat.morphism(dom, x, table)
    v = check_lift_double_dagger(cat, f)
    assert v.passed
    assert cat.table(cat.dagger(cat.dagger(f)))[0] == {(): 0}


def test_lifting_does_not_preserve_products():
    cat = LiftCategory()
    assert not cat.preserves_product(Unit(), Unit())
    assert not cat.preserves_product(chain(2), chain(1))


def test_uniform_generator_viability():
    cat = LiftCategory()
    valid = 0
    for i in range(100):
        rng = random.Random(f"viability:{i}")
        x, y, x2 = (cat.random_object(rng), cat.random_object(rng, "param"),
                    cat.random_object(rng))
        try:
            f, g, h = cat.uniform_instance(rng, x, y, x2_obj=x2)
        except Exception:
            continue
        if _uniform_premise(cat, {"f": f, "g": g, "h": h}):
            valid += 1
    assert valid >= 30


def test_identity_delay_model_takes_least_fixpoints():
    cat = PointedIdCategory()
    x = FinPoset.from_relation((-1, 0, 1), [(-1, 0), (-1, 1)])
    f = cat.morphism(Prod(x, Unit()), x, {(-1, ()): -1, (0, ()): 0, (1, ()): 1})
    assert cat.table(cat.dagger(f))[0] == {(): -1}
    assert len(enumerate_solutions(cat, f)) == 3

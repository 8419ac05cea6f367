import random
from collections import Counter

import pytest

from guardlab.core import InvalidMorphism, Later, NoMorphismError, Prod, Unit, enumerate_solutions
from guardlab.posets import antichain, chain, default_stage_posets
from guardlab.presheaf import (
    PresheafCategory,
    PresheafError,
    Sheaf,
    check_weak_model,
    load_presheaf,
    omega_truncation,
)


def swap_chain():
    """{a, b} at stages 0 < 1 < 2 with every one-step restriction swapping a and b."""
    doc = {
        "poset": {"elems": [0, 1, 2], "leq": [[0, 1], [1, 2]]},
        "sheaf": {"at": {"0": ["a", "b"], "1": ["a", "b"], "2": ["a", "b"]},
                  "restrict": {"1": {"0": {"a": "b", "b": "a"}},
                               "2": {"1": {"a": "b", "b": "a"}}}},
    }
    return load_presheaf(doc, "S")


# -- the delay ----------------------------------------------------------------------

def test_later_of_constant_on_three_chain():
    cat = omega_truncation(3)
    x = cat.constant("ab")
    assert cat.counts(Later(x)) == (1, 2, 2)
    assert cat.carrier(Later(x))[0] == ((),)


def test_later_is_empty_above_an_empty_stage():
    cat = PresheafCategory(chain(2))
    x = Sheaf(((), ("a",)), (((1, 0), ()),))
    assert cat.counts(Later(x)) == (1, 0)


def test_later_on_antichain_is_terminal_everywhere():
    cat = PresheafCategory(antichain(2))
    x = cat.constant("abc")
    assert cat.counts(Later(x)) == (1, 1)


def test_point_sends_an_element_to_its_restrictions():
    cat = PresheafCategory(chain(2))
    x = cat.constant("ab")
    p = cat.table(cat.point(x))
    assert p[0] == {"a": (), "b": ()}
    assert p[1] == {"a": ("a",), "b": ("b",)}


def test_point_is_natural(rng):
    for poset in default_stage_posets():
        cat = PresheafCategory(poset)
        for _ in range(10):
            a, b = cat.random_sheaf(rng), cat.random_sheaf(rng)
            try:
                h = cat.random_mor(a, b, rng)
            except NoMorphismError:
                continue
            lhs = cat.compose(h, cat.point(b))
            rhs = cat.compose(cat.point(a), cat.delay_mor(h))
            assert cat.mor_equal(lhs, rhs)


# -- the dagger ---------------------------------------------------------------------

def test_literal_identity_restriction_swap_is_not_natural():
    cat = omega_truncation(3)
    x = cat.constant("ab")
    dom = Prod(Later(x), Unit())
    table = {0: {((), ()): "a"},
             1: {(("a",), ()): "b", (("b",), ()): "a"},
             2: {(("a", "a"), ()): "b", (("b", "b"), ()): "a"}}
    with pytest.raises(InvalidMorphism):
        cat.morphism(dom, x, table)


def test_stage_recurrence_on_alternating_restrictions():
    cat, x = swap_chain()
    dom = Prod(Later(x), Unit())
    fams = cat.carrier(Later(x))
    table = {0: {((), ()): "a"},
             1: {(fam, ()): "b" for fam in fams[1]},
             2: {(fam, ()): "a" for fam in fams[2]}}
    f = cat.morphism(dom, x, table)
    d = cat.table(cat.dagger(f))
    assert [d[s][()] for s in range(3)] == ["a", "b", "a"]
    assert enumerate_solutions(cat, f) == [cat.dagger(f)]


def test_dagger_into_terminal_is_bang():
    cat = omega_truncation(3)
    y = cat.constant("ab")
    f = cat.bang(Prod(Later(Unit()), y))
    assert cat.mor_equal(cat.dagger(f), cat.bang(y))


def test_dagger_is_the_only_solution(rng):
    seen = 0
    for i in range(60):
        poset = [chain(1), chain(2), chain(3), antichain(2)][i % 4]
        cat = PresheafCategory(poset, max_set=3)
        x, y = cat.random_sheaf(rng), cat.random_sheaf(rng, max_set=2)
        try:
            f = cat.random_mor(Prod(Later(x), y), x, rng)
        except NoMorphismError:
            continue
        sols = enumerate_solutions(cat, f)
        assert sols == [cat.dagger(f)]
        seen += 1
    assert seen >= 40


# -- products -------------------------------------------------------------------------

def test_later_preserves_products(rng):
    for poset in default_stage_posets():
        cat = PresheafCategory(poset)
        assert check_weak_model(cat, Unit(), Unit())
        for _ in range(5):
            assert check_weak_model(cat, cat.random_sheaf(rng), cat.random_sheaf(rng))


def test_canonical_bijection_tables():
    cat = PresheafCategory(chain(2))
    a, c = cat.constant("ab"), cat.constant("c")
    can = cat.table(cat.canonical(a, c))
    assert can[1] == {(("a", "c"),): (("a",), ("c",)), (("b", "c"),): (("b",), ("c",))}
    assert can[0] == {(): ((), ())}


# -- random morphisms -----------------------------------------------------------------

def test_unique_morphism_into_singletons():
    cat = PresheafCategory(chain(3))
    x, one = cat.constant("abc"), cat.constant("z")
    outs = {cat.random_mor(x, one, random.Random(s)).comps for s in range(5)}
    assert len(outs) == 1


def test_random_mor_is_deterministic():
    cat = PresheafCategory(chain(3))
    x, y = cat.constant("ab"), cat.constant("abc")
    a = cat.random_mor(Prod(Later(x), y), y, random.Random(9))
    b = cat.random_mor(Prod(Later(x), y), y, random.Random(9))
    assert a == b


def test_random_mor_covers_small_hom_set():
    cat = PresheafCategory(chain(2))
    x = cat.constant("ab")
    homs = cat.hom_enumerate(x, x)
    r = random.Random(0)
    counts = Counter(cat.random_mor(x, x, r).comps for _ in range(1000))
    assert set(counts) == {h.comps for h in homs}


def test_empty_hom_set_is_reported():
    cat = PresheafCategory(chain(1))
    with pytest.raises(NoMorphismError):
        cat.random_mor(cat.constant("a"), Sheaf(((),), ()), random.Random(0))


def test_large_domain_falls_back_to_search():
    cat = PresheafCategory(chain(4))
    x = cat.constant("abc")
    f = cat.random_mor(Prod(Prod(x, x), x), x, random.Random(3))
    assert cat.is_morphism(f)


# -- literals ---------------------------------------------------------------------------

def test_missing_restrictions_are_derived():
    cat, x = swap_chain()
    assert cat.restriction(x, 2, 0) == (0, 1)


def test_non_functorial_literal_is_rejected():
    doc = {
        "poset": {"elems": ["u", "v", "w"], "leq": [["u", "v"], ["v", "w"], ["u", "w"]]},
        "sheaf": {"at": {"u": ["a", "b"], "v": ["a", "b"], "w": ["a", "b"]},
                  "restrict": {"v": {"u": {"a": "a", "b": "b"}},
                               "w": {"v": {"a": "a", "b": "b"}, "u": {"a": "b", "b": "a"}}}},
    }
    with pytest.raises(PresheafError, match="not functorial"):
        load_presheaf(doc)


def test_restriction_against_the_order_is_rejected():
    doc = {"poset": {"elems": [0, 1], "leq": [[0, 1]]},
           "sheaf": {"at": {"0": ["a"], "1": ["a"]}, "restrict": {"0": {"1": {"a": "a"}}}}}
    with pytest.raises(PresheafError):
        load_presheaf(doc)

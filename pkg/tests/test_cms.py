import pytest

from guardlab.cms import UltrametricCategory, Words
from guardlab.core import InvalidMorphism, Later, NoMorphismError, Prod, Unit, enumerate_solutions


def prepend_one():
    cat = UltrametricCategory(max_depth=3)
    x = Words(2, 3)
    dom = Prod(Later(x), Unit())
    f = cat.morphism(dom, x, {(w, ()): (1,) + w[:2] for w in cat.carrier(x)[0]})
    return cat, x, f


def test_prepend_iterates_and_fixpoint():
    cat, x, f = prepend_one()
    start = cat.morphism(Unit(), x, {(): (0, 0, 0)})
    words = [cat.carrier(x)[0][m[0]] for m in cat.banach(f, start)]
    assert words == [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)]
    assert cat.table(cat.dagger(f))[0] == {(): (1, 1, 1)}
    assert enumerate_solutions(cat, f) == [cat.dagger(f)]


def test_constant_map():
    cat = UltrametricCategory()
    x = Words(2, 2)
    y = Words(2, 1)
    dom = Prod(Later(x), y)
    f = cat.morphism(dom, x, {e: (0, 1) for e in cat.carrier(dom)[0]})
    assert set(cat.table(cat.dagger(f))[0].values()) == {(0, 1)}


def test_identity_out_of_later_is_not_a_morphism():
    cat = UltrametricCategory()
    x = Words(2, 2)
    with pytest.raises(InvalidMorphism):
        cat.morphism(Later(x), x, {w: w for w in cat.carrier(x)[0]})


def test_later_halves_distances():
    cat = UltrametricCategory()
    x = Words(2, 3)
    u, v = 0, 3  # 000 and 011 first differ at index 1
    assert cat.distance(x, u, v) == 0.5
    assert cat.distance(Later(x), u, v) == 0.25


def test_random_maps_are_nonexpansive_and_have_unique_start_independent_fixpoints(rng):
    cat = UltrametricCategory()
    done = 0
    for _ in range(80):
        x, y = cat.random_object(rng), cat.random_object(rng, "param")
        try:
            f = cat.random_mor(Prod(Later(x), y), x, rng)
        except NoMorphismError:
            continue
        assert cat.is_nonexpansive(f)
        d = cat.dagger(f)
        nx, ny = cat.counts(x)[0], cat.counts(y)[0]
        if nx and ny:
            other = cat.random_mor(y, x, rng)
            assert cat.dagger(f, start=other) == d
        if nx ** ny <= 4096:
            assert enumerate_solutions(cat, f) == [d]
        done += 1
    assert done >= 60

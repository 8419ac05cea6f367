import json
import random

import pytest

from guardlab.citm import KMor, _demand_solver, _memoize, guardedness_factor
from guardlab.core import FAIL, NOT_APPLICABLE, PASS, REPORT_ONLY, LawReport, Later, Prod, Unit, WithDagger
from guardlab.cpolift import LiftCategory
from guardlab.laws import (
    GROUPS,
    LAWS,
    Model,
    check_bekic,
    check_law,
    dagger_from_trace,
    derive_point,
    perturbed,
    resolve_laws,
    run_law,
    trace_from_dagger,
)
from guardlab.models import build_models, parse_sizes
from guardlab.posets import chain
from guardlab.presheaf import PresheafCategory
from guardlab.tabulated import TabMor

MODELS = {m.name: m for name in ("presheaf", "cpolift", "cms", "citm") for m in build_models(name)}


# -- selection ------------------------------------------------------------------------

def test_groups_expand_in_order():
    assert resolve_laws("conway,U") == ["FIX", "P", "C", "DD", "U"]
    assert resolve_laws("trace") == ["V1", "V2", "S", "Y", "Lt", "Rt", "Sl"]
    assert resolve_laws(None) == list(LAWS)


def test_unknown_law_is_rejected():
    with pytest.raises(KeyError):
        resolve_laws("conway,nonsense")


def test_size_parsing():
    assert parse_sizes("set=2,poset=chain3") == {"set": 2, "poset": "chain3"}
    with pytest.raises(ValueError):
        parse_sizes("set")
    with pytest.raises(ValueError):
        build_models("cms", {"colour": 3})


# -- every law on every model (the full-size runs live in the acceptance module) ----------

@pytest.mark.parametrize("model", sorted(MODELS))
@pytest.mark.parametrize("law", list(LAWS))
def test_law_holds(model, law):
    r = run_law(MODELS[model], law, 12, 5)
    assert r.status != FAIL, json.dumps(r.witnesses[:1], ensure_ascii=False)[:2000]
    if r.status != NOT_APPLICABLE:
        assert r.trials == 12


def test_applicability_on_lift():
    lift = MODELS["cpolift"]
    assert run_law(lift, "D1", 5, 0).status == NOT_APPLICABLE
    assert run_law(lift, "D2", 5, 0).status == NOT_APPLICABLE
    assert run_law(lift, "D", 5, 0).status == REPORT_ONLY
    assert run_law(MODELS["presheaf"], "D2", 5, 0).status == PASS


def test_acceptance_rate_note():
    r = LawReport("m", "U", 0, trials=1, discarded=99).finalize()
    assert any("under-tested" in n for n in r.notes)


# -- broken daggers are caught ----------------------------------------------------------

def presheaf_shifted(c):
    """Returns the true dagger except it rotates values on one stage when possible."""
    def dagger(f):
        d = c.dagger(f)
        comps = list(d.comps)
        n = c.counts(d.cod)
        for s in reversed(range(len(comps))):
            if n[s] > 1 and comps[s]:
                comps[s] = tuple((v + 1) % n[s] for v in comps[s])
                break
        return TabMor(d.dom, d.cod, tuple(comps))
    return WithDagger(c, dagger, "presheaf-shifted")


def test_presheaf_broken_dagger_fails_fix():
    m = Model("presheaf-shifted", [presheaf_shifted(c) for c in MODELS["presheaf"].cats])
    r = run_law(m, "FIX", 40, 1)
    assert r.status == FAIL and r.failures > 5
    w = r.witnesses[0]
    assert {"equation", "instance", "lhs", "rhs", "trial", "category"} <= set(w)


def test_lift_greatest_solution_breaks_a_law():
    base = LiftCategory()

    def greatest(f, sols):
        for s in sols:
            if all(base.pointwise_le(o, s) for o in sols):
                return s
        return sols[-1]

    m = Model("lift-greatest", [perturbed(base, greatest)])
    statuses = {law: run_law(m, law, 60, 2).status for law in ("FIX", "P", "C", "DD", "U")}
    assert statuses["FIX"] == PASS
    assert FAIL in statuses.values()


def test_cms_unconverged_iteration_fails_fix():
    def early(c):
        def dagger(f):
            x, y = c.fix_shape(f)
            iterates = c.banach(f)
            return TabMor(y, x, (iterates[min(1, len(iterates) - 1)],))
        return WithDagger(c, dagger, "cms-early")

    m = Model("cms-early", [early(c) for c in MODELS["cms"].cats])
    assert run_law(m, "FIX", 60, 3).status == FAIL


def test_citm_shallow_unfolding_fails_fix():
    def shallow(c):
        def dagger(f):
            x, y = c.fix_shape(f)
            body, _ = guardedness_factor(c.store, f.at)
            unfold = _demand_solver(c.store, _memoize(body)).unfold
            return KMor(y, x, lambda v: unfold(v, c.depth - 2))
        return WithDagger(c, dagger, "citm-shallow")
    m = Model("citm-shallow", [shallow(c) for c in MODELS["citm@8"].cats])
    assert run_law(m, "FIX", 40, 4).status == FAIL


def test_failing_witness_replays_identically():
    m = Model("presheaf-shifted", [presheaf_shifted(c) for c in MODELS["presheaf"].cats])
    a = json.dumps(run_law(m, "FIX", 20, 9).to_json(), sort_keys=True, ensure_ascii=False)
    b = json.dumps(run_law(m, "FIX", 20, 9).to_json(), sort_keys=True, ensure_ascii=False)
    assert a == b


# -- small exact cases -------------------------------------------------------------------

def test_parameter_law_with_identity_is_literal():
    c = PresheafCategory(chain(2))
    x, y = c.constant("ab"), c.constant("xy")
    f = c.random_mor(Prod(Later(x), y), x, random.Random(1))
    v = check_law(c, "P", {"f": f, "h": c.identity(y)})
    assert v.passed


def test_tightening_with_identity():
    c = PresheafCategory(chain(3))
    x, a, b = c.constant("ab"), c.constant("p"), c.constant("uv")
    f = c.random_mor(Prod(Later(x), a), Prod(x, b), random.Random(2))
    assert check_law(c, "Lt", {"f": f, "g": c.identity(a)}).passed


def test_yanking_gives_the_point():
    for name in ("presheaf", "cpolift", "cms"):
        c = MODELS[name].cats[-1]
        rng = random.Random(0)
        for _ in range(5):
            x = c.random_object(rng)
            lx = c.delay_obj(x)
            assert c.mor_equal(trace_from_dagger(c, c.swap(lx, x)), c.point(x))


def test_bekic_on_terminal_components():
    c = PresheafCategory(chain(2))
    a = c.constant("ab")
    one = Unit()
    dom = Prod(Later(one), Prod(Later(one), a))
    assert check_bekic(c, c.bang(dom), c.bang(dom)).passed


def test_dagger_from_trace_when_f_ignores_the_delay():
    c = PresheafCategory(chain(3))
    x, a = c.constant("ab"), c.constant("pq")
    g = c.random_mor(a, x, random.Random(4))
    f = c.compose(c.proj_right(Later(x), a), g)
    assert c.mor_equal(dagger_from_trace(c, f), g)
    assert c.mor_equal(c.dagger(f), g)


def test_derived_point_on_two_chain_is_the_embedding():
    c = LiftCategory()
    x = chain(2)
    assert c.mor_equal(derive_point(c, x), c.point(x))
    assert c.table(derive_point(c, x))[0] == {0: c.carrier(Later(x))[0][1], 1: c.carrier(Later(x))[0][2]}


def test_groups_cover_every_law():
    covered = {n for g, names in GROUPS.items() if g != "all" for n in names}
    assert covered == set(LAWS)

import json

import pytest

from guardlab.cpolift import two_chain_instance
from guardlab.search import NOTHING_FOUND, TARGETS, fixpoint_solutions, run_draw, search_counterexample


@pytest.mark.parametrize("target", sorted(TARGETS))
def test_zero_budget_has_no_findings(target):
    r = search_counterexample(target, 0, 3)
    assert r["findings"] == [] and r["draws"] == {}
    assert r["summary"] == NOTHING_FOUND


@pytest.mark.parametrize("target", sorted(TARGETS))
def test_least_dagger_finds_nothing(target):
    r = search_counterexample(target, 40, 3, perturb=False)
    assert r["findings"] == []
    assert r["draws"].get("scored", 0) == 40


@pytest.mark.parametrize("target", sorted(TARGETS))
def test_search_is_deterministic(target):
    a = json.dumps(search_counterexample(target, 30, 11), sort_keys=True, ensure_ascii=False)
    b = json.dumps(search_counterexample(target, 30, 11), sort_keys=True, ensure_ascii=False)
    assert a == b


def test_variants_really_move_away_from_least():
    r = search_counterexample("DD-in-lift-variants", 30, 5)
    assert r["non_least_choices"] > 0
    assert sum(r["draws"].values()) == 30


def test_findings_replay_from_their_record():
    r = search_counterexample("D2-from-D1", 60, 1)
    assert r["findings"], "this seed is known to yield a sampled-validation candidate"
    for f in r["findings"]:
        again = run_draw(f["replay"]["target"], f["replay"]["seed"], f["replay"]["draw"],
                         f["replay"]["perturb"])
        assert again["status"] == "violation"
        assert again["witness"] == f["witness"]


def test_never_claims_resolution():
    for target in TARGETS:
        r = search_counterexample(target, 20, 2)
        assert "proved" not in r["summary"] and "resolved" not in r["summary"]


def test_fixpoint_solutions_on_two_chain():
    cat, f = two_chain_instance()
    sols = fixpoint_solutions(cat, f)
    assert [cat.table(s)[0][()] for s in sols] == [0, 1]


def test_unknown_target():
    with pytest.raises(KeyError):
        search_counterexample("nope", 1, 0)

"""Randomized counterexample search for laws not known to follow from others.

Each draw builds a dagger operator on a small pointed-poset model that picks,
for some inputs, a solution other than the least one.  The choice is a pure
function of the draw and the input table, so the operator is well defined.
The variant is first validated on sampled instances of the laws it is meant
to satisfy; only then is the target law scored.  Validation is sampled, so a
finding is a candidate to inspect, never a settled answer.
"""

from __future__ import annotations

import hashlib
import random
from itertools import product

from .core import GenerationFailure, NoMorphismError, WithDagger
from .cpolift import LiftCategory, PointedIdCategory
from .laws import LAWS, MAX_ATTEMPTS, Gen, verdict_from_sides
from .tabulated import TabMor

TARGETS = {
    # target: (model factory, laws validated first, law scored)
    "DD-in-lift-variants": (LiftCategory, ("FIX", "P", "C"), "DD"),
    "D2-from-Conway": (PointedIdCategory, ("FIX", "P", "C", "DD"), "D2"),
    "D2-from-D1": (PointedIdCategory, ("FIX", "P", "C", "D1"), "D2"),
}

VALIDATION_SAMPLES = 8
SOLUTION_CAP = 256
NOTHING_FOUND = "no counterexample found in budget"


def fixpoint_solutions(c, f, cap: int = SOLUTION_CAP) -> list:
    """Monotone solutions of the fixpoint square, found value by value.

    For one-stage poset models each ``s(y)`` must be a fixed point of
    ``x ↦ f(p x, y)``; candidate combinations are then filtered for
    monotonicity.  Returns ``None`` when more than ``cap`` combinations exist.
    """
    x, y = c.fix_shape(f)
    nx, ny = c.counts(x)[0], c.counts(y)[0]
    pt = c.point(x).comps[0]
    table = f.comps[0]
    per = [[v for v in range(nx) if table[pt[v] * ny + j] == v] for j in range(ny)]
    total = 1
    for options in per:
        total *= len(options)
    if total > cap:
        return None
    out = []
    for combo in product(*per):
        s = TabMor(y, x, (tuple(combo),))
        if c.is_morphism(s):
            out.append(s)
    return out


def _digest(*parts) -> int:
    return int(hashlib.sha256(repr(parts).encode()).hexdigest(), 16)


def perturbed_dagger(c, salt):
    """A dagger on ``c`` choosing a non-least solution for about half the inputs."""
    stats = {"calls": 0, "moved": 0}

    def dagger(f):
        stats["calls"] += 1
        least = c.dagger(f)
        h = _digest(salt, str(f.dom), str(f.cod), f.comps)
        if h % 2 == 0:
            return least
        sols = fixpoint_solutions(c, f)
        if not sols:
            return least
        pick = sols[(h // 2) % len(sols)]
        if pick.comps != least.comps:
            stats["moved"] += 1
        return pick

    return WithDagger(c, dagger, f"{c.name}~variant{salt}"), stats


def _instance(cat, law, rng):
    g = Gen(cat, rng)
    for _ in range(MAX_ATTEMPTS):
        try:
            return law.gen(g)
        except (GenerationFailure, NoMorphismError):
            continue
    return None


def _score(cat, law_name, rng, seed, draw):
    law = LAWS[law_name]
    inst = _instance(cat, law, rng)
    if inst is None:
        return None
    desc = {k: cat.describe(m) for k, m in inst.items()}
    return verdict_from_sides(cat, law_name, seed, law.sides(cat, inst), desc, {"draw": draw})


def run_draw(target: str, seed: int, draw: int, perturb: bool = True) -> dict:
    """One draw of the search; replaying the same arguments repeats it exactly."""
    factory, premises, goal = TARGETS[target]
    base = factory()
    rng = random.Random(f"search:{target}:{seed}:{draw}")
    if perturb:
        cat, stats = perturbed_dagger(base, f"{seed}:{draw}")
    else:
        cat, stats = base, {"calls": 0, "moved": 0}
    out = {"draw": draw, "status": "scored", "witness": None}
    if perturb:
        for name in premises:
            for _ in range(VALIDATION_SAMPLES):
                v = _score(cat, name, rng, seed, draw)
                if v is not None and v.failures:
                    out["status"] = f"rejected: violates {name}"
                    out["moved"] = stats["moved"]
                    return out
    v = _score(cat, goal, rng, seed, draw)
    out["moved"] = stats["moved"]
    if v is None:
        out["status"] = "no instance"
    elif v.failures:
        out["status"] = "violation"
        out["witness"] = v.witness
    return out


def search_counterexample(target: str, budget: int, seed: int, perturb: bool = True) -> dict:
    """Run ``budget`` draws against ``target`` and collect candidate violations."""
    if target not in TARGETS:
        raise KeyError(f"unknown search target {target!r}; choose from {', '.join(TARGETS)}")
    if budget < 0:
        raise ValueError("budget must be non-negative")
    factory, premises, goal = TARGETS[target]
    findings, tally = [], {}
    moved = 0
    for draw in range(budget):
        res = run_draw(target, seed, draw, perturb)
        tally[res["status"]] = tally.get(res["status"], 0) + 1
        moved += res["moved"]
        if res["status"] == "violation":
            findings.append({
                "draw": draw,
                "replay": {"target": target, "seed": seed, "draw": draw, "perturb": perturb},
                "witness": res["witness"],
            })
    return {
        "target": target,
        "model": factory.name,
        "dagger": "perturbed" if perturb else "least",
        "validated_laws": list(premises) if perturb else [],
        "scored_law": goal,
        "budget": budget,
        "seed": seed,
        "draws": tally,
        "non_least_choices": moved,
        "findings": findings,
        "summary": (NOTHING_FOUND if not findings else
                    f"{len(findings)} candidate violation(s); validation was sampled, "
                    "so each needs independent confirmation"),
    }

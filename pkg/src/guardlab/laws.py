"""The law harness: every identity as an executable check over a model.

Each law is a pair of functions.  ``gen`` draws an instance (a dict of
morphisms) from a seeded generator; ``sides`` evaluates the instance to a
list of ``(label, lhs, rhs)`` morphism pairs that must be equal.  Running a
law for ``n`` trials aggregates the verdicts into a :class:`LawReport`.

Composition in the code below follows :meth:`GuardedCategory.seq`
(diagrammatic order), so ``c.seq(a, b, f)`` reads ``f ∘ b ∘ a``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .core import (
    FAIL,
    NOT_APPLICABLE,
    PASS,
    GenerationFailure,
    GuardError,
    LawReport,
    LawVerdict,
    NoMorphismError,
    NotApplicable,
    Prod,
    UnsupportedOracle,
    WithDagger,
    fixpoint_rhs,
)

MAX_ATTEMPTS = 40


# -- constructions ---------------------------------------------------------------

def dagger_of(c, f):
    return c.dagger(f)


def trace_from_dagger(c, f, dagger: Callable | None = None):
    """``π_r ∘ f ∘ (p_X × A) ∘ ⟨(π_ℓ ∘ f)†, A⟩`` for ``f: ▶X × A → X × B``."""
    dagger = dagger or c.dagger
    x, a, b = c.trace_shape(f)
    s = dagger(c.compose(f, c.proj_left(x, b)))
    return c.seq(c.pair(s, c.identity(a)),
                 c.times(c.point(x), c.identity(a)),
                 f,
                 c.proj_right(x, b))


def dagger_from_trace(c, f, trace: Callable | None = None):
    """``Tr(⟨f, f⟩)`` for ``f: ▶X × A → X``."""
    trace = trace or (lambda g: trace_from_dagger(c, g))
    c.fix_shape(f)
    return trace(c.pair(f, f))


def derive_point(c, x, dagger: Callable | None = None):
    """``q_X = π_ℓ ∘ (▶π_r × X)†: X → ▶X``."""
    dagger = dagger or c.dagger
    lx = c.delay_obj(x)
    fx = c.times(c.delay_mor(c.proj_right(lx, x)), c.identity(x))
    return c.compose(dagger(fx), c.proj_left(lx, x))


def triangle(c, f, g):
    """``f ▷ g: ▶Y × A → Y`` for ``f: ▶X × A → Y`` and ``g: Y × A → X``."""
    lx, a = c.split(f.dom)
    y = f.cod
    ly, la = c.delay_obj(y), c.delay_obj(a)
    return c.seq(
        c.times(c.identity(ly), c.pair(c.point(a), c.identity(a))),
        c.assoc_inv(ly, la, a),
        c.times(c.canonical_inverse(y, a), c.identity(a)),
        c.times(c.delay_mor(g), c.identity(a)),
        f,
    )


def bekic_parts(c, f, g):
    """``(e_L, e_R)`` for ``f: ▶X × ▶Y × A → X`` and ``g: ▶X × ▶Y × A → Y``."""
    x, y = f.cod, g.cod
    lx, rest = c.split(f.dom)
    ly, a = c.split(rest)
    fd = c.dagger(f)                                        # ▶Y × A → X
    e_r = c.compose(c.pair(c.compose(fd, c.point(x)), c.identity(rest)), g)
    er_d = c.dagger(e_r)                                    # A → Y
    inner = c.pair(c.compose(er_d, c.point(y)), c.identity(a))
    e_l = c.compose(c.times(c.identity(lx), inner), f)
    return e_l, e_r


def double_dagger_sides(c, f):
    """``f†† = (f ∘ (Δ × Y))†`` for ``f: ▶X × (▶X × Y) → X``."""
    lx, rest = c.split(f.dom)
    _, y = c.split(rest)
    lhs = c.dagger(c.dagger(f))
    diag = c.compose(c.times(c.diagonal(lx), c.identity(y)), c.assoc(lx, lx, y))
    rhs = c.dagger(c.compose(diag, f))
    return [("DD", lhs, rhs)]


# -- verdicts --------------------------------------------------------------------------

def verdict_from_sides(c, law, seed, sides, instance_desc, extra=None):
    for label, lhs, rhs in sides:
        if not c.mor_equal(lhs, rhs):
            witness = {"equation": label, "instance": instance_desc,
                       "lhs": c.describe(lhs), "rhs": c.describe(rhs)}
            if extra:
                witness.update(extra)
            return LawVerdict(law, c.name, 1, 1, witness, seed)
    return LawVerdict(law, c.name, 1, 0, None, seed)


# -- instance generation ---------------------------------------------------------------

class Gen:
    """Seeded access to random objects and size-bounded random morphisms."""

    def __init__(self, c, rng):
        self.c, self.rng = c, rng

    def obj(self, role="any"):
        return self.c.random_object(self.rng, role)

    def L(self, a):
        return self.c.delay_obj(a)

    def mor(self, a, b):
        limit = getattr(self.c, "max_domain", None)
        if limit is not None and self.c.size(a) > limit:
            raise GenerationFailure(f"domain {a} too large")
        return self.c.random_mor(a, b, self.rng)


def P(a, b):
    return Prod(a, b)


# each law: gen(g) -> instance dict; sides(c, inst) -> [(label, lhs, rhs)]

def _gen_fix(g):
    x, y = g.obj("x"), g.obj("param")
    return {"f": g.mor(P(g.L(x), y), x)}


def _sides_fix(c, i):
    s = c.dagger(i["f"])
    return [("FIX", s, fixpoint_rhs(c, i["f"], s))]


def _gen_param(g):
    inst = _gen_fix(g)
    y = g.c.split(inst["f"].dom)[1]
    inst["h"] = g.mor(g.obj("param"), y)
    return inst


def _sides_param(c, i):
    f, h = i["f"], i["h"]
    lx = c.split(f.dom)[0]
    lhs = c.compose(h, c.dagger(f))
    rhs = c.dagger(c.compose(c.times(c.identity(lx), h), f))
    return [("P", lhs, rhs)]


def _gen_comp(g):
    x, y, z = g.obj("x"), g.obj("param"), g.obj("x")
    return {"f": g.mor(P(g.L(x), y), z), "g": g.mor(z, x)}


def _sides_comp(c, i):
    f, g = i["f"], i["g"]
    _, y = c.split(f.dom)
    lhs = c.dagger(c.compose(f, g))
    inner = c.compose(c.times(c.delay_mor(g), c.identity(y)), f)
    rhs = c.compose(c.dagger(inner), g)
    return [("C", lhs, rhs)]


def _gen_dd(g):
    x, y = g.obj("x"), g.obj("param")
    lx = g.L(x)
    return {"f": g.mor(P(lx, P(lx, y)), x)}


def _sides_dd(c, i):
    return double_dagger_sides(c, i["f"])


def _gen_uniform(g):
    x, y, x2 = g.obj("x"), g.obj("param"), g.obj("x")
    if g.c.size(P(g.L(x), y)) > getattr(g.c, "max_domain", 10 ** 9):
        raise GenerationFailure("domain too large")
    f, gg, h = g.c.uniform_instance(g.rng, x, y, x2_obj=x2)
    return {"f": f, "g": gg, "h": h}


def _uniform_premise(c, i):
    f, g, h = i["f"], i["g"], i["h"]
    _, y = c.split(f.dom)
    return c.mor_equal(c.compose(f, h),
                       c.compose(c.times(c.delay_mor(h), c.identity(y)), g))


def _sides_uniform(c, i):
    return [("U", c.compose(c.dagger(i["f"]), i["h"]), c.dagger(i["g"]))]


def _gen_bekic(g):
    x, y, a = g.obj("x"), g.obj("x"), g.obj("param")
    dom = P(g.L(x), P(g.L(y), a))
    return {"f": g.mor(dom, x), "g": g.mor(dom, y)}


def _sides_bekic(c, i):
    f, g = i["f"], i["g"]
    x, y = f.cod, g.cod
    lx, rest = c.split(f.dom)
    ly, a = c.split(rest)
    e_l, e_r = bekic_parts(c, f, g)
    lhs = c.dagger(c.seq(c.times(c.canonical(x, y), c.identity(a)),
                         c.assoc(lx, ly, a),
                         c.pair(f, g)))
    rhs = c.pair(c.dagger(e_l), c.dagger(e_r))
    e_r_d = c.dagger(e_r)
    el_rhs = c.compose(c.pair(c.compose(e_r_d, c.point(y)), c.identity(a)), c.dagger(f))
    return [("Bekic", lhs, rhs), ("eL", c.dagger(e_l), el_rhs)]


def _gen_bekic_dd(g):
    return _gen_dd(g)


def bekic_dd_chain(c, f):
    """The four stages ``f†† = e_R† = π_r ∘ (⟨f,f⟩ ∘ (can × A))† = (f ∘ (Δ × A))†``."""
    x = f.cod
    lx, rest = c.split(f.dom)
    _, a = c.split(rest)
    _, e_r = bekic_parts(c, f, f)
    can_a = c.compose(c.times(c.canonical(x, x), c.identity(a)), c.assoc(lx, lx, a))
    paired = c.dagger(c.compose(can_a, c.pair(f, f)))
    stage2 = c.compose(paired, c.proj_right(x, x))
    stage3 = c.dagger(c.seq(c.times(c.delay_mor(c.diagonal(x)), c.identity(a)), can_a, f))
    diag = c.compose(c.times(c.diagonal(lx), c.identity(a)), c.assoc(lx, lx, a))
    stage4 = c.dagger(c.compose(diag, f))
    return [c.dagger(c.dagger(f)), c.dagger(e_r), stage2, stage3, stage4]


def _sides_bekic_dd(c, i):
    chain = bekic_dd_chain(c, i["f"])
    return [("f††=(f∘(Δ×A))†", chain[0], chain[-1])]


def _gen_dinat(g):
    x, y, a = g.obj("x"), g.obj("x"), g.obj("param")
    return {"f": g.mor(P(g.L(x), a), y), "g": g.mor(P(g.L(y), a), x)}


def _sides_dinat(c, i):
    f, g = i["f"], i["g"]
    lx, a = c.split(f.dom)
    ly, _ = c.split(g.dom)
    x, y = g.cod, f.cod
    k = c.pair(c.compose(f, c.point(y)), c.proj_right(lx, a))
    lhs = c.dagger(c.compose(k, g))
    h = c.compose(c.pair(c.compose(g, c.point(x)), c.proj_right(ly, a)), f)
    rhs = c.compose(c.pair(c.compose(c.dagger(h), c.point(y)), c.identity(a)), g)
    return [("D", lhs, rhs)]


def _gen_d1(g):
    x, y, a = g.obj("x"), g.obj("x"), g.obj("param")
    return {"f": g.mor(P(g.L(x), a), y), "g": g.mor(P(y, a), x)}


def _sides_d1(c, i):
    f, g = i["f"], i["g"]
    lx, a = c.split(f.dom)
    lhs = c.dagger(c.compose(c.pair(f, c.proj_right(lx, a)), g))
    rhs = c.compose(c.pair(c.dagger(triangle(c, f, g)), c.identity(a)), g)
    return [("D1", lhs, rhs)]


def _gen_d2(g):
    x, y, a = g.obj("x"), g.obj("x"), g.obj("param")
    return {"f": g.mor(P(x, a), y), "g": g.mor(P(g.L(y), a), x)}


def _sides_d2(c, i):
    f, g = i["f"], i["g"]
    ly, a = c.split(g.dom)
    y = f.cod
    lhs = c.dagger(triangle(c, g, f))
    h = c.compose(c.pair(g, c.proj_right(ly, a)), f)
    rhs = c.compose(c.pair(c.compose(c.dagger(h), c.point(y)), c.identity(a)), g)
    return [("D2", lhs, rhs)]


def _gen_point(g):
    x, x2 = g.obj("x"), g.obj("x")
    return {"id": g.c.identity(x), "h": g.mor(x, x2)}


def _sides_point(c, i):
    h = i["h"]
    x, x2 = h.dom, h.cod
    qx, qx2 = derive_point(c, x), derive_point(c, x2)
    return [("q=p", qx, c.point(x)),
            ("q natural", c.compose(qx, c.delay_mor(h)), c.compose(h, qx2))]


# traces ---------------------------------------------------------------------------

def _tr(c, f):
    return trace_from_dagger(c, f)


def _gen_trace(g):
    x, a, b = g.obj("x"), g.obj("param"), g.obj("param")
    return {"f": g.mor(P(g.L(x), a), P(x, b))}


def _gen_v1(g):
    a, b = g.obj("param"), g.obj("param")
    one = g.c.terminal()
    return {"f": g.mor(P(g.L(one), a), P(one, b))}


def _sides_v1(c, i):
    f = i["f"]
    one, a, b = c.trace_shape(f)
    rhs = c.seq(c.pair(c.bang(a), c.identity(a)),
                c.times(c.point(one), c.identity(a)),
                f, c.proj_right(one, b))
    return [("V1", _tr(c, f), rhs)]


def _gen_v2(g):
    x, y, a, b = g.obj("x"), g.obj("x"), g.obj("param"), g.obj("param")
    return {"f": g.mor(P(g.L(x), P(g.L(y), a)), P(x, P(y, b)))}


def _sides_v2(c, i):
    f = i["f"]
    x, rest_cod = c.split(f.cod)
    y, b = c.split(rest_cod)
    lx, rest = c.split(f.dom)
    ly, a = c.split(rest)
    inner = _tr(c, f)                              # ▶Y × A → Y × B
    lhs = _tr(c, inner)
    g = c.seq(c.times(c.canonical(x, y), c.identity(a)),
              c.assoc(lx, ly, a), f, c.assoc_inv(x, y, b))
    return [("V2", lhs, _tr(c, g))]


def _gen_s(g):
    inst = _gen_trace(g)
    inst["idC"] = g.c.identity(g.obj("param"))
    return inst


def _sides_s(c, i):
    f, idc = i["f"], i["idC"]
    x, a, b = c.trace_shape(f)
    cc = idc.dom
    lx = c.delay_obj(x)
    big = c.seq(c.assoc_inv(lx, a, cc), c.times(f, idc), c.assoc(x, b, cc))
    return [("S", _tr(c, big), c.times(_tr(c, f), idc))]


def _gen_y(g):
    return {"id": g.c.identity(g.obj("x"))}


def _sides_y(c, i):
    x = i["id"].dom
    return [("Y", _tr(c, c.swap(c.delay_obj(x), x)), c.point(x))]


def _gen_lt(g):
    inst = _gen_trace(g)
    a = g.c.split(inst["f"].dom)[1]
    inst["g"] = g.mor(g.obj("param"), a)
    return inst


def _sides_lt(c, i):
    f, g = i["f"], i["g"]
    lx = c.split(f.dom)[0]
    lhs = _tr(c, c.compose(c.times(c.identity(lx), g), f))
    return [("Lt", lhs, c.compose(g, _tr(c, f)))]


def _gen_rt(g):
    inst = _gen_trace(g)
    b = g.c.split(inst["f"].cod)[1]
    inst["g"] = g.mor(b, g.obj("param"))
    return inst


def _sides_rt(c, i):
    f, g = i["f"], i["g"]
    x = c.split(f.cod)[0]
    lhs = _tr(c, c.compose(f, c.times(c.identity(x), g)))
    return [("Rt", lhs, c.compose(_tr(c, f), g))]


def _gen_sl(g):
    x, x2, a, b = g.obj("x"), g.obj("x"), g.obj("param"), g.obj("param")
    return {"f": g.mor(P(g.L(x), a), P(x2, b)), "g": g.mor(x2, x)}


def _sides_sl(c, i):
    f, g = i["f"], i["g"]
    _, a = c.split(f.dom)
    _, b = c.split(f.cod)
    lhs = _tr(c, c.compose(f, c.times(g, c.identity(b))))
    rhs = _tr(c, c.compose(c.times(c.delay_mor(g), c.identity(a)), f))
    return [("Sl", lhs, rhs)]


def _gen_tu(g):
    x, a, b, x2 = g.obj("x"), g.obj("param"), g.obj("param"), g.obj("x")
    if g.c.size(P(g.L(x), a)) > getattr(g.c, "max_domain", 10 ** 9):
        raise GenerationFailure("domain too large")
    f, f2, h = g.c.uniform_instance(g.rng, x, a, extra=b, x2_obj=x2)
    return {"f": f, "f'": f2, "h": h}


def _tu_premise(c, i):
    f, f2, h = i["f"], i["f'"], i["h"]
    _, a = c.split(f.dom)
    _, b = c.split(f.cod)
    return c.mor_equal(c.compose(f, c.times(h, c.identity(b))),
                       c.compose(c.times(c.delay_mor(h), c.identity(a)), f2))


def _sides_tu(c, i):
    return [("TU", _tr(c, i["f"]), _tr(c, i["f'"]))]


def _gen_rt_dagger(g):
    return _gen_fix(g)


def _sides_rt_dagger(c, i):
    f = i["f"]
    return [("†_Tr(Tr_†) = †", dagger_from_trace(c, f), c.dagger(f))]


def _sides_rt_trace(c, i):
    f = i["f"]
    derived = lambda k: dagger_from_trace(c, k)  # noqa: E731
    return [("Tr_(†_Tr) = Tr", trace_from_dagger(c, f, derived), _tr(c, f))]


def _sides_fptr(c, i):
    f = i["f"]
    x, a, b = c.trace_shape(f)
    h = _tr(c, c.seq(f, c.proj_left(x, b), c.diagonal(x)))
    rhs = c.seq(c.pair(h, c.identity(a)), c.times(c.point(x), c.identity(a)),
                f, c.proj_right(x, b))
    return [("fptr", _tr(c, f), rhs)]


def _sides_htr(c, i):
    f = i["f"]
    x, a, b = c.trace_shape(f)
    h = c.compose(c.times(c.delay_mor(c.proj_left(x, b)), c.identity(a)), f)
    return [("hTr", _tr(c, f), c.compose(c.dagger(h), c.proj_right(x, b)))]


def _sides_transfer(c, i):
    derived = lambda k: dagger_from_trace(c, k)  # noqa: E731
    return [("U for †_Tr", c.compose(derived(i["f"]), i["h"]), derived(i["g"]))]


# -- registry ------------------------------------------------------------------------

@dataclass(frozen=True)
class Law:
    name: str
    gen: Callable
    sides: Callable
    premise: Callable | None = None
    needs_inverse: bool = False
    dinat: bool = False
    description: str = ""


LAWS = {law.name: law for law in [
    Law("FIX", _gen_fix, _sides_fix, description="f† = f ∘ (p × Y) ∘ ⟨f†, Y⟩"),
    Law("P", _gen_param, _sides_param, description="f† ∘ h = (f ∘ (▶X × h))†"),
    Law("C", _gen_comp, _sides_comp, description="(g ∘ f)† = g ∘ (f ∘ (▶g × Y))†"),
    Law("DD", _gen_dd, _sides_dd, description="f†† = (f ∘ (Δ × Y))†"),
    Law("U", _gen_uniform, _sides_uniform, premise=_uniform_premise,
        description="h ∘ f = g ∘ (▶h × Y) implies h ∘ f† = g†"),
    Law("Bekic", _gen_bekic, _sides_bekic,
        description="(⟨f,g⟩ ∘ (can × A))† = ⟨e_L†, e_R†⟩ and e_L† = f† ∘ ⟨p ∘ e_R†, A⟩"),
    Law("BekicDD", _gen_bekic_dd, _sides_bekic_dd,
        description="f†† = e_R† = π_r ∘ (⟨f,f⟩ ∘ (can × A))† = (f ∘ (Δ × A))†"),
    Law("D", _gen_dinat, _sides_dinat, dinat=True,
        description="(g ∘ ⟨p ∘ f, π_r⟩)† = g ∘ ⟨p ∘ h†, A⟩"),
    Law("D1", _gen_d1, _sides_d1, needs_inverse=True, dinat=True,
        description="(g ∘ ⟨f, π_r⟩)† = g ∘ ⟨(f ▷ g)†, A⟩"),
    Law("D2", _gen_d2, _sides_d2, needs_inverse=True, dinat=True,
        description="(g ▷ f)† = g ∘ ⟨p ∘ h†, A⟩"),
    Law("point", _gen_point, _sides_point,
        description="π_ℓ ∘ (▶π_r × X)† = p_X, natural in X"),
    Law("V1", _gen_v1, _sides_v1, description="Tr¹(f) = f ∘ (p × A)"),
    Law("V2", _gen_v2, _sides_v2, description="Tr^Y(Tr^X(f)) = Tr^{X×Y}(f ∘ (can × A))"),
    Law("S", _gen_s, _sides_s, description="Tr(f × C) = Tr(f) × C"),
    Law("Y", _gen_y, _sides_y, description="Tr(swap) = p"),
    Law("Lt", _gen_lt, _sides_lt, description="Tr(f ∘ (▶X × g)) = Tr(f) ∘ g"),
    Law("Rt", _gen_rt, _sides_rt, description="Tr((X × g) ∘ f) = g ∘ Tr(f)"),
    Law("Sl", _gen_sl, _sides_sl, description="Tr((g × B) ∘ f) = Tr(f ∘ (▶g × A))"),
    Law("TU", _gen_tu, _sides_tu, premise=_tu_premise,
        description="(h × B) ∘ f = f' ∘ (▶h × A) implies Tr(f) = Tr(f')"),
    Law("rt-dagger", _gen_rt_dagger, _sides_rt_dagger, description="dagger from the trace of †"),
    Law("rt-trace", _gen_trace, _sides_rt_trace, description="trace from the dagger of Tr"),
    Law("fptr", _gen_trace, _sides_fptr, description="Tr(f) = π_r ∘ f ∘ (p × A) ∘ ⟨h, A⟩"),
    Law("hTr", _gen_trace, _sides_htr, description="Tr(f) = π_r ∘ (f ∘ (▶π_ℓ × A))†"),
    Law("transfer", _gen_uniform, _sides_transfer, premise=_uniform_premise,
        description="uniformity of the dagger derived from the trace"),
]}

GROUPS = {
    "conway": ["FIX", "P", "C", "DD"],
    "uniformity": ["U"],
    "bekic": ["Bekic", "BekicDD"],
    "dinat": ["D", "D1", "D2"],
    "point": ["point"],
    "trace": ["V1", "V2", "S", "Y", "Lt", "Rt", "Sl"],
    "traceunif": ["TU"],
    "roundtrip": ["rt-dagger", "rt-trace"],
    "lemmas": ["fptr", "hTr"],
    "transfer": ["transfer", "TU"],
}
GROUPS["all"] = [name for name in LAWS]


def resolve_laws(selector: str | None) -> list:
    """Expand a comma-separated list of group and law names, keeping order."""
    if not selector:
        return list(GROUPS["all"])
    out = []
    for item in (s.strip() for s in selector.split(",")):
        if not item:
            continue
        names = GROUPS.get(item) or ([item] if item in LAWS else None)
        if names is None:
            raise KeyError(item)
        out.extend(n for n in names if n not in out)
    return out


# -- running -----------------------------------------------------------------------------

@dataclass
class Model:
    """A named family of categories; trial ``i`` runs on ``cats[i % len(cats)]``."""

    name: str
    cats: list

    @property
    def unique(self) -> bool:
        return all(c.unique for c in self.cats)

    @property
    def product_preserving(self) -> bool:
        return all(c.product_preserving for c in self.cats)


def applicability(model: Model, law: Law) -> tuple:
    """``(applicable, report_only, note)``."""
    if law.needs_inverse and not model.product_preserving:
        return False, False, "▶ does not preserve products here, so can⁻¹ is unavailable"
    if law.dinat and not model.unique:
        return True, True, "no soundness result covers this model; failures are findings"
    return True, False, ""


def trial_rng(seed, law, model, i) -> random.Random:
    return random.Random(f"{seed}:{law}:{model}:{i}")


def run_trial(c, law: Law, seed: int, model_name: str, i: int):
    """One scored trial: returns ``(verdict or None, discarded_count)``."""
    rng = trial_rng(seed, law.name, model_name, i)
    g = Gen(c, rng)
    discarded = 0
    for _ in range(MAX_ATTEMPTS):
        try:
            inst = law.gen(g)
        except (GenerationFailure, NoMorphismError):
            if law.premise is not None:
                discarded += 1
            continue
        if law.premise is not None and not law.premise(c, inst):
            discarded += 1
            continue
        desc = {k: c.describe(m) for k, m in inst.items()}
        extra = {"trial": i, "category": category_label(c)}
        return verdict_from_sides(c, law.name, seed, law.sides(c, inst), desc, extra), discarded
    return None, discarded + (0 if law.premise is not None else 1)


def category_label(c) -> str:
    poset = getattr(c, "poset", None)
    if poset is not None:
        return f"{c.name} over {poset}"
    sig = getattr(c, "sig", None)
    if sig is not None:
        return f"{c.name} with signature {sig}"
    return c.name


def run_law(model: Model, law_name: str, trials: int, seed: int) -> LawReport:
    law = LAWS[law_name]
    report = LawReport(model.name, law_name, seed)
    ok, report_only, note = applicability(model, law)
    if not ok:
        report.status = NOT_APPLICABLE
        report.notes.append(note)
        return report
    if note:
        report.notes.append(note)
    i = 0
    budget = trials * (MAX_ATTEMPTS if law.premise is not None else 4)
    while report.trials < trials and i < budget:
        c = model.cats[i % len(model.cats)]
        try:
            verdict, discarded = run_trial(c, law, seed, model.name, i)
        except NotApplicable as exc:
            report.status = NOT_APPLICABLE
            report.notes.append(str(exc))
            return report
        report.discarded += discarded
        if verdict is not None:
            report.add(verdict)
        i += 1
    if report.trials < trials:
        report.notes.append(f"only {report.trials} of {trials} trials could be generated")
    return report.finalize(report_only)


def run_suite(model: Model, law_names, trials: int, seed: int) -> list:
    return [run_law(model, name, trials, seed) for name in law_names]


def suite_failed(reports) -> bool:
    return any(r.status == FAIL for r in reports)


# -- single-instance entry points ---------------------------------------------------------

def check_law(c, law_name: str, instance: dict, seed: int = 0) -> LawVerdict:
    """Check one explicit instance.  Premise-false uniformity instances are
    returned as a zero-trial verdict (discarded, not counted)."""
    law = LAWS[law_name]
    if law.premise is not None and not law.premise(c, instance):
        return LawVerdict(law_name, c.name, 0, 0, None, seed)
    desc = {k: c.describe(m) for k, m in instance.items()}
    return verdict_from_sides(c, law_name, seed, law.sides(c, instance), desc)


def check_bekic(c, f, g, seed=0) -> LawVerdict:
    return check_law(c, "Bekic", {"f": f, "g": g}, seed)


def check_bekic_implies_dd(c, f, seed=0) -> LawVerdict:
    return check_law(c, "BekicDD", {"f": f}, seed)


def check_dinaturality(c, variant: str, f, g, seed=0) -> LawVerdict:
    if variant not in ("D", "D1", "D2"):
        raise ValueError(variant)
    if LAWS[variant].needs_inverse and not c.product_preserving:
        raise NotApplicable(f"{variant} needs can⁻¹, which {c.name} lacks")
    return check_law(c, variant, {"f": f, "g": g}, seed)


def check_trace_axiom(c, axiom: str, instance: dict, seed=0) -> LawVerdict:
    if axiom not in GROUPS["trace"] + ["TU"]:
        raise ValueError(axiom)
    return check_law(c, axiom, instance, seed)


def check_trace_lemma(c, which: str, f, seed=0) -> LawVerdict:
    if which not in ("fptr", "hTr"):
        raise ValueError(which)
    return check_law(c, which, {"f": f}, seed)


def check_uniform_transfer(c, trials=50, seed=0) -> LawReport:
    return run_law(Model(c.name, [c]), "transfer", trials, seed)


def perturbed(c, choose: Callable, name: str | None = None):
    """``c`` with its dagger replaced by ``choose(f, solutions)``."""
    from .core import enumerate_solutions

    def dagger(f):
        sols = enumerate_solutions(c, f)
        if not sols:
            raise GuardError("no solution to choose from")
        return choose(f, sols)

    return WithDagger(c, dagger, name or f"{c.name}~perturbed")


__all__ = [
    "LAWS", "GROUPS", "Model", "run_law", "run_suite", "resolve_laws", "check_law",
    "trace_from_dagger", "dagger_from_trace", "derive_point", "triangle", "bekic_parts",
    "bekic_dd_chain", "double_dagger_sides", "perturbed", "PASS", "FAIL", "NOT_APPLICABLE",
    "UnsupportedOracle",
]

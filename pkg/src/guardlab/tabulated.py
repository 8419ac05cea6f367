"""Stage-wise finite tables: the engine behind every set-based model.

An object of a tabulated model has a finite carrier at each stage (one stage
for plain sets, posets and metric spaces; one per poset element for
presheaves).  Its structure is a family of binary relations between carrier
elements, and a morphism is a stage-preserving map that preserves every
relation.  Naturality, monotonicity and non-expansiveness are all instances:

* presheaves: the graph of each restriction ``X(w ≥ v)``;
* posets: the order;
* ultrametric spaces: "distance at most 2^-e", one relation per ``e``.

That uniform view lets a single search kernel enumerate hom-sets, sample
random morphisms, and complete partially prescribed tables.
"""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass

from . import kernels
from .core import (
    CompositionError,
    GenerationFailure,
    GuardedCategory,
    InvalidMorphism,
    NoMorphismError,
    NotApplicable,
    Prod,
    ShapeError,
    Unit,
    UnsupportedOracle,
)

UNIFORM_CAP = 4096
HOM_LIMIT = 200_000
STEP_BUDGET = 300_000


@dataclass(frozen=True)
class TabMor:
    """A morphism given by one index table per stage."""

    dom: object
    cod: object
    comps: tuple

    def __str__(self):
        return f"<{self.dom} → {self.cod}>"


@dataclass
class HomProblem:
    n: int
    nc: int
    cands: list
    cons_start: array
    cons_a: array
    cons_m: array
    mats: bytes
    dom_offsets: tuple
    cod_offsets: tuple
    pos: tuple  # flat domain index -> search position


def label_str(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(label_str(e) for e in x) + ")"
    return str(x)


class TabulatedCategory(GuardedCategory):
    stages: tuple = (0,)
    max_domain: int = 400

    def __init__(self):
        self._carriers = {}
        self._indices = {}
        self._homs = {}
        self._pairs = {}
        self._holds = {}

    # carriers ----------------------------------------------------------------
    def carrier(self, a) -> tuple:
        c = self._carriers.get(a)
        if c is None:
            if isinstance(a, Unit):
                c = tuple(((),) for _ in self.stages)
            elif isinstance(a, Prod):
                l, r = self.carrier(a.left), self.carrier(a.right)
                c = tuple(tuple((x, y) for x in ls for y in rs) for ls, rs in zip(l, r))
            else:
                c = self._carrier(a)
            self._carriers[a] = c
        return c

    def _carrier(self, a) -> tuple:
        raise ShapeError(f"{self.name} does not know object {a!r}")

    def counts(self, a) -> tuple:
        return tuple(len(c) for c in self.carrier(a))

    def size(self, a) -> int:
        return sum(self.counts(a))

    def index(self, a) -> tuple:
        idx = self._indices.get(a)
        if idx is None:
            idx = tuple({x: i for i, x in enumerate(c)} for c in self.carrier(a))
            self._indices[a] = idx
        return idx

    def offsets(self, a) -> tuple:
        out, acc = [], 0
        for n in self.counts(a):
            out.append(acc)
            acc += n
        return tuple(out)

    # relational structure (overridden by models) ------------------------------
    def gen_pairs(self, a) -> dict:
        """key -> flat index pairs generating the structure of ``a``."""
        return {}

    def holds(self, b, key) -> set:
        """Flat index pairs of ``b`` related under ``key``."""
        return set()

    def _gen_pairs_cached(self, a):
        p = self._pairs.get(a)
        if p is None:
            p = self.gen_pairs(a)
            self._pairs[a] = p
        return p

    def _holds_cached(self, b, key):
        h = self._holds.get((b, key))
        if h is None:
            h = self.holds(b, key)
            self._holds[(b, key)] = h
        return h

    # primitive arrows ----------------------------------------------------------
    def _mk(self, dom, cod, comps):
        return TabMor(dom, cod, tuple(tuple(c) for c in comps))

    def identity(self, a):
        return TabMor(a, a, tuple(tuple(range(n)) for n in self.counts(a)))

    def compose(self, f, g):
        if f.cod != g.dom:
            raise CompositionError(f.cod, g.dom)
        return TabMor(f.dom, g.cod, tuple(kernels.compose(a, b) for a, b in zip(f.comps, g.comps)))

    def pair(self, f, g):
        if f.dom != g.dom:
            raise CompositionError(f.dom, g.dom)
        nbs = self.counts(g.cod)
        comps = tuple(tuple(x * nb + y for x, y in zip(fc, gc))
                      for fc, gc, nb in zip(f.comps, g.comps, nbs))
        return TabMor(f.dom, Prod(f.cod, g.cod), comps)

    def proj_left(self, a, b):
        comps = tuple(tuple(i // nb for i in range(na * nb))
                      for na, nb in zip(self.counts(a), self.counts(b)))
        return TabMor(Prod(a, b), a, comps)

    def proj_right(self, a, b):
        comps = tuple(tuple(i % nb for i in range(na * nb)) if nb else ()
                      for na, nb in zip(self.counts(a), self.counts(b)))
        return TabMor(Prod(a, b), b, comps)

    def bang(self, a):
        return TabMor(a, Unit(), tuple((0,) * n for n in self.counts(a)))

    def mor_equal(self, f, g) -> bool:
        return f.dom == g.dom and f.cod == g.cod and f.comps == g.comps

    # building from labels --------------------------------------------------------
    def morphism(self, dom, cod, table):
        """Build and validate a morphism from a label table.

        ``table`` is a dict ``label -> label`` for single-stage models, or a
        dict ``stage -> {label: label}`` otherwise.
        """
        cod_idx = self.index(cod)
        comps = []
        for s, (stage, elems) in enumerate(zip(self.stages, self.carrier(dom))):
            flat = len(self.stages) == 1 and not isinstance(table.get(stage), dict)
            part = table if flat else table[stage]
            try:
                comps.append(tuple(cod_idx[s][part[x]] for x in elems))
            except KeyError as exc:
                raise InvalidMorphism(f"table misses or mislabels {exc} at stage {stage}") from None
        f = TabMor(dom, cod, tuple(comps))
        self.check_morphism(f)
        return f

    def table(self, f) -> list:
        """Per-stage label tables of ``f``."""
        dc, cc = self.carrier(f.dom), self.carrier(f.cod)
        return [{dc[s][i]: cc[s][j] for i, j in enumerate(comp)} for s, comp in enumerate(f.comps)]

    def describe(self, f) -> dict:
        tables = self.table(f)
        return {
            "dom": str(f.dom),
            "cod": str(f.cod),
            "table": {label_str(stage): {label_str(k): label_str(v) for k, v in t.items()}
                      for stage, t in zip(self.stages, tables)},
        }

    # hom-set search ----------------------------------------------------------------
    def search_order(self, a) -> list:
        """Flat domain indices in the order the search assigns them."""
        return list(range(self.size(a)))

    def hom_problem(self, a, b) -> HomProblem:
        key = (a, b)
        prob = self._homs.get(key)
        if prob is not None:
            return prob
        da, cb = self.counts(a), self.counts(b)
        doff, coff = self.offsets(a), self.offsets(b)
        n, nc = sum(da), sum(cb)
        order = self.search_order(a)
        pos = [0] * n
        for p, flat in enumerate(order):
            pos[flat] = p
        cands = [None] * n
        for s, na in enumerate(da):
            rng_s = list(range(coff[s], coff[s] + cb[s]))
            for i in range(na):
                cands[pos[doff[s] + i]] = list(rng_s)
        mats: list[bytearray] = []
        mat_ids = {}

        def matrix(k, transposed):
            mid = mat_ids.get((k, transposed))
            if mid is None:
                m = bytearray(nc * nc)
                for i, j in self._holds_cached(b, k):
                    if transposed:
                        m[j * nc + i] = 1
                    else:
                        m[i * nc + j] = 1
                mid = len(mats)
                mats.append(m)
                mat_ids[(k, transposed)] = mid
            return mid

        per_b = [[] for _ in range(n)]
        for k, pairs in self._gen_pairs_cached(a).items():
            hk = None
            for i, j in pairs:
                pi, pj = pos[i], pos[j]
                if i == j:
                    if hk is None:
                        hk = self._holds_cached(b, k)
                    cands[pi] = [c for c in cands[pi] if (c, c) in hk]
                elif pi < pj:
                    per_b[pj].append((pi, matrix(k, False)))
                else:
                    per_b[pi].append((pj, matrix(k, True)))
        cons_start, cons_a, cons_m = array("i", [0]), array("i"), array("i")
        for lst in per_b:
            lst.sort()
            for i, m in lst:
                cons_a.append(i)
                cons_m.append(m)
            cons_start.append(len(cons_a))
        prob = HomProblem(n, nc, cands, cons_start, cons_a, cons_m,
                          bytes(b"".join(bytes(m) for m in mats)) or b"\0", doff, coff,
                          tuple(pos))
        self._homs[key] = prob
        return prob

    def _run(self, prob: HomProblem, limit, rng=None, fixed=None, max_steps=STEP_BUDGET):
        cands = prob.cands
        if fixed:
            cands = list(cands)
            for p, v in fixed.items():
                cands[p] = [v] if v in cands[p] else []
        if rng is not None:
            cands = [list(c) for c in cands]
            for c in cands:
                rng.shuffle(c)
        if any(not c for c in cands):
            return [], kernels.COMPLETE
        cand_start, cand = array("i", [0]), array("i")
        for c in cands:
            cand.extend(c)
            cand_start.append(len(cand))
        return kernels.search(prob.n, prob.nc, cand_start, cand, prob.cons_start,
                              prob.cons_a, prob.cons_m, prob.mats, limit, max_steps)

    def _to_mor(self, a, b, prob: HomProblem, assign):
        comps = []
        for s, na in enumerate(self.counts(a)):
            o, co = prob.dom_offsets[s], prob.cod_offsets[s]
            comps.append(tuple(assign[prob.pos[o + i]] - co for i in range(na)))
        return TabMor(a, b, tuple(comps))

    def hom_enumerate(self, a, b) -> list:
        prob = self.hom_problem(a, b)
        sols, status = self._run(prob, HOM_LIMIT, max_steps=50 * HOM_LIMIT)
        if status != kernels.COMPLETE:
            raise UnsupportedOracle(f"hom({a}, {b}) too large to enumerate")
        return [self._to_mor(a, b, prob, s) for s in sols]

    def random_mor(self, a, b, rng, fixed=None):
        """A random morphism, uniform over the hom-set when it is small.

        ``fixed`` optionally prescribes values: ``{(stage_index, i): j}``.
        """
        prob = self.hom_problem(a, b)
        flat_fixed = None
        if fixed:
            flat_fixed = {prob.pos[prob.dom_offsets[s] + i]: prob.cod_offsets[s] + j
                          for (s, i), j in fixed.items()}
        bound = 1
        for pos, c in enumerate(prob.cands):
            bound *= 1 if flat_fixed and pos in flat_fixed else len(c)
            if bound > UNIFORM_CAP:
                break
        if bound <= UNIFORM_CAP:
            sols, _ = self._run(prob, UNIFORM_CAP + 1, fixed=flat_fixed)
            if not sols:
                raise NoMorphismError(f"hom({a}, {b}) is empty")
            return self._to_mor(a, b, prob, sols[rng.randrange(len(sols))])
        sols, status = self._run(prob, 1, rng=rng, fixed=flat_fixed)
        if status == kernels.BUDGET_EXCEEDED:
            raise GenerationFailure(f"search budget exhausted for hom({a}, {b})")
        if not sols:
            raise NoMorphismError(f"hom({a}, {b}) is empty")
        return self._to_mor(a, b, prob, sols[0])

    def check_morphism(self, f):
        prob = self.hom_problem(f.dom, f.cod)
        if tuple(len(c) for c in f.comps) != self.counts(f.dom):
            raise InvalidMorphism("table shape does not match the domain")
        assign = [0] * prob.n
        for s, comp in enumerate(f.comps):
            for i, j in enumerate(comp):
                assign[prob.pos[prob.dom_offsets[s] + i]] = prob.cod_offsets[s] + j
        nc = prob.nc
        for pos, v in enumerate(assign):
            if v not in prob.cands[pos]:
                raise InvalidMorphism(f"{self.name}: value out of range at position {pos}")
            for k in range(prob.cons_start[pos], prob.cons_start[pos + 1]):
                if not prob.mats[prob.cons_m[k] * nc * nc + assign[prob.cons_a[k]] * nc + v]:
                    raise InvalidMorphism(f"{self.name}: table breaks the structure at {pos}")
        return f

    def is_morphism(self, f) -> bool:
        try:
            self.check_morphism(f)
        except InvalidMorphism:
            return False
        return True

    # products under ▶ ------------------------------------------------------------------
    def preserves_product(self, a, b) -> bool:
        can = self.canonical(a, b)
        ns = self.counts(can.cod)
        return all(len(set(c)) == len(c) == n for c, n in zip(can.comps, ns))

    def canonical_inverse(self, a, b):
        if not self.preserves_product(a, b):
            raise NotApplicable(f"can is not invertible at {a}, {b} in {self.name}")
        can = self.canonical(a, b)
        comps = []
        for c in can.comps:
            inv = [0] * len(c)
            for i, j in enumerate(c):
                inv[j] = i
            comps.append(tuple(inv))
        inv = TabMor(can.cod, can.dom, tuple(comps))
        if not self.is_morphism(inv):
            raise NotApplicable(f"can⁻¹ is not a morphism at {a}, {b} in {self.name}")
        return inv

    # uniformity premise generation ---------------------------------------------------
    def random_surjection(self, a, b, rng, attempts=8):
        h = None
        for _ in range(attempts):
            h = self.random_mor(a, b, rng)
            if all(len(set(c)) == n for c, n in zip(h.comps, self.counts(b))):
                return h
        return h

    def uniform_instance(self, rng, x_obj, y_obj, extra=None, x2_obj=None):
        x2 = x_obj if x2_obj is None else x2_obj
        h = self.identity(x_obj) if x2 == x_obj and rng.random() < 0.1 \
            else self.random_surjection(x_obj, x2, rng)
        if extra is None:
            cod, cod2, post = x_obj, x2, h
        else:
            cod, cod2 = Prod(x_obj, extra), Prod(x2, extra)
            post = self.times(h, self.identity(extra))
        f = self.random_mor(Prod(self.delay_obj(x_obj), y_obj), cod, rng)
        pre = self.times(self.delay_mor(h), self.identity(y_obj))
        target = self.compose(f, post)
        fixed = {}
        for s, (pc, tc) in enumerate(zip(pre.comps, target.comps)):
            for z, v in zip(pc, tc):
                old = fixed.setdefault((s, z), v)
                if old != v:
                    raise GenerationFailure("induced g is not well defined")
        try:
            g = self.random_mor(Prod(self.delay_obj(x2), y_obj), cod2, rng, fixed=fixed)
        except NoMorphismError:
            raise GenerationFailure("forced values admit no morphism") from None
        return f, g, h


def upper_bound_size(counts) -> int:
    return math.prod(max(c, 1) for c in counts)

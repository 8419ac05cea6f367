"""Finite-set-valued presheaves over a finite well-founded poset of stages.

``▶X(w)`` is the set of compatible families ``(x_v)_{v<w}`` (a singleton at
minimal stages), the point sends ``x`` to its family of restrictions, and the
dagger is computed stage by stage in a linear extension of the order.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .core import GuardError, Later, Prod, ShapeError, Unit
from .posets import FinPoset, chain, poset_from_json
from .tabulated import TabMor, TabulatedCategory, label_str


class PresheafError(GuardError):
    """A presheaf literal is malformed or not functorial."""


@dataclass(frozen=True)
class Sheaf:
    """An atomic presheaf.

    ``at[s]`` lists the elements at the ``s``-th stage (in the category's
    stage order); ``restrict`` holds ``((s, t), table)`` for each ``t`` below
    ``s``, tables indexing into ``at[t]``.
    """

    at: tuple
    restrict: tuple
    name: str = ""

    def __str__(self):
        if self.name:
            return self.name
        digest = hashlib.sha1(repr((self.at, self.restrict)).encode()).hexdigest()[:6]
        return f"F{digest}"


def compatible_families(lower, count, restrict, lt):
    """All tuples ``(x_t)_{t in lower}`` with ``restrict(t, u)[x_t] == x_u``.

    ``lower`` must list stages in a linear extension of the order.
    """
    checks = [[(q, u) for q, u in enumerate(lower[:p]) if lt(u, t)] for p, t in enumerate(lower)]
    out, fam = [], []

    def go(p):
        if p == len(lower):
            out.append(tuple(fam))
            return
        t = lower[p]
        for x in range(count(t)):
            if all(restrict(t, u)[x] == fam[q] for q, u in checks[p]):
                fam.append(x)
                go(p + 1)
                fam.pop()

    go(0)
    return out


class PresheafCategory(TabulatedCategory):
    name = "presheaf"
    unique = True
    product_preserving = True

    def __init__(self, poset: FinPoset, max_set: int = 3, max_domain: int = 400):
        super().__init__()
        self.poset = poset
        self.stages = poset.topological()
        self.max_set = max_set
        self.max_domain = max_domain
        pos = {w: i for i, w in enumerate(self.stages)}
        self._lt = {(pos[a], pos[b]) for a, b in poset.leq if a != b}
        self.lower = tuple(tuple(t for t in range(len(self.stages)) if (t, s) in self._lt)
                           for s in range(len(self.stages)))
        self.lower_covers = tuple(
            tuple(t for t in self.lower[s] if not any((t, u) in self._lt for u in self.lower[s]))
            for s in range(len(self.stages)))
        self._restr = {}
        self._fams = {}
        self._fam_idx = {}

    def lt(self, t, s) -> bool:
        return (t, s) in self._lt

    # structure -------------------------------------------------------------
    def families(self, b, s) -> list:
        key = (b, s)
        fams = self._fams.get(key)
        if fams is None:
            counts = self.counts(b)
            fams = compatible_families(self.lower[s], lambda t: counts[t],
                                       lambda t, u: self.restriction(b, t, u), self.lt)
            self._fams[key] = fams
            self._fam_idx[key] = {fam: i for i, fam in enumerate(fams)}
        return fams

    def family_index(self, b, s) -> dict:
        self.families(b, s)
        return self._fam_idx[(b, s)]

    def _carrier(self, a):
        if isinstance(a, Sheaf):
            return a.at
        if isinstance(a, Later):
            inner = self.carrier(a.inner)
            return tuple(tuple(tuple(inner[t][x] for t, x in zip(self.lower[s], fam))
                               for fam in self.families(a.inner, s))
                         for s in range(len(self.stages)))
        return super()._carrier(a)

    def restriction(self, a, s, t) -> tuple:
        """Table of ``a(s ≥ t)`` for stage indices ``t`` below ``s``."""
        key = (a, s, t)
        r = self._restr.get(key)
        if r is not None:
            return r
        if s == t:
            r = tuple(range(self.counts(a)[s]))
        elif isinstance(a, Unit):
            r = (0,)
        elif isinstance(a, Prod):
            ra, rb = self.restriction(a.left, s, t), self.restriction(a.right, s, t)
            nbs, nbt = self.counts(a.right)[s], self.counts(a.right)[t]
            r = tuple(ra[i // nbs] * nbt + rb[i % nbs] for i in range(self.counts(a)[s]))
        elif isinstance(a, Later):
            where = [self.lower[s].index(u) for u in self.lower[t]]
            idx = self.family_index(a.inner, t)
            r = tuple(idx[tuple(fam[p] for p in where)] for fam in self.families(a.inner, s))
        elif isinstance(a, Sheaf):
            r = dict(a.restrict)[(s, t)]
        else:
            raise ShapeError(f"unknown presheaf {a!r}")
        self._restr[key] = r
        return r

    def gen_pairs(self, a) -> dict:
        offs = self.offsets(a)
        out = {}
        for s, lows in enumerate(self.lower_covers):
            for t in lows:
                r = self.restriction(a, s, t)
                out[(s, t)] = [(offs[s] + x, offs[t] + y) for x, y in enumerate(r)]
        return out

    def search_order(self, a) -> list:
        # top stages first: naturality then pins down most lower values
        offs, counts = self.offsets(a), self.counts(a)
        return [offs[s] + i for s in reversed(range(len(self.stages))) for i in range(counts[s])]

    def holds(self, b, key) -> set:
        s, t = key
        offs = self.offsets(b)
        return {(offs[s] + x, offs[t] + y) for x, y in enumerate(self.restriction(b, s, t))}

    # delay --------------------------------------------------------------------
    def point(self, a):
        comps = []
        for s in range(len(self.stages)):
            idx = self.family_index(a, s)
            rs = [self.restriction(a, s, t) for t in self.lower[s]]
            comps.append(tuple(idx[tuple(r[x] for r in rs)] for x in range(self.counts(a)[s])))
        return TabMor(a, Later(a), tuple(comps))

    def delay_mor(self, f):
        comps = []
        for s in range(len(self.stages)):
            idx = self.family_index(f.cod, s)
            lows = self.lower[s]
            comps.append(tuple(idx[tuple(f.comps[t][x] for t, x in zip(lows, fam))]
                               for fam in self.families(f.dom, s)))
        return TabMor(Later(f.dom), Later(f.cod), tuple(comps))

    def dagger(self, f):
        """The unique solution, built by induction along the stage order."""
        x, y = self.fix_shape(f)
        ny = self.counts(y)
        res = []
        for s in range(len(self.stages)):
            idx = self.family_index(x, s)
            lows = self.lower[s]
            rs = [self.restriction(y, s, t) for t in lows]
            comp = []
            for j in range(ny[s]):
                k = idx[tuple(res[t][r[j]] for t, r in zip(lows, rs))]
                comp.append(f.comps[s][k * ny[s] + j])
            res.append(tuple(comp))
        return TabMor(y, x, tuple(res))

    # generation -----------------------------------------------------------------
    def random_sheaf(self, rng, max_set=None) -> Sheaf:
        """Each element picks a random compatible family as its restrictions."""
        max_set = self.max_set if max_set is None else max_set
        sizes = list(range(max_set + 1))
        weights = [1] + [3] * max_set
        at, restr = [], {}
        for s in range(len(self.stages)):
            lows = self.lower[s]
            fams = compatible_families(lows, lambda t: len(at[t]),
                                       lambda t, u: restr[(t, u)], self.lt)
            size = rng.choices(sizes, weights)[0] if fams else 0
            picks = [rng.choice(fams) for _ in range(size)]
            at.append(tuple("abcdefgh"[i] for i in range(size)))
            for p, t in enumerate(lows):
                restr[(s, t)] = tuple(fam[p] for fam in picks)
        return Sheaf(tuple(at), tuple(sorted(restr.items())))

    def random_object(self, rng, role="any"):
        r = rng.random()
        if r < 0.08:
            return Unit()
        if role == "param" and r < 0.3:
            return self.random_sheaf(rng, max_set=2)
        return self.random_sheaf(rng)

    def constant(self, labels, name="") -> Sheaf:
        """The constant presheaf with identity restrictions."""
        labels = tuple(labels)
        n = len(self.stages)
        restr = {(s, t): tuple(range(len(labels))) for s in range(n) for t in self.lower[s]}
        return Sheaf(tuple(labels for _ in range(n)), tuple(sorted(restr.items())),
                     name or "{" + ",".join(map(label_str, labels)) + "}")

    def describe(self, f) -> dict:
        d = super().describe(f)
        d["stages"] = [label_str(w) for w in self.stages]
        return d


def check_weak_model(cat: PresheafCategory, x, y) -> bool:
    """Whether ``can: ▶(X × Y) → ▶X × ▶Y`` is a bijection at every stage."""
    return cat.preserves_product(x, y)


def omega_truncation(n: int, **kw) -> PresheafCategory:
    """Presheaves on the first ``n`` stages of ω, i.e. the chain 0 < 1 < ... < n-1."""
    return PresheafCategory(chain(n), **kw)


def load_presheaf(doc: dict, name: str = "") -> tuple:
    """Parse ``{"poset": ..., "sheaf": {"at": ..., "restrict": ...}}``.

    Restrictions omitted from the literal are derived by composition; the
    result is checked for functoriality.  Returns ``(category, sheaf)``.
    """
    poset = poset_from_json(doc["poset"])
    cat = PresheafCategory(poset)
    sheaf = doc["sheaf"]
    keyed = {str(k): v for k, v in sheaf["at"].items()}
    try:
        at = [tuple(keyed[str(w)]) for w in cat.stages]
    except KeyError as exc:
        raise PresheafError(f"no elements given for stage {exc}") from None
    index = [{str(x): i for i, x in enumerate(elems)} for elems in at]
    sid = {str(w): i for i, w in enumerate(cat.stages)}
    restr = {}
    for w, inner in sheaf.get("restrict", {}).items():
        for v, table in inner.items():
            s, t = sid.get(str(w)), sid.get(str(v))
            if s is None or t is None:
                raise PresheafError(f"restriction mentions unknown stage {w!r} or {v!r}")
            if s == t:
                continue
            if not cat.lt(t, s):
                raise PresheafError(f"restriction {w} ≥ {v} goes against the order")
            try:
                restr[(s, t)] = tuple(index[t][str(table[str(x)] if str(x) in table else table[x])]
                                      for x in at[s])
            except KeyError as exc:
                raise PresheafError(f"restriction {w} ≥ {v} misses or mislabels {exc}") from None
    # derive the missing ones
    wanted = [(s, t) for s in range(len(at)) for t in cat.lower[s]]
    changed = True
    while changed:
        changed = False
        for s, t in wanted:
            if (s, t) in restr:
                continue
            for u in cat.lower[s]:
                if cat.lt(t, u) and (s, u) in restr and (u, t) in restr:
                    first, second = restr[(s, u)], restr[(u, t)]
                    restr[(s, t)] = tuple(second[i] for i in first)
                    changed = True
                    break
    for s, t in wanted:
        if (s, t) not in restr:
            raise PresheafError(f"restriction {cat.stages[s]} ≥ {cat.stages[t]} is missing")
    for s, t in wanted:
        for u in cat.lower[t]:
            composite = tuple(restr[(t, u)][i] for i in restr[(s, t)])
            if composite != restr[(s, u)]:
                raise PresheafError(
                    f"not functorial at {cat.stages[s]} ≥ {cat.stages[t]} ≥ {cat.stages[u]}")
    return cat, Sheaf(tuple(at), tuple(sorted(restr.items())), name)

"""Finite posets as cpos: the lifting model and the identity-delay model.

``LiftCategory`` delays by adjoining a fresh least element and takes least
fixpoints by Kleene iteration.  Solutions of the fixpoint square need not be
unique here.  ``PointedIdCategory`` uses the identity as delay on posets with
a least element; its least-fixpoint dagger is a Conway operator on a model
where ▶ preserves products, which makes it a useful target for searches that
need ``can⁻¹``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import GuardError, Later, Prod, ShapeError, Unit
from .posets import FinPoset, chain, random_poset
from .tabulated import TabMor, TabulatedCategory


class KleeneError(GuardError):
    """Kleene iteration did not stabilize within its bound."""


@dataclass(frozen=True)
class Bottom:
    def __str__(self):
        return "⊥"


@dataclass(frozen=True)
class Up:
    value: object

    def __str__(self):
        return str(self.value)


BOT = Bottom()


class _PosetTables(TabulatedCategory):
    """Shared order bookkeeping for poset-based single-stage models."""

    stages = (0,)

    def __init__(self, max_poset: int = 3, max_domain: int = 300):
        super().__init__()
        self.max_poset = max_poset
        self.max_domain = max_domain
        self._le_cache = {}

    def _carrier(self, a):
        if isinstance(a, FinPoset):
            return (a.elems,)
        return super()._carrier(a)

    def le(self, a) -> frozenset:
        """Index pairs ``(i, j)`` with ``i ≤ j`` in the carrier of ``a``."""
        rel = self._le_cache.get(a)
        if rel is not None:
            return rel
        if isinstance(a, Unit):
            rel = frozenset({(0, 0)})
        elif isinstance(a, Prod):
            la, lb = self.le(a.left), self.le(a.right)
            nb = self.counts(a.right)[0]
            rel = frozenset((i * nb + k, j * nb + l) for i, j in la for k, l in lb)
        elif isinstance(a, FinPoset):
            idx = self.index(a)[0]
            rel = frozenset((idx[x], idx[y]) for x, y in a.leq)
        else:
            rel = self._le_other(a)
        self._le_cache[a] = rel
        return rel

    def _le_other(self, a):
        raise ShapeError(f"{self.name} does not know object {a!r}")

    def gen_pairs(self, a) -> dict:
        rel = self.le(a)
        covers = [(i, j) for i, j in rel if i != j and not any(
            (i, k) in rel and (k, j) in rel for k in range(self.counts(a)[0]) if k not in (i, j))]
        return {"le": sorted(covers)}

    def holds(self, b, key) -> set:
        return set(self.le(b))

    def pointwise_le(self, f, g) -> bool:
        rel = self.le(f.cod)
        return all((i, j) in rel for i, j in zip(f.comps[0], g.comps[0]))

    def least(self, maps):
        """The pointwise least element of ``maps`` (None if there is none)."""
        for m in maps:
            if all(self.pointwise_le(m, other) for other in maps):
                return m
        return None

    def random_poset_obj(self, rng, pointed=False):
        n = rng.choices(range(self.max_poset + 1), [1, 3, 4, 3][: self.max_poset + 1])[0]
        if pointed:
            n = max(n, 1)
            base = random_poset(rng, n - 1)
            elems = (-1,) + tuple(base.elems)
            return FinPoset.from_relation(elems, list(base.leq) + [(-1, e) for e in base.elems])
        return random_poset(rng, n)


class LiftCategory(_PosetTables):
    """Finite posets, monotone maps, ``▶X = X_⊥``, least-fixpoint dagger."""

    name = "cpolift"
    unique = False
    product_preserving = False

    def _carrier(self, a):
        if isinstance(a, Later):
            return ((BOT,) + tuple(Up(x) for x in self.carrier(a.inner)[0]),)
        return super()._carrier(a)

    def _le_other(self, a):
        if isinstance(a, Later):
            n = self.counts(a)[0]
            return frozenset({(0, j) for j in range(n)} |
                             {(i + 1, j + 1) for i, j in self.le(a.inner)})
        return super()._le_other(a)

    def point(self, a):
        return TabMor(a, Later(a), (tuple(i + 1 for i in range(self.counts(a)[0])),))

    def delay_mor(self, f):
        return TabMor(Later(f.dom), Later(f.cod), ((0,) + tuple(j + 1 for j in f.comps[0]),))

    def kleene(self, f):
        """Least fixpoint ``s: Y → X_⊥`` of ``m ↦ p ∘ f ∘ ⟨m, Y⟩`` and the iterates."""
        x, y = self.fix_shape(f)
        nx, ny = self.counts(x)[0], self.counts(y)[0]
        table = f.comps[0]
        m = (0,) * ny
        chain_ = [m]
        for _ in range((nx + 1) * ny + 1):
            nxt = tuple(table[m[j] * ny + j] + 1 for j in range(ny))
            if nxt == m:
                return TabMor(y, Later(x), (m,)), chain_
            m = nxt
            chain_.append(m)
        raise KleeneError("Kleene iteration did not stabilize; is f monotone?")

    def dagger(self, f):
        s, _ = self.kleene(f)
        _, y = self.fix_shape(f)
        return self.compose(self.pair(s, self.identity(y)), f)

    def random_object(self, rng, role="any"):
        if rng.random() < 0.08:
            return Unit()
        return self.random_poset_obj(rng)


class PointedIdCategory(_PosetTables):
    """Posets with a least element, monotone maps, ``▶ = Id``, least fixpoints."""

    name = "cpo-id"
    unique = False
    product_preserving = True

    def delay_obj(self, a):
        return a

    def point(self, a):
        return self.identity(a)

    def delay_mor(self, f):
        return f

    def bottom(self, a) -> int:
        rel = self.le(a)
        n = self.counts(a)[0]
        for i in range(n):
            if all((i, j) in rel for j in range(n)):
                return i
        raise ShapeError(f"{a} has no least element")

    def dagger(self, f):
        x, y = self.fix_shape(f)
        ny = self.counts(y)[0]
        if ny == 0:
            return TabMor(y, x, ((),))
        b = self.bottom(x)
        table, out = f.comps[0], []
        for j in range(ny):
            v = b
            for _ in range(self.counts(x)[0] + 1):
                nxt = table[v * ny + j]
                if nxt == v:
                    break
                v = nxt
            else:
                raise KleeneError("iteration did not stabilize")
            out.append(v)
        return TabMor(y, x, (tuple(out),))

    def random_object(self, rng, role="any"):
        if rng.random() < 0.08:
            return Unit()
        return self.random_poset_obj(rng, pointed=True)


# -- the two-chain instance with two solutions ----------------------------------

def two_chain_instance(cat: LiftCategory | None = None):
    """``X = {0 < 1}``, ``Y = 1`` and ``f: X_⊥ × 1 → X`` with ``⊥, 0 ↦ 0`` and ``1 ↦ 1``.

    Both constant maps solve the fixpoint square; the least is ``0``.
    Returns ``(cat, f)``.
    """
    cat = cat or LiftCategory()
    x = chain(2)
    dom = Prod(Later(x), Unit())
    f = cat.morphism(dom, x, {(BOT, ()): 0, (Up(0), ()): 0, (Up(1), ()): 1})
    return cat, f


def check_lift_double_dagger(cat: LiftCategory, f, seed: int = 0):
    """Verdict on ``f†† = (f ∘ (Δ × Y))†`` for ``f: X_⊥ × X_⊥ × Y → X``."""
    from .laws import double_dagger_sides, verdict_from_sides
    return verdict_from_sides(cat, "DD", seed, double_dagger_sides(cat, f), {"f": cat.describe(f)})

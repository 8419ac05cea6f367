"""Plain finite sets with two degenerate delays.

``ConstantDelaySets`` sends every object to ``1``: a map ``▶X × Y → X`` is
just a map ``Y → X`` and the dagger returns it.  ``IdentityDelaySets`` uses
``▶ = Id`` and has no dagger at all in general; it hosts the additive-group
witness.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Prod, Unit, check_guarded_square
from .tabulated import TabMor, TabulatedCategory, label_str


@dataclass(frozen=True)
class FinSet:
    elems: tuple
    name: str = ""

    def __str__(self):
        return self.name or "{" + ",".join(map(label_str, self.elems)) + "}"


class _Sets(TabulatedCategory):
    stages = (0,)

    def __init__(self, max_set: int = 3, max_domain: int = 300):
        super().__init__()
        self.max_set = max_set
        self.max_domain = max_domain

    def _carrier(self, a):
        if isinstance(a, FinSet):
            return (a.elems,)
        return super()._carrier(a)

    def random_object(self, rng, role="any"):
        if rng.random() < 0.08:
            return Unit()
        n = rng.choices(range(self.max_set + 1), [1] + [3] * self.max_set)[0]
        return FinSet(tuple("abcdefgh"[:n]))


class ConstantDelaySets(_Sets):
    name = "const-delay"
    unique = True
    product_preserving = True

    def delay_obj(self, a):
        return Unit()

    def point(self, a):
        return self.bang(a)

    def delay_mor(self, f):
        return self.identity(Unit())

    def dagger(self, f):
        x, y = self.fix_shape(f)
        # ▶X × Y has the carrier {()} × Y, so the table is already a map Y → X
        return TabMor(y, x, f.comps)


class IdentityDelaySets(_Sets):
    name = "id-delay"
    product_preserving = True

    def delay_obj(self, a):
        return a

    def point(self, a):
        return self.identity(a)

    def delay_mor(self, f):
        return f

    def has_dagger(self) -> bool:
        return False


def cyclic_group(n: int) -> FinSet:
    return FinSet(tuple(range(n)), f"Z{n}")


def group_witness(n: int) -> dict:
    """Search every map ``s: Z_n → Z_n`` for a solution of ``s(x) = s(x) + x``.

    With ▶ the identity, the fixpoint square for ``h = +: Z_n × Z_n → Z_n``
    reads ``s = h ∘ ⟨s, id⟩``; cancelling ``s(x)`` forces ``x = 0``.
    """
    cat = IdentityDelaySets()
    z = cyclic_group(n)
    h = cat.morphism(Prod(z, z), z, {(a, b): (a + b) % n for a in range(n) for b in range(n)})
    candidates = cat.hom_enumerate(z, z)
    sols = [s for s in candidates if check_guarded_square(cat, h, s)]
    return {
        "order": n,
        "candidates": len(candidates),
        "solutions": len(sols),
        "solution_tables": [cat.describe(s)["table"] for s in sols],
    }

"""Model-independent vocabulary: objects, the category interface, verdicts.

Objects are small immutable expression trees (``Unit``, ``Prod``, ``Later``
plus per-model atoms) compared structurally.  A model interprets them; the
harness never compares objects across models.

Composition is written in diagrammatic order throughout:
``cat.seq(f, g, h)`` is ``h ∘ g ∘ f``.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass, field
from typing import Any, Callable


class GuardError(Exception):
    """Base class of all errors raised by this package."""


class CompositionError(GuardError):
    def __init__(self, left, right):
        super().__init__(f"cannot compose: codomain {left} does not match domain {right}")
        self.left = left
        self.right = right


class ShapeError(GuardError):
    """A morphism does not have the shape a construction requires."""


class NoMorphismError(GuardError):
    """A hom-set is empty (possible when some carrier is empty)."""


class GenerationFailure(GuardError):
    """A randomized generator ran out of budget without a valid result."""


class UnsupportedOracle(GuardError):
    """The model cannot enumerate the requested hom-set."""


class NotApplicable(GuardError):
    """The law needs structure (e.g. an inverse of ``can``) the model lacks."""


class InvalidMorphism(GuardError):
    """A table does not describe a morphism of the model."""


# -- objects -----------------------------------------------------------------

@dataclass(frozen=True)
class Unit:
    """The terminal object."""

    def __str__(self):
        return "1"


@dataclass(frozen=True)
class Prod:
    left: Any
    right: Any

    def __str__(self):
        return f"({self.left} × {self.right})"


@dataclass(frozen=True)
class Later:
    """The delayed object ▶inner."""

    inner: Any

    def __str__(self):
        return f"▶{self.inner}"


# -- verdicts ----------------------------------------------------------------

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"
REPORT_ONLY = "report-only"


@dataclass
class LawVerdict:
    law_name: str
    model_name: str
    trials: int = 0
    failures: int = 0
    witness: dict | None = None
    seed: int = 0

    def __post_init__(self):
        assert 0 <= self.failures <= self.trials
        assert (self.witness is not None) == (self.failures > 0)

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass
class LawReport:
    """Aggregate of many trials of one law on one model."""

    model: str
    law: str
    seed: int
    status: str = PASS
    trials: int = 0
    failures: int = 0
    discarded: int = 0
    witnesses: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    max_witnesses = 3

    def add(self, verdict: LawVerdict):
        self.trials += verdict.trials
        self.failures += verdict.failures
        if verdict.witness is not None and len(self.witnesses) < self.max_witnesses:
            self.witnesses.append(verdict.witness)

    @property
    def counts_as_failure(self) -> bool:
        return self.status == FAIL

    def finalize(self, report_only: bool = False):
        if self.status == NOT_APPLICABLE:
            return self
        if report_only:
            self.status = REPORT_ONLY
        else:
            self.status = FAIL if self.failures else PASS
        attempted = self.trials + self.discarded
        if attempted and self.trials / attempted < 0.05:
            self.notes.append("under-tested: premise acceptance below 5%")
        return self

    def to_json(self) -> dict:
        return {
            "model": self.model,
            "law": self.law,
            "status": self.status,
            "trials": self.trials,
            "failures": self.failures,
            "discarded": self.discarded,
            "seed": self.seed,
            "witnesses": self.witnesses,
            "notes": self.notes,
        }


# -- the category interface --------------------------------------------------

class GuardedCategory(abc.ABC):
    """A cartesian category with a pointed delay endofunctor.

    Subclasses supply the primitive structure; the derived combinators
    (``seq``, ``times``, ``swap``, ``assoc`` and ``canonical``) are built here
    from the primitives alone.
    """

    name: str = "abstract"
    #: whether the model guarantees unique solutions of the fixpoint square
    unique: bool = False
    #: whether ▶ preserves finite products (so ``canonical_inverse`` exists)
    product_preserving: bool = False

    # primitives ------------------------------------------------------------
    def terminal(self):
        return Unit()

    def product(self, a, b):
        return Prod(a, b)

    def delay_obj(self, a):
        return Later(a)

    @abc.abstractmethod
    def identity(self, a): ...

    @abc.abstractmethod
    def compose(self, f, g):
        """``g ∘ f``; raises :class:`CompositionError` on mismatch."""

    @abc.abstractmethod
    def pair(self, f, g): ...

    @abc.abstractmethod
    def proj_left(self, a, b): ...

    @abc.abstractmethod
    def proj_right(self, a, b): ...

    @abc.abstractmethod
    def bang(self, a): ...

    @abc.abstractmethod
    def delay_mor(self, f): ...

    @abc.abstractmethod
    def point(self, a): ...

    @abc.abstractmethod
    def mor_equal(self, f, g) -> bool: ...

    @abc.abstractmethod
    def random_object(self, rng, role: str = "any"): ...

    @abc.abstractmethod
    def random_mor(self, a, b, rng): ...

    @abc.abstractmethod
    def describe(self, f) -> dict:
        """A JSON-serializable rendering of a morphism."""

    def has_dagger(self) -> bool:
        return True

    def dagger(self, f):
        raise NotImplementedError(f"{self.name} has no dagger")

    def hom_enumerate(self, a, b) -> list:
        raise UnsupportedOracle(f"{self.name} cannot enumerate hom({a}, {b})")

    def canonical_inverse(self, a, b):
        raise NotApplicable(f"▶ does not preserve products in {self.name}")

    def size(self, a) -> int:
        """A rough carrier size used to keep generated instances small."""
        return 1

    def uniform_instance(self, rng, x_obj, y_obj, extra=None, **kw):
        """Triple ``(f, g, h)`` with ``post ∘ f = g ∘ (▶h × Y)``.

        ``post`` is ``h`` when ``extra`` is None, otherwise ``h × extra``
        (the trace-uniformity premise).
        """
        raise GenerationFailure(f"{self.name} has no uniformity generator")

    # derived ---------------------------------------------------------------
    def seq(self, *ms):
        """Diagrammatic composite: ``seq(f, g)`` is ``g ∘ f``."""
        out = ms[0]
        for m in ms[1:]:
            out = self.compose(out, m)
        return out

    def times(self, f, g):
        a, b = f.dom, g.dom
        return self.pair(self.compose(self.proj_left(a, b), f),
                         self.compose(self.proj_right(a, b), g))

    def diagonal(self, a):
        i = self.identity(a)
        return self.pair(i, i)

    def swap(self, a, b):
        return self.pair(self.proj_right(a, b), self.proj_left(a, b))

    def assoc(self, a, b, c):
        """(A × B) × C → A × (B × C)."""
        ab = self.product(a, b)
        l = self.proj_left(ab, c)
        return self.pair(self.compose(l, self.proj_left(a, b)),
                         self.pair(self.compose(l, self.proj_right(a, b)),
                                   self.proj_right(ab, c)))

    def assoc_inv(self, a, b, c):
        """A × (B × C) → (A × B) × C."""
        bc = self.product(b, c)
        r = self.proj_right(a, bc)
        return self.pair(self.pair(self.proj_left(a, bc), self.compose(r, self.proj_left(b, c))),
                         self.compose(r, self.proj_right(b, c)))

    def canonical(self, a, b):
        """can: ▶(A × B) → ▶A × ▶B."""
        return self.pair(self.delay_mor(self.proj_left(a, b)),
                         self.delay_mor(self.proj_right(a, b)))

    # shape helpers -----------------------------------------------------------
    def split(self, obj):
        if not isinstance(obj, Prod):
            raise ShapeError(f"{obj} is not a product")
        return obj.left, obj.right

    def fix_shape(self, f):
        """``(X, Y)`` for ``f: ▶X × Y → X``."""
        x = f.cod
        lx, y = self.split(f.dom)
        if lx != self.delay_obj(x):
            raise ShapeError(f"dagger needs ▶{x} × Y → {x}, got {f.dom} → {f.cod}")
        return x, y

    def trace_shape(self, f):
        """``(X, A, B)`` for ``f: ▶X × A → X × B``."""
        x, b = self.split(f.cod)
        lx, a = self.split(f.dom)
        if lx != self.delay_obj(x):
            raise ShapeError(f"trace needs ▶X × A → X × B, got {f.dom} → {f.cod}")
        return x, a, b


class WithDagger(GuardedCategory):
    """A view of ``base`` with its dagger replaced by ``dagger_fn``."""

    def __init__(self, base: GuardedCategory, dagger_fn: Callable, name: str | None = None,
                 unique: bool = False):
        self.base = base
        self._dagger_fn = dagger_fn
        self.name = name or f"{base.name}+custom-dagger"
        self.unique = unique
        self.product_preserving = base.product_preserving

    def dagger(self, f):
        return self._dagger_fn(f)

    def __getattr__(self, item):
        return getattr(self.base, item)

    # abstract methods forwarded explicitly
    def terminal(self): return self.base.terminal()
    def product(self, a, b): return self.base.product(a, b)
    def delay_obj(self, a): return self.base.delay_obj(a)
    def identity(self, a): return self.base.identity(a)
    def compose(self, f, g): return self.base.compose(f, g)
    def pair(self, f, g): return self.base.pair(f, g)
    def proj_left(self, a, b): return self.base.proj_left(a, b)
    def proj_right(self, a, b): return self.base.proj_right(a, b)
    def bang(self, a): return self.base.bang(a)
    def delay_mor(self, f): return self.base.delay_mor(f)
    def point(self, a): return self.base.point(a)
    def mor_equal(self, f, g): return self.base.mor_equal(f, g)
    def random_object(self, rng, role="any"): return self.base.random_object(rng, role)
    def random_mor(self, a, b, rng): return self.base.random_mor(a, b, rng)
    def describe(self, f): return self.base.describe(f)
    def hom_enumerate(self, a, b): return self.base.hom_enumerate(a, b)
    def canonical_inverse(self, a, b): return self.base.canonical_inverse(a, b)
    def size(self, a): return self.base.size(a)

    def uniform_instance(self, rng, x_obj, y_obj, extra=None, **kw):
        return self.base.uniform_instance(rng, x_obj, y_obj, extra, **kw)


# -- fixpoint square -----------------------------------------------------------

def fixpoint_rhs(cat: GuardedCategory, f, s):
    """``f ∘ (p_X × Y) ∘ ⟨s, Y⟩`` for ``f: ▶X × Y → X`` and ``s: Y → X``."""
    x, y = cat.fix_shape(f)
    if s.dom != y or s.cod != x:
        raise ShapeError(f"candidate {s.dom} → {s.cod} does not fit {y} → {x}")
    return cat.seq(cat.pair(s, cat.identity(y)),
                   cat.times(cat.point(x), cat.identity(y)),
                   f)


def check_guarded_square(cat: GuardedCategory, f, s) -> bool:
    return cat.mor_equal(s, fixpoint_rhs(cat, f, s))


def enumerate_solutions(cat: GuardedCategory, f) -> list:
    """Every ``s: Y → X`` solving the fixpoint square, by brute force."""
    x, y = cat.fix_shape(f)
    return [s for s in cat.hom_enumerate(y, x) if check_guarded_square(cat, f, s)]

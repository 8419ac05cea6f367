"""Finite posets: validation, topological order, literals and generators."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import GuardError


class PosetError(GuardError):
    """An order relation is not a partial order."""


@dataclass(frozen=True)
class FinPoset:
    """A finite poset. ``leq`` is the full (reflexive, transitive) relation."""

    elems: tuple
    leq: frozenset

    @classmethod
    def from_relation(cls, elems, pairs) -> "FinPoset":
        elems = tuple(elems)
        if len(set(elems)) != len(elems):
            raise PosetError("duplicate poset elements")
        known = set(elems)
        rel = {(a, a) for a in elems}
        for a, b in pairs:
            if a not in known or b not in known:
                raise PosetError(f"relation mentions unknown element in {(a, b)!r}")
            rel.add((a, b))
        # transitive closure (Warshall)
        for k in elems:
            for i in elems:
                if (i, k) in rel:
                    for j in elems:
                        if (k, j) in rel:
                            rel.add((i, j))
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise PosetError(f"not antisymmetric: {a!r} and {b!r}")
        return cls(elems, frozenset(rel))

    def le(self, a, b) -> bool:
        return (a, b) in self.leq

    def lt(self, a, b) -> bool:
        return a != b and (a, b) in self.leq

    def below(self, w) -> list:
        """Elements strictly below ``w`` in declaration order."""
        return [v for v in self.elems if self.lt(v, w)]

    def minimal(self) -> list:
        return [w for w in self.elems if not self.below(w)]

    def topological(self) -> tuple:
        """A linear extension, stable with respect to declaration order."""
        out, placed = [], set()
        while len(out) < len(self.elems):
            for w in self.elems:
                if w not in placed and all(v in placed for v in self.below(w)):
                    out.append(w)
                    placed.add(w)
                    break
        return tuple(out)

    def covers(self) -> list:
        """Hasse diagram edges ``(a, b)`` with ``a < b`` and nothing between."""
        return [(a, b) for a, b in sorted(self.leq, key=repr)
                if a != b and not any(self.lt(a, c) and self.lt(c, b) for c in self.elems)]

    def to_json(self) -> dict:
        return {"elems": list(self.elems),
                "leq": sorted([[a, b] for a, b in self.leq if a != b], key=repr)}

    def __str__(self):
        rel = ", ".join(f"{a}<{b}" for a, b in self.covers())
        return "{" + ", ".join(map(str, self.elems)) + (" | " + rel if rel else "") + "}"


def poset_from_json(doc: dict) -> FinPoset:
    """``{"elems": [...], "leq": [[a, b], ...]}`` where ``[a, b]`` means a ≤ b."""
    return FinPoset.from_relation(doc["elems"], [tuple(p) for p in doc.get("leq", [])])


def chain(n: int) -> FinPoset:
    return FinPoset.from_relation(range(n), [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> FinPoset:
    return FinPoset.from_relation(range(n), [])


def diamond() -> FinPoset:
    return FinPoset.from_relation(["0", "a", "b", "1"],
                                  [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def default_stage_posets(max_chain: int = 4) -> list:
    """Chains of length 1..max_chain, the 2-antichain and the diamond."""
    return [chain(n) for n in range(1, max_chain + 1)] + [antichain(2), diamond()]


def random_poset(rng, n: int) -> FinPoset:
    """A random order on ``range(n)``; edges only go upward in index."""
    pairs = [(i, j) for i, j in product(range(n), repeat=2) if i < j and rng.random() < 0.4]
    return FinPoset.from_relation(range(n), pairs)

"""Depth-truncated ultrametric spaces of words.

Distances are ``2^-e`` where ``e`` is the first index at which two words
differ; we store the integer exponent ``e`` (``INF`` for equal points) so all
comparisons are exact.  ``▶`` keeps the carrier and adds one to every finite
exponent (halving distances); products take the minimum exponent, which is
the max metric.  A morphism is a non-expansive map: ``e(fx, fy) ≥ e(x, y)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .core import Later, Prod, Unit
from .tabulated import TabMor, TabulatedCategory

INF = math.inf


@dataclass(frozen=True)
class Words:
    """All words of length ``depth`` over ``range(alphabet)``."""

    alphabet: int
    depth: int

    def __str__(self):
        return f"W({self.alphabet},{self.depth})"


def word_exponent(u, v):
    for i, (a, b) in enumerate(zip(u, v)):
        if a != b:
            return i
    return INF


class UltrametricCategory(TabulatedCategory):
    name = "cms"
    unique = True
    product_preserving = True

    def __init__(self, max_alphabet: int = 2, max_depth: int = 4, max_domain: int = 256):
        super().__init__()
        self.max_alphabet = max_alphabet
        self.max_depth = max_depth
        self.max_domain = max_domain
        self._exps = {}

    def _carrier(self, a):
        if isinstance(a, Words):
            return (tuple(product(range(a.alphabet), repeat=a.depth)),)
        if isinstance(a, Later):
            return self.carrier(a.inner)
        return super()._carrier(a)

    def exponents(self, a) -> tuple:
        """Matrix of distance exponents on the carrier of ``a``."""
        m = self._exps.get(a)
        if m is not None:
            return m
        if isinstance(a, Unit):
            m = ((INF,),)
        elif isinstance(a, Words):
            pts = self.carrier(a)[0]
            m = tuple(tuple(word_exponent(u, v) for v in pts) for u in pts)
        elif isinstance(a, Later):
            m = tuple(tuple(e + 1 for e in row) for row in self.exponents(a.inner))
        elif isinstance(a, Prod):
            ma, mb = self.exponents(a.left), self.exponents(a.right)
            m = tuple(tuple(min(ra[j], rb[l]) for j in range(len(ra)) for l in range(len(rb)))
                      for ra in ma for rb in mb)
        else:
            return super()._carrier(a)
        self._exps[a] = m
        return m

    def distance(self, a, i, j) -> float:
        return 2.0 ** -self.exponents(a)[i][j]

    def gen_pairs(self, a) -> dict:
        # Checking each point against the first point of each of its balls
        # suffices: the ultrametric inequality covers every other pair.
        m = self.exponents(a)
        levels = sorted({e for row in m for e in row if e != INF and e > 0})
        out = {}
        for e in levels:
            pairs = []
            for j, row in enumerate(m):
                r = next(i for i in range(len(row)) if row[i] >= e)
                if r != j:
                    pairs.append((r, j))
            out[e] = pairs
        return out

    def holds(self, b, key) -> set:
        m = self.exponents(b)
        return {(i, j) for i, row in enumerate(m) for j, e in enumerate(row) if e >= key}

    def is_nonexpansive(self, f) -> bool:
        """Exhaustive pairwise check, independent of the search constraints."""
        md, mc = self.exponents(f.dom), self.exponents(f.cod)
        t = f.comps[0]
        return all(mc[t[i]][t[j]] >= md[i][j] for i in range(len(t)) for j in range(len(t)))

    def point(self, a):
        return TabMor(a, Later(a), self.identity(a).comps)

    def delay_mor(self, f):
        return TabMor(Later(f.dom), Later(f.cod), f.comps)

    def banach(self, f, start=None):
        """Iterate ``m ↦ f ∘ (p × Y) ∘ ⟨m, Y⟩`` to its fixpoint; returns the iterates."""
        x, y = self.fix_shape(f)
        ny = self.counts(y)[0]
        table = f.comps[0]
        m = tuple(start.comps[0]) if start is not None else (0,) * ny
        if ny and not self.counts(x)[0]:
            raise ValueError("no start map into an empty space")
        seq = [m]
        for _ in range(self._depth_bound(x) + 2):
            nxt = tuple(table[m[j] * ny + j] for j in range(ny))
            if nxt == m:
                return seq
            m = nxt
            seq.append(m)
        raise RuntimeError("Banach iteration did not converge; is f contractive?")

    def _depth_bound(self, a) -> int:
        fin = [e for row in self.exponents(a) for e in row if e != INF]
        return int(max(fin, default=0)) + 1

    def dagger(self, f, start=None):
        x, y = self.fix_shape(f)
        return TabMor(y, x, (self.banach(f, start)[-1],))

    def random_object(self, rng, role="any"):
        if rng.random() < 0.1:
            return Unit()
        a = rng.choices(range(1, self.max_alphabet + 1), [1] + [4] * (self.max_alphabet - 1))[0]
        depths = list(range(1, self.max_depth + 1))
        k = rng.choices(depths, [4, 4, 2, 1][: len(depths)] + [1] * max(0, len(depths) - 4))[0]
        if role == "param":
            k = min(k, 2)
        return Words(a, k)

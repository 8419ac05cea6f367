"""Σ-trees, guarded equation systems, and the opposite Kleisli category.

Trees are hash-consed in a :class:`TreeStore` and always kept truncated at a
fixed depth ``k``: the root sits at level 1, leaves are kept at every level up
to ``k``, and an operation node of positive arity at level ``k`` is replaced
by the cut marker □.  Substitution into a truncated tree is exact, so every
computation below yields precisely the depth-``k`` prefix of the true
(possibly infinite) tree.

The category has finite sets as objects (``Vars``), coproducts of sets as
products, and a morphism ``A → B`` is a map from the elements of ``B`` to
trees over ``A``.  ``▶X`` is the set of operation-rooted trees over ``X``;
objects containing ``▶`` have infinite carriers, so morphisms into them are
evaluated lazily and compared on a fixed sample of points.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field

from .core import (
    CompositionError,
    GenerationFailure,
    GuardError,
    GuardedCategory,
    Later,
    Prod,
    ShapeError,
    Unit,
)
from .tabulated import label_str

CUT = 0
VAR, OP, CUTNODE = "var", "op", "cut"


class GuardednessError(GuardError):
    """An equation's right-hand side is a bare recursion variable."""

    def __init__(self, variable):
        super().__init__(f"equation for {variable} is unguarded: its right-hand side "
                         f"is a bare variable")
        self.variable = variable


class ParseError(GuardError):
    """Malformed equation-system text."""


@dataclass(frozen=True)
class Signature:
    symbols: tuple  # ((name, arity), ...)

    def __post_init__(self):
        names = [n for n, _ in self.symbols]
        if len(set(names)) != len(names):
            raise ValueError("duplicate operation symbols")
        if any(a < 0 for _, a in self.symbols):
            raise ValueError("negative arity")

    def arity(self, name):
        return dict(self.symbols)[name]

    def constants(self):
        return [n for n, a in self.symbols if a == 0]

    def __str__(self):
        return ", ".join(f"{n}:{a}" for n, a in self.symbols)


DEFAULT_SIGNATURE = Signature((("*", 2), ("s", 1), ("c", 0)))


def random_signature(rng) -> Signature:
    """At most three symbols, always one constant and one of positive arity."""
    syms = [("c", 0), (rng.choice(["*", "s", "g"]), rng.choice([1, 2]))]
    if rng.random() < 0.5:
        extra = ("d", 0) if rng.random() < 0.5 else ("h", 2 if syms[1][1] == 1 else 1)
        if extra[0] not in dict(syms):
            syms.append(extra)
    return Signature(tuple(syms))


class TreeStore:
    """Hash-consed trees truncated at ``depth``."""

    def __init__(self, depth: int):
        if depth < 1:
            raise ValueError("depth must be at least 1")
        self.depth = depth
        self.nodes = [(CUTNODE,)]
        self.ids = {(CUTNODE,): CUT}
        self._trunc = {}

    def _mk(self, node):
        i = self.ids.get(node)
        if i is None:
            i = len(self.nodes)
            self.nodes.append(node)
            self.ids[node] = i
        return i

    def var(self, label) -> int:
        return self._mk((VAR, label))

    def op(self, name, children=()) -> int:
        return self._mk((OP, name, tuple(children)))

    def node(self, t):
        return self.nodes[t]

    def is_var(self, t) -> bool:
        return self.nodes[t][0] == VAR

    def is_op(self, t) -> bool:
        return self.nodes[t][0] == OP

    def label(self, t):
        return self.nodes[t][1]

    def truncate(self, t, j=None) -> int:
        """Depth-``j`` prefix of ``t`` (``j`` defaults to the store depth)."""
        j = self.depth if j is None else j
        key = (t, j)
        out = self._trunc.get(key)
        if out is not None:
            return out
        n = self.nodes[t]
        if n[0] != OP or not n[2]:
            out = t
        elif j <= 1:
            out = CUT
        else:
            out = self.op(n[1], [self.truncate(c, j - 1) for c in n[2]])
        self._trunc[key] = out
        return out

    def subst(self, t, fn, j=None) -> int:
        """Replace each leaf ``x`` of ``t`` by ``fn(x, budget)``, truncating at ``j``.

        ``fn`` receives the depth budget left at the leaf and must return a
        tree truncated at least that deep.
        """
        j = self.depth if j is None else j
        memo = {}

        def go(t, j):
            key = (t, j)
            r = memo.get(key)
            if r is not None:
                return r
            n = self.nodes[t]
            if n[0] == VAR:
                r = self.truncate(fn(n[1], j), j)
            elif n[0] == CUTNODE:
                r = CUT
            elif not n[2]:
                r = t
            elif j <= 1:
                r = CUT
            else:
                r = self.op(n[1], [go(c, j - 1) for c in n[2]])
            memo[key] = r
            return r

        return go(t, j)

    def relabel(self, t, fn) -> int:
        """Rename leaves without changing shape: ``x ↦ fn(x)``."""
        return self.subst(t, lambda x, _j: self.var(fn(x)))

    def leaves(self, t) -> set:
        out, seen, stack = set(), set(), [t]
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            n = self.nodes[u]
            if n[0] == VAR:
                out.add(n[1])
            elif n[0] == OP:
                stack.extend(n[2])
        return out

    def show(self, t, leaf=None) -> str:
        leaf = leaf or _show_label
        n = self.nodes[t]
        if n[0] == CUTNODE:
            return "□"
        if n[0] == VAR:
            return leaf(n[1], self)
        if not n[2]:
            return n[1]
        return f"{n[1]}({', '.join(self.show(c, leaf) for c in n[2])})"

    def random_tree(self, rng, sig: Signature, leaves, height: int, op_rooted=False) -> int:
        """A random tree of at most ``height`` levels over ``leaves()``.

        ``leaves`` returns a random leaf label or None when there is none.
        """
        if height <= 1 or (not op_rooted and rng.random() < 0.35):
            if not op_rooted:
                x = leaves()
                if x is not None and (height <= 1 or rng.random() < 0.8):
                    return self.truncate(self.var(x))
            if height <= 1:
                return self.op(rng.choice(sig.constants()))
        name, arity = rng.choice(sig.symbols)
        kids = [self.random_tree(rng, sig, leaves, height - 1) for _ in range(arity)]
        return self.truncate(self.op(name, kids))


def _show_label(x, store) -> str:
    if isinstance(x, int):
        return "[" + store.show(x) + "]"
    if isinstance(x, tuple) and len(x) == 2 and x[0] in ("l", "r"):
        return f"{x[0]}.{_show_label(x[1], store)}"
    return label_str(x)


# -- ideal monad structure -------------------------------------------------------

def unit(store: TreeStore, x) -> int:
    return store.var(x)


def flatten(store: TreeStore, t: int) -> int:
    """Multiplication: ``t`` has trees (ids) as leaf labels; splice them in."""
    return store.subst(t, lambda leaf, j: leaf)


def guard_inject(store: TreeStore, t: int) -> int:
    """Inclusion of an operation-rooted tree into all trees."""
    if not store.is_op(t):
        raise ShapeError("not an operation-rooted tree")
    return t


def guard_flatten(store: TreeStore, t: int) -> int:
    """Multiplication restricted to operation-rooted trees of trees."""
    return flatten(store, guard_inject(store, t))


# -- equation systems ----------------------------------------------------------------

@dataclass
class EquationMorphism:
    """``x ↦ body(x)``, a tree over leaves ``("l", x')`` and ``("r", y)``."""

    variables: tuple
    params: tuple
    bodies: dict
    store: TreeStore = field(repr=False)

    def check_guarded(self):
        for x in self.variables:
            t = self.bodies[x]
            if self.store.is_var(t) and self.store.label(t)[0] == "l":
                raise GuardednessError(x)
        return self


def solve(e: EquationMorphism, depth=None) -> dict:
    """Depth-truncated unique solution, unfolding bodies on demand."""
    e.check_guarded()
    solver = _demand_solver(e.store, e.bodies.__getitem__, depth)
    return dict(zip(e.variables, solver(e.variables)))


def _demand_solver(store: TreeStore, body, depth=None):
    """Returns ``solve_all(xs)``; ``body`` may be lazy over an infinite set."""
    depth = store.depth if depth is None else depth
    memo = {}

    def unfold(x, j):
        key = (x, j)
        r = memo.get(key)
        if r is not None:
            return r
        b = body(x)
        if store.is_var(b):
            tag, v = store.label(b)
            if tag == "l":
                raise GuardednessError(x)
            r = store.var(v)
        else:
            def leaf(lab, budget):
                tag, v = lab
                return store.var(v) if tag == "r" else unfold(v, budget)
            r = store.subst(b, leaf, j)
        memo[key] = r
        return r

    def solve_all(xs):
        return [unfold(x, depth) for x in xs]

    solve_all.unfold = unfold
    return solve_all


def solve_by_iteration(e: EquationMorphism, depth=None) -> dict:
    """Second solver: iterate substitution from the all-□ map until stable."""
    e.check_guarded()
    store = e.store
    depth = store.depth if depth is None else depth
    cur = {x: CUT for x in e.variables}
    for _ in range(depth + 2):
        def leaf(lab, _j):
            tag, v = lab
            return store.var(v) if tag == "r" else cur[v]
        nxt = {x: store.subst(e.bodies[x], leaf, depth) for x in e.variables}
        if nxt == cur:
            return cur
        cur = nxt
    raise GuardError("iteration did not stabilize; system is not guarded")


def check_solution(e: EquationMorphism, sol: dict, depth=None) -> bool:
    """The solution square: substituting the solution into each body gives it back."""
    store = e.store
    depth = store.depth if depth is None else depth

    def leaf(lab, _j):
        tag, v = lab
        return store.var(v) if tag == "r" else sol[v]

    return all(store.truncate(sol[x], depth) == store.subst(e.bodies[x], leaf, depth)
               for x in e.variables)


def guardedness_factor(store: TreeStore, f) -> tuple:
    """Flatten ``x ↦ tree over {("l", t), ("r", y)}`` into a guarded system body.

    Leaves ``("l", t)`` must carry operation-rooted trees ``t`` over the
    variables; they are spliced in with their leaves tagged ``"l"``.  Returns
    ``(body, factor)`` where ``factor(x)`` is ``("guarded", tree)`` or
    ``("param", y)``, the witness that ``body`` avoids bare variables.
    """
    def body(x):
        t = f(x)

        def leaf(lab, _j):
            tag, v = lab
            if tag == "r":
                return store.var(("r", v))
            if not (isinstance(v, int) and store.is_op(v)):
                raise GuardError(f"leaf {lab!r} of f({x!r}) is not a guarded tree")
            return store.relabel(v, lambda z: ("l", z))
        return store.subst(t, leaf)

    def factor(x):
        b = body(x)
        if store.is_var(b):
            return ("param", store.label(b)[1])
        return ("guarded", b)

    return body, factor


# -- the category -----------------------------------------------------------------

@dataclass(frozen=True)
class Vars:
    names: tuple

    def __str__(self):
        return "{" + ",".join(map(str, self.names)) + "}"


class KMor:
    """A morphism ``dom → cod``: each element of ``cod`` maps to a tree over ``dom``."""

    __slots__ = ("dom", "cod", "_fn", "_memo")

    def __init__(self, dom, cod, fn):
        self.dom, self.cod, self._fn, self._memo = dom, cod, fn, {}

    def at(self, e) -> int:
        r = self._memo.get(e)
        if r is None:
            r = self._fn(e)
            self._memo[e] = r
        return r

    def __repr__(self):
        return f"<{self.dom} → {self.cod}>"


class TreeCategory(GuardedCategory):
    """The opposite Kleisli category of the Σ-tree monad, compared at depth ``k``."""

    unique = True
    product_preserving = False
    sample_size = 10

    def __init__(self, sig: Signature = DEFAULT_SIGNATURE, depth: int = 8, max_vars: int = 3,
                 tree_height: int = 3):
        self.sig = sig
        self.depth = depth
        self.store = TreeStore(depth)
        self.max_vars = max_vars
        self.tree_height = tree_height
        self.name = f"citm@{depth}"
        self._samples = {}

    # carriers --------------------------------------------------------------
    def finite(self, a) -> bool:
        if isinstance(a, Later):
            return False
        if isinstance(a, Prod):
            return self.finite(a.left) and self.finite(a.right)
        return True

    def elements(self, a) -> list:
        if isinstance(a, Unit):
            return []
        if isinstance(a, Vars):
            return list(a.names)
        if isinstance(a, Prod):
            return [("l", x) for x in self.elements(a.left)] + \
                   [("r", y) for y in self.elements(a.right)]
        raise ShapeError(f"{a} has an infinite carrier")

    def empty(self, a) -> bool:
        if isinstance(a, Later):
            return False
        if isinstance(a, Prod):
            return self.empty(a.left) and self.empty(a.right)
        return not self.elements(a)

    def random_element(self, a, rng):
        if isinstance(a, Vars):
            return rng.choice(a.names) if a.names else None
        if isinstance(a, Prod):
            sides = [s for s, o in (("l", a.left), ("r", a.right)) if not self.empty(o)]
            if not sides:
                return None
            s = rng.choice(sides)
            return (s, self.random_element(a.left if s == "l" else a.right, rng))
        if isinstance(a, Later):
            return self.store.random_tree(rng, self.sig, lambda: self.random_element(a.inner, rng),
                                          2, op_rooted=True)
        return None

    def sample(self, a) -> list:
        """Every element of a finite carrier, else a fixed pseudo-random sample."""
        if self.finite(a):
            return self.elements(a)
        s = self._samples.get(a)
        if s is None:
            rng = random.Random(f"sample:{a}:{self.sig}")
            s = []
            for _ in range(self.sample_size):
                e = self.random_element(a, rng)
                if e not in s:
                    s.append(e)
            self._samples[a] = s
        return s

    def size(self, a) -> int:
        return len(self.elements(a)) if self.finite(a) else 50

    # structure ------------------------------------------------------------------
    def identity(self, a):
        return KMor(a, a, self.store.var)

    def compose(self, f, g):
        if f.cod != g.dom:
            raise CompositionError(f.cod, g.dom)
        st = self.store
        return KMor(f.dom, g.cod, lambda c: st.subst(g.at(c), lambda b, _j: f.at(b)))

    def pair(self, f, g):
        if f.dom != g.dom:
            raise CompositionError(f.dom, g.dom)
        return KMor(f.dom, Prod(f.cod, g.cod),
                    lambda e: f.at(e[1]) if e[0] == "l" else g.at(e[1]))

    def proj_left(self, a, b):
        return KMor(Prod(a, b), a, lambda x: self.store.var(("l", x)))

    def proj_right(self, a, b):
        return KMor(Prod(a, b), b, lambda y: self.store.var(("r", y)))

    def bang(self, a):
        return KMor(a, Unit(), _no_elements)

    def point(self, a):
        return KMor(a, Later(a), lambda t: t)

    def delay_mor(self, f):
        st = self.store
        return KMor(Later(f.dom), Later(f.cod),
                    lambda t: st.var(st.subst(t, lambda x, _j: f.at(x))))

    def mor_equal(self, f, g) -> bool:
        if f.dom != g.dom or f.cod != g.cod:
            return False
        return all(f.at(e) == g.at(e) for e in self.sample(f.cod))

    def dagger(self, f):
        x, y = self.fix_shape(f)
        body, _ = guardedness_factor(self.store, f.at)
        unfold = _demand_solver(self.store, _memoize(body)).unfold
        return KMor(y, x, lambda v: unfold(v, self.depth))

    # generation -----------------------------------------------------------------
    def random_object(self, rng, role="any"):
        if rng.random() < 0.08:
            return Unit()
        n = rng.choices(range(self.max_vars + 1), [1, 4, 4, 2][: self.max_vars + 1])[0]
        base = "xyzuvw"[rng.randrange(6)]
        return Vars(tuple(f"{base}{i}" for i in range(n)))

    def random_tree_over(self, a, rng, height=None):
        height = self.tree_height if height is None else height
        return self.store.random_tree(rng, self.sig, lambda: self.random_element(a, rng), height)

    def random_mor(self, a, b, rng):
        if not self.finite(b):
            raise GenerationFailure(f"cannot tabulate a morphism into {b}")
        table = {e: self.random_tree_over(a, rng) for e in self.elements(b)}
        return KMor(a, b, table.__getitem__)

    def from_table(self, a, b, table):
        return KMor(a, b, dict(table).__getitem__)

    def uniform_instance(self, rng, x_obj, y_obj, extra=None, **kw):
        """Instances for uniformity with ``h`` an injective renaming ``X' → X``."""
        xs = self.elements(x_obj)
        m = rng.randint(0, len(xs))
        images = rng.sample(xs, m)
        x2 = Vars(tuple(f"q{i}" for i in range(m)))
        phi = dict(zip(x2.names, images))
        h = KMor(x_obj, x2, lambda q: self.store.var(phi[q]))
        lx2 = Prod(Later(x2), y_obj)
        cod2 = x2 if extra is None else Prod(x2, extra)
        g = self.random_mor(lx2, cod2, rng)

        def rename(t):
            # leaves of g-values are ("l", tree over X') or ("r", y)
            def leaf(lab):
                tag, v = lab
                if tag == "r":
                    return lab
                return ("l", self.store.relabel(v, lambda q: phi[q]))
            return self.store.relabel(t, leaf)

        table = {}
        lx = Prod(Later(x_obj), y_obj)
        if extra is None:
            for q, xi in phi.items():
                table[xi] = rename(g.at(q))
            for xi in xs:
                if xi not in table:
                    table[xi] = self.random_tree_over(lx, rng)
            f = KMor(lx, x_obj, table.__getitem__)
        else:
            for q, xi in phi.items():
                table[("l", xi)] = rename(g.at(("l", q)))
            for b in self.elements(extra):
                table[("r", b)] = rename(g.at(("r", b)))
            for e in self.elements(Prod(x_obj, extra)):
                if e not in table:
                    table[e] = self.random_tree_over(lx, rng)
            f = KMor(lx, Prod(x_obj, extra), table.__getitem__)
        return f, g, h

    def describe(self, f) -> dict:
        return {
            "dom": str(f.dom),
            "cod": str(f.cod),
            "depth": self.depth,
            "table": {_show_label(e, self.store): self.store.show(f.at(e))
                      for e in self.sample(f.cod)},
        }


def _no_elements(e):
    raise ShapeError("the terminal object has no elements")


def _memoize(fn):
    memo = {}

    def wrapped(x):
        r = memo.get(x)
        if r is None:
            r = fn(x)
            memo[x] = r
        return r
    return wrapped


def dagger_citm(cat: TreeCategory, f):
    """The fixpoint of ``f: X → S(S'X + Y)`` (given as a category morphism)."""
    return cat.dagger(f)


# -- text format --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*([(),]|[^\s(),]+)")


def _tokens(s):
    pos, out = 0, []
    s = s.rstrip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise ParseError(f"cannot read {s[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_system(text: str, depth: int = 8):
    """Parse a header line and one ``x = term`` line per variable.

    Returns ``(signature, EquationMorphism)``; a bare-variable right-hand
    side raises :class:`GuardednessError`.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty input")
    header = {}
    for part in lines[0].split(";"):
        if ":" not in part:
            raise ParseError(f"bad header part {part.strip()!r}")
        key, val = part.split(":", 1)
        header[key.strip()] = val.strip()
    for key in ("sig", "vars"):
        if key not in header:
            raise ParseError(f"header lacks '{key}:'")
    syms = []
    for item in filter(None, (s.strip() for s in header["sig"].split(","))):
        name, _, ar = item.rpartition(":")
        if not name or not ar.strip().isdigit():
            raise ParseError(f"bad symbol declaration {item!r}")
        syms.append((name.strip(), int(ar)))
    sig = Signature(tuple(syms))
    variables = tuple(filter(None, (v.strip() for v in header["vars"].split(","))))
    params = tuple(filter(None, (v.strip() for v in header.get("params", "").split(","))))
    clash = set(variables) & set(params) | (set(variables) | set(params)) & set(dict(syms))
    if clash or len(set(variables)) != len(variables) or len(set(params)) != len(params):
        raise ParseError("names of variables, parameters and symbols must be distinct")
    store = TreeStore(depth)
    arity = dict(syms)
    bodies = {}
    for ln in lines[1:]:
        lhs, eq, rhs = ln.partition("=")
        lhs = lhs.strip()
        if not eq or lhs not in variables:
            raise ParseError(f"expected '<variable> = <term>', got {ln!r}")
        if lhs in bodies:
            raise ParseError(f"two equations for {lhs}")
        toks = _tokens(rhs)
        t, rest = _parse_term(toks, 0, store, arity, variables, params)
        if rest != len(toks):
            raise ParseError(f"trailing input in equation for {lhs}")
        bodies[lhs] = store.truncate(t)
    missing = [x for x in variables if x not in bodies]
    if missing:
        raise ParseError(f"no equation for {', '.join(missing)}")
    return sig, EquationMorphism(variables, params, bodies, store).check_guarded()


def _parse_term(toks, i, store, arity, variables, params):
    if i >= len(toks) or toks[i] in "(),":
        raise ParseError("expected a term")
    name = toks[i]
    i += 1
    args = []
    if i < len(toks) and toks[i] == "(":
        i += 1
        if toks[i:i + 1] == [")"]:
            i += 1
        else:
            while True:
                t, i = _parse_term(toks, i, store, arity, variables, params)
                args.append(t)
                if i < len(toks) and toks[i] == ",":
                    i += 1
                    continue
                if i < len(toks) and toks[i] == ")":
                    i += 1
                    break
                raise ParseError("expected ',' or ')'")
    if name in variables or name in params:
        if args:
            raise ParseError(f"{name} is not an operation symbol")
        return store.var(("l" if name in variables else "r", name)), i
    if name not in arity:
        raise ParseError(f"unknown name {name!r}")
    if len(args) != arity[name]:
        raise ParseError(f"{name} expects {arity[name]} arguments, got {len(args)}")
    return store.op(name, args), i


def format_solution(e: EquationMorphism, sol: dict) -> str:
    return "\n".join(f"{x} = {e.store.show(sol[x], lambda v, _s: str(v))}" for x in e.variables)

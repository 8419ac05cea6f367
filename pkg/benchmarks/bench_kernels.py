"""Compare the compiled and pure-Python hom-set search kernels.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Each case enumerates a hom-set exhaustively with both backends, checks that
they return the same solutions, and prints the best wall time of N runs.
"""

from __future__ import annotations

import argparse
import time
from array import array

from guardlab import _kernels_py
from guardlab.core import Later, Prod
from guardlab.cpolift import LiftCategory
from guardlab.posets import chain, diamond
from guardlab.presheaf import PresheafCategory

try:
    from guardlab import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def cases():
    pc = PresheafCategory(chain(3))
    s = pc.constant("ab")
    t = pc.constant("abc")
    yield "presheaf chain3: ▶{ab} x {abc} -> {abc}", pc, Prod(Later(s), t), t
    pd = PresheafCategory(diamond())
    u = pd.constant("ab")
    yield "presheaf diamond: {ab} x {ab} -> {ab}", pd, Prod(u, u), u
    lc = LiftCategory()
    c3 = chain(3)
    yield "lift: 3-chain_⊥ x 3-chain -> 3-chain", lc, Prod(Later(c3), c3), c3
    d = diamond()
    yield "lift: diamond x diamond -> diamond", lc, Prod(d, d), d


def run(backend, cat, prob):
    cand_start, cand = array("i", [0]), array("i")
    for c in prob.cands:
        cand.extend(c)
        cand_start.append(len(cand))
    return backend.search(prob.n, prob.nc, cand_start, cand, prob.cons_start, prob.cons_a,
                          prob.cons_m, prob.mats, 10 ** 7, 10 ** 9)


def best_time(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels_c is None:
        print("compiled kernels not built; only the Python backend is timed")
    print(f"{'case':<46} {'homs':>8} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for label, cat, a, b in cases():
        prob = cat.hom_problem(a, b)
        tp, (sols_p, _) = best_time(lambda: run(_kernels_py, cat, prob), args.repeat)
        if _kernels_c is not None:
            tc, (sols_c, _) = best_time(lambda: run(_kernels_c, cat, prob), args.repeat)
            if [tuple(s) for s in sols_c] != [tuple(s) for s in sols_p]:
                raise SystemExit(f"backends disagree on {label}")
            print(f"{label:<46} {len(sols_p):>8} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x")
        else:
            print(f"{label:<46} {len(sols_p):>8} {tp:>10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()

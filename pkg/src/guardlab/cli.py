"""Command line: ``guardlab laws``, ``guardlab solve`` and ``guardlab search``.

Exit codes: ``laws`` returns 0 when no applicable law failed and 1 otherwise;
``solve`` returns 1 on an unguarded system; ``search`` returns 0 whatever it
finds.  Bad arguments give 2.  JSON output is written with sorted keys so a
fixed configuration and seed always produce the same bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

from .citm import GuardednessError, ParseError, check_solution, format_solution, parse_system, solve
from .core import FAIL
from .laws import LAWS, applicability, resolve_laws, run_law
from .models import MODEL_NAMES, build_models, parse_sizes
from .search import TARGETS, search_counterexample


class UsageError(Exception):
    pass


def _dump(doc, fmt, text_fn) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return text_fn(doc)


def _emit(out_path, content: str):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(content)
    else:
        sys.stdout.write(content)


def _laws_text(doc) -> str:
    lines = []
    for r in doc["reports"]:
        line = (f"{r['model']:<10} {r['law']:<10} {r['status']:<15} "
                f"trials={r['trials']} failures={r['failures']} discarded={r['discarded']}")
        if r["notes"]:
            line += "  # " + "; ".join(r["notes"])
        lines.append(line)
    lines.append("result: " + ("FAIL" if doc["failed"] else "ok"))
    return "\n".join(lines) + "\n"


def cmd_laws(args) -> int:
    if args.trials is None:
        args.trials = 200
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    if args.depth is not None and args.depth < 1:
        raise UsageError("--depth must be at least 1")
    try:
        names = resolve_laws(args.laws)
    except KeyError as exc:
        raise UsageError(f"unknown law or group {exc.args[0]!r}") from None
    try:
        models = build_models(args.model, parse_sizes(args.sizes), args.depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    reports = []
    for model in models:
        for name in names:
            if args.laws is None and not applicability(model, LAWS[name])[0]:
                continue
            reports.append(run_law(model, name, args.trials, args.seed).to_json())
    failed = any(r["status"] == FAIL for r in reports)
    doc = {
        "config": {"model": args.model, "laws": args.laws or "all", "trials": args.trials,
                   "seed": args.seed, "depth": args.depth, "sizes": parse_sizes(args.sizes)},
        "reports": reports,
        "failed": failed,
    }
    _emit(args.out, _dump(doc, args.format, _laws_text))
    return 1 if failed else 0


def cmd_solve(args) -> int:
    depth = 8 if args.depth is None else args.depth
    if depth < 1:
        raise UsageError("--depth must be at least 1")
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    try:
        _, system = parse_system(text, depth)
    except GuardednessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    sol = solve(system, depth)
    ok = check_solution(system, sol, depth) if args.check else None
    if args.format == "json":
        doc = {"depth": depth,
               "solution": {x: system.store.show(sol[x], lambda v, _s: str(v))
                            for x in system.variables}}
        if ok is not None:
            doc["check"] = ok
        content = _dump(doc, "json", None)
    else:
        content = format_solution(system, sol) + "\n"
        if ok is not None:
            content += f"# solution square at depth {depth}: {'holds' if ok else 'FAILS'}\n"
    _emit(args.out, content)
    return 0 if ok is not False else 1


def _search_text(doc) -> str:
    lines = [f"target {doc['target']} on {doc['model']} ({doc['dagger']} dagger), "
             f"budget {doc['budget']}, seed {doc['seed']}"]
    for status, n in sorted(doc["draws"].items()):
        lines.append(f"  {status}: {n}")
    for f in doc["findings"]:
        lines.append(f"  candidate at draw {f['draw']}: {json.dumps(f['witness'], sort_keys=True, ensure_ascii=False)}")
    lines.append(doc["summary"])
    return "\n".join(lines) + "\n"


def cmd_search(args) -> int:
    budget = 100 if args.trials is None else args.trials
    if budget < 0:
        raise UsageError("--trials must be non-negative")
    opts = parse_sizes(args.sizes)
    unknown = set(opts) - {"dagger"}
    if unknown:
        raise UsageError(f"unknown size keys for search: {', '.join(sorted(unknown))}")
    mode = opts.get("dagger", "perturbed")
    if mode not in ("perturbed", "least"):
        raise UsageError("dagger must be 'perturbed' or 'least'")
    doc = search_counterexample(args.target, budget, args.seed, perturb=mode == "perturbed")
    _emit(args.out, _dump(doc, args.format, _search_text))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="guardlab", description="Guarded fixpoint laboratory.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default="json"):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--depth", type=int, default=None, help="tree depth for the citm model")
        sp.add_argument("--sizes", default=None, help="key=value,... model size overrides")
        sp.add_argument("--out", default=None, help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("json", "text"), default=fmt_default)

    lp = sub.add_parser("laws", help="run law suites on a model")
    lp.add_argument("--model", choices=MODEL_NAMES, default="presheaf")
    lp.add_argument("--laws", default=None, help="comma-separated laws or groups")
    lp.add_argument("--trials", type=int, default=None)
    common(lp)
    lp.set_defaults(run=cmd_laws)

    sp = sub.add_parser("solve", help="solve a guarded equation system over trees")
    sp.add_argument("file")
    sp.add_argument("--check", action="store_true", help="verify the solution square")
    common(sp, "text")
    sp.set_defaults(run=cmd_solve)

    cp = sub.add_parser("search", help="search for counterexamples to open implications")
    cp.add_argument("target", choices=sorted(TARGETS))
    cp.add_argument("--trials", type=int, default=None, help="number of draws (budget)")
    common(cp)
    cp.set_defaults(run=cmd_search)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except UsageError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())

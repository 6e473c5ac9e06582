"""``mec`` command line: solve, gen, experiment, search, verify.

Exit codes: 0 ok, 1 input/parse error, 2 not a tree, 3 oracle budget
exceeded, 4 an inequality was violated (theorem-falsifying), 5 invalid
solution passed to ``verify``.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .algorithms import algorithm1, best_of, kk_greedy
from .bounds import rank_weights
from .experiment import evaluate_instance, run_campaign, summarize, to_csv
from .graph import (
    ColoringSolution,
    InstanceError,
    NotATree,
    WeightedGraph,
    parse_instance,
    parse_solution,
    serialize_instance,
    validate_solution,
    validate_tree,
)
from .instances import TheoremViolation, gen_alg1_worst, gen_random_tree, search_combined_worst
from .oracle import OracleBudgetExceeded, default_budget, exact_mec

log = logging.getLogger("mec")

EXIT_OK, EXIT_PARSE, EXIT_NOT_TREE, EXIT_BUDGET, EXIT_VIOLATION, EXIT_INVALID = range(6)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _read_instance(path: str) -> WeightedGraph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_instance(text)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _solution_dict(s: ColoringSolution) -> dict:
    return {
        "classes": [sorted(c) for c in s.classes],
        "class_weights": list(s.class_weights),
        "total": s.total,
        "num_classes": s.num_classes,
    }


def _text_report(d: dict) -> str:
    lines = [f"algorithm: {d['algorithm']}"]
    if "chosen" in d:
        lines.append(f"chosen: {d['chosen']}")
    for i, (c, w) in enumerate(zip(d["classes"], d["class_weights"]), start=1):
        lines.append(f"class {i} (weight {w}): {' '.join(map(str, c))}")
    lines.append(f"total: {d['total']}")
    lines.append(f"y_profile: {' '.join(map(str, d['y_profile']))}")
    lines.append(f"lower_bound: {d['lower_bound']}")
    if "opt" in d:
        lines.append(f"opt: {d['opt']} (nodes explored {d['nodes_explored']})")
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    g = _read_instance(args.input)
    prof = rank_weights(g)
    out: dict = {"algorithm": args.alg, "n": g.n, "m": g.m, "delta": prof.delta}
    if args.alg in ("alg1", "best"):
        t = validate_tree(g, args.root)
        out["root"] = args.root
        if args.alg == "alg1":
            sol, _ = algorithm1(t)
        else:
            sol, tag = best_of(t)
            out["chosen"] = tag
    elif args.alg == "kk":
        sol, _ = kk_greedy(g)
    else:
        cert = exact_mec(g, args.budget)
        sol = cert.solution
        out["opt"] = cert.opt
        out["s_star"] = cert.s_star
        out["nodes_explored"] = cert.nodes_explored
    out.update(_solution_dict(sol))
    out["y_profile"] = list(prof.y)
    out["lower_bound"] = sum(prof.y)
    if args.format == "json":
        _emit(json.dumps(out, indent=2) + "\n", args.output)
    else:
        _emit(_text_report(out), args.output)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.family == "random":
        g = gen_random_tree(args.n, args.wmin, args.wmax, args.seed)
    else:
        g = gen_alg1_worst(args.C, args.eps)
    _emit(serialize_instance(g), args.output)
    return EXIT_OK


def cmd_experiment(args) -> int:
    if args.with_oracle and args.nmax - 1 > args.oracle_cap:
        raise InstanceError(
            f"--with-oracle needs --nmax <= {args.oracle_cap + 1} (oracle cap {args.oracle_cap} edges)"
        )
    records = run_campaign(
        args.trials,
        args.nmin,
        args.nmax,
        args.wmin,
        args.wmax,
        args.seed,
        with_oracle=args.with_oracle,
        budget=args.budget,
        root=args.root,
    )
    summary = summarize(records, args.with_oracle)
    if args.output:
        Path(args.output).write_text(to_csv(records))
        Path(args.output).with_suffix(".summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    else:
        sys.stdout.write(to_csv(records))
    sys.stderr.write(json.dumps(summary, indent=2) + "\n")
    if summary["oracle_skipped"]:
        log.warning("%d instance(s) skipped by the oracle (budget)", summary["oracle_skipped"])
    return EXIT_VIOLATION if summary["violation_count"] else EXIT_OK


def _parse_levels(s: str) -> list[int]:
    try:
        levels = [int(x) for x in s.replace(",", " ").split()]
    except ValueError:
        raise InstanceError(f"bad --levels {s!r}") from None
    if not levels or min(levels) < 1:
        raise InstanceError("--levels needs positive integer weights")
    return levels


def cmd_search(args) -> int:
    levels = _parse_levels(args.levels)
    try:
        res = search_combined_worst(
            args.max_edges, levels, args.budget, seed=args.seed, samples=args.samples, climb_steps=args.steps
        )
    except TheoremViolation as exc:
        target = Path(args.output or "search").with_suffix(".counterexample.txt")
        target.write_text(serialize_instance(exc.graph))
        log.error("ratio %s exceeds 3/2; counterexample archived at %s", exc.ratio, target)
        return EXIT_VIOLATION
    doc = res.to_json()
    doc.update({"levels": levels, "max_edges": args.max_edges, "seed": args.seed, "budget": args.budget})
    _emit(json.dumps(doc, indent=2) + "\n", args.output)
    if res.budget_exhausted:
        log.warning("oracle budget exhausted after %d instances; result is best effort", res.evaluated)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _read_instance(args.input)
    classes = parse_solution(Path(args.solution).read_text())
    for c in classes:
        for e in c:
            if not 0 <= e < g.m:
                print(json.dumps({"valid": False, "violation": f"unknown edge {e}"}))
                return EXIT_INVALID
    sol = ColoringSolution.from_classes(g, classes)
    bad = validate_solution(g, sol)
    prof = rank_weights(g)
    lb = sum(prof.y)
    report: dict = {
        "valid": bad is None,
        "total": sol.total,
        "num_classes": sol.num_classes,
        "delta": prof.delta,
        "y_profile": list(prof.y),
        "lower_bound": lb,
        "above_lower_bound": sol.total >= lb,
        "ratio_vs_lower_bound": float(Fraction(sol.total, lb)) if lb else None,
    }
    if bad is not None:
        report["violation"] = {"kind": bad.kind, "message": bad.message, "class": bad.class_index, "edges": list(bad.edges)}
        print(json.dumps(report, indent=2))
        return EXIT_INVALID
    try:
        t = validate_tree(g, args.root)
    except NotATree:
        t = None
    report["is_tree"] = t is not None
    if t is not None:
        rec = evaluate_instance(g, args.root, args.with_oracle, args.budget)
        report.update(
            w_alg1=rec.w_alg1,
            w_kk=rec.w_kk,
            w_best=rec.w_best,
            checks={k: v for k, v in rec.checks.items() if v is not None},
        )
        if rec.opt is not None:
            report["opt"] = rec.opt
            report["ratio_vs_opt"] = float(Fraction(sol.total, rec.opt)) if rec.opt else None
            report["above_opt"] = sol.total >= rec.opt
        print(json.dumps(report, indent=2))
        return EXIT_VIOLATION if rec.violations else EXIT_OK
    if args.with_oracle:
        cert = exact_mec(g, args.budget)
        report["opt"] = cert.opt
        report["above_opt"] = sol.total >= cert.opt
    print(json.dumps(report, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mec", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="color one instance")
    s.add_argument("input", nargs="?", default=None)
    s.add_argument("--input", dest="input_flag")
    s.add_argument("--alg", choices=["alg1", "kk", "best", "exact"], default="best")
    s.add_argument("--root", type=int, default=0)
    s.add_argument("--format", choices=["json", "text"], default="json")
    s.add_argument("--output")
    s.add_argument("--budget", type=int, default=None)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("gen", help="write a generated instance")
    s.add_argument("--family", choices=["random", "alg1-worst"], default="random")
    s.add_argument("--n", type=int, default=8)
    s.add_argument("--wmin", type=int, default=1)
    s.add_argument("--wmax", type=int, default=10)
    s.add_argument("--C", type=int, default=100)
    s.add_argument("--eps", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("experiment", help="batch ratio campaign on random trees")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--nmin", type=int, default=2)
    s.add_argument("--nmax", type=int, default=10)
    s.add_argument("--wmin", type=int, default=1)
    s.add_argument("--wmax", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--root", type=int, default=0)
    s.add_argument("--with-oracle", action="store_true")
    s.add_argument("--oracle-cap", type=int, default=9, help="max edges when the oracle is on")
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--output", help="CSV path; the summary goes next to it as .summary.json")
    s.set_defaults(func=cmd_experiment)

    s = sub.add_parser("search", help="search for trees with a high combined ratio")
    s.add_argument("--max-edges", type=int, default=12)
    s.add_argument("--levels", default="1,999,1000")
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--samples", type=int, default=2000)
    s.add_argument("--steps", type=int, default=2000)
    s.add_argument("--output")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("verify", help="check a solution file against an instance")
    s.add_argument("input", nargs="?", default=None)
    s.add_argument("--input", dest="input_flag")
    s.add_argument("--solution", required=True)
    s.add_argument("--root", type=int, default=0)
    s.add_argument("--with-oracle", action="store_true")
    s.add_argument("--budget", type=int, default=None)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    if hasattr(args, "input_flag"):
        args.input = args.input_flag or args.input
        if args.input is None:
            parser.error("an instance path is required (positional or --input; '-' for stdin)")
    if hasattr(args, "budget") and args.budget is None:
        args.budget = default_budget()
    try:
        return args.func(args)
    except (InstanceError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_PARSE
    except NotATree as exc:
        log.error("not a tree: %s", exc)
        return EXIT_NOT_TREE
    except OracleBudgetExceeded as exc:
        log.error("%s", exc)
        return EXIT_BUDGET
    except ValueError as exc:
        log.error("%s", exc)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line driver.

Exit codes: 0 success, 1 parse error or infeasible/invalid input,
2 search budget exhausted without a proof.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import generators
from .bounds import approximation_certificate
from .core import OutageFlowError, check_instance, evaluate_schedule
from .exact import DEFAULT_BUDGET, BudgetExceeded
from .io import emit_instance, parse_instance, parse_schedule
from .solve import STRATEGIES, bounds_json, emit_report, solve
from .sp import build_sp_tree, is_series_parallel
from .structure import classify_instance, jobs_cover_min_cut, single_node_analysis


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load(path: str):
    return check_instance(parse_instance(_read(path)))


def cmd_solve(args) -> int:
    code = 0
    for i, path in enumerate(args.files):
        inst = _load(path)
        report = solve(inst, strategy=args.strategy, budget=args.budget)
        if len(args.files) > 1 and args.format == "human":
            print(f"== {path}")
        sys.stdout.write(emit_report(report, args.format, include_timings=args.timings))
        code = max(code, report.exit_code)
    return code


def cmd_bound(args) -> int:
    inst = _load(args.file)
    b = approximation_certificate(inst)
    if args.format == "json":
        print(json.dumps(bounds_json(b), indent=2, sort_keys=True))
    else:
        print(f"F  {b.base_flow_F}")
        print(f"L  {b.lower_L}  (all jobs in period 1)")
        print(f"U  {b.upper_U}  (cut {' '.join(sorted(b.witness_cut_U))})")
        print(f"L/U {b.ratio_floor}  >= (T-1)/T = {b.guarantee}")
    return 0


def cmd_analyze(args) -> int:
    inst = _load(args.file)
    cls = classify_instance(inst)
    data = {"flags": cls.flags(), "recommended_strategy": cls.recommended_strategy.value}
    if inst.is_unit_jobs():
        prof = single_node_analysis(inst)
        if prof is not None:
            data["single_node"] = {
                "node": prof.node,
                "c1_in": prof.c1_in,
                "c1_out": prof.c1_out,
                "c2_in": prof.c2_in,
                "c2_out": prof.c2_out,
                "condition_i": prof.condition_i,
                "condition_ii": prof.condition_ii,
                "closed_form_value": prof.closed_form_value,
            }
        covers, cut = jobs_cover_min_cut(inst)
        data["jobs_cover_min_cut"] = sorted(cut) if covers else None
    if is_series_parallel(inst.network):
        data["sp_tree"] = str(build_sp_tree(inst.network))
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        for k, v in data.items():
            print(f"{k}: {v}")
    return 0


def cmd_evaluate(args) -> int:
    inst = _load(args.file)
    schedule = parse_schedule(_read(args.schedule))
    rep = evaluate_schedule(inst, schedule)
    if args.format == "json":
        print(json.dumps({"total": rep.total, "per_period": rep.values}, sort_keys=True))
    else:
        for i, v in enumerate(rep.values, 1):
            print(f"period {i}: {v}")
        print(f"total {rep.total}")
    return 0


def cmd_generate(args) -> int:
    kind = args.kind
    params = {}
    if kind == "tight-ratio":
        params["T"] = args.T or 2
    elif kind == "partition":
        params["D"] = _ints(args.D or "")
    elif kind == "three-partition":
        params["B"] = args.B
        params["d"] = _ints(args.d or "")
    elif kind.startswith("random"):
        params["seed"] = args.seed
        params["T"] = args.T or 3
        if kind == "random-sp":
            params.update(m=args.m, capmax=args.capmax)
        elif kind == "random-balanced-sp":
            params.update(m=args.m, value=args.value)
        elif kind == "random-single-node":
            params.update(n_in=args.n_in, n_out=args.n_out, capmax=args.capmax)
        elif kind == "random-uniform":
            params.update(n=args.n, density=args.density, max_jobs=args.max_jobs)
    inst = generators.generate(kind, **params)
    text = emit_instance(inst, comment=f"generated: {kind} {params}")
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="outageflow", description="Maintenance outage scheduling for maximum throughput.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve one or more instance files")
    s.add_argument("files", nargs="+", metavar="FILE")
    s.add_argument("--strategy", choices=STRATEGIES, default="auto")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--format", choices=("human", "json"), default="human")
    s.add_argument("--timings", action="store_true", help="include wall-clock timings (not deterministic)")
    s.set_defaults(func=cmd_solve)

    for name, func, helptext in (
        ("bound", cmd_bound, "report L, U and the approximation certificate"),
        ("analyze", cmd_analyze, "classify the instance"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("file", metavar="FILE")
        s.add_argument("--format", choices=("human", "json"), default="human")
        s.set_defaults(func=func)

    s = sub.add_parser("evaluate", help="evaluate a schedule file")
    s.add_argument("file", metavar="FILE")
    s.add_argument("--schedule", required=True, metavar="FILE")
    s.add_argument("--format", choices=("human", "json"), default="human")
    s.set_defaults(func=cmd_evaluate)

    s = sub.add_parser("generate", help="write a fixture or random instance")
    s.add_argument("kind", choices=sorted(generators.GENERATORS))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--T", type=int)
    s.add_argument("--D", help="partition values, e.g. 1,2,3")
    s.add_argument("--B", type=int)
    s.add_argument("--d", help="3-partition values")
    s.add_argument("--m", type=int, default=8)
    s.add_argument("--n", type=int, default=6)
    s.add_argument("--capmax", type=int, default=10)
    s.add_argument("--value", type=int, default=10)
    s.add_argument("--n-in", type=int, default=3)
    s.add_argument("--n-out", type=int, default=3)
    s.add_argument("--density", type=float, default=0.35)
    s.add_argument("--max-jobs", type=int, default=1)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OutageFlowError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Strategy dispatch and solve reports."""

from __future__ import annotations

import enum
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import BoundReport, approximation_certificate
from .core import Instance, Schedule, check_instance, evaluate_schedule
from .exact import DEFAULT_BUDGET, branch_and_bound_solve, brute_force_solve
from .sp import sp_solve
from .structure import InstanceClass, Strategy, classify_instance, single_node_analysis
from .uniform import solve_uniform

SCHEMA = "outageflow.report/1"

# CLI strategy names
STRATEGIES = ("auto", "sp", "uniform", "exact", "bnb", "heuristic")


class ProofStatus(str, enum.Enum):
    OPTIMAL = "Optimal"
    BOUND_CERTIFIED = "BoundCertified"
    HEURISTIC = "Heuristic"


@dataclass
class SolveReport:
    instance: Instance
    classification: InstanceClass
    strategy: str
    optimum: int
    schedule: Schedule
    per_period: list[int]
    bounds: BoundReport | None
    status: ProofStatus
    budget_exhausted: bool = False
    notes: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def vector(self) -> list[int]:
        return sorted(self.per_period, reverse=True)

    @property
    def exit_code(self) -> int:
        return 2 if self.budget_exhausted else 0


def _status_from_bounds(value: int, bounds: BoundReport | None) -> ProofStatus:
    if bounds is not None and value == bounds.upper_U:
        return ProofStatus.BOUND_CERTIFIED
    return ProofStatus.HEURISTIC


def solve(instance: Instance, strategy: str = "auto", budget: int = DEFAULT_BUDGET) -> SolveReport:
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    timings = {}
    t0 = time.perf_counter()
    check_instance(instance)
    cls = classify_instance(instance)
    bounds = approximation_certificate(instance) if cls.unit_jobs else None
    timings["analysis"] = time.perf_counter() - t0

    notes = []
    exhausted = False
    t0 = time.perf_counter()
    if strategy == "auto":
        chosen = cls.recommended_strategy
        if chosen is Strategy.EXACT_SEARCH:
            strategy = "bnb" if cls.unit_jobs else "exact"
    else:
        chosen = {
            "sp": Strategy.SP_DYNAMIC_PROGRAM,
            "uniform": Strategy.UNIFORM_FLOW,
            "exact": Strategy.EXACT_SEARCH,
            "bnb": Strategy.EXACT_SEARCH,
            "heuristic": Strategy.SAME_PERIOD,
        }[strategy]

    if chosen is Strategy.CLOSED_FORM:
        schedule = Schedule.same_period(instance)
        status = ProofStatus.OPTIMAL
        notes.append(f"closed form value {single_node_analysis(instance).closed_form_value}")
    elif chosen is Strategy.SAME_PERIOD:
        instance.require_unit_jobs()
        schedule = bounds.witness_schedule if bounds else Schedule.same_period(instance)
        if strategy == "heuristic":
            status = _status_from_bounds(bounds.lower_L, bounds)
        else:
            status = ProofStatus.OPTIMAL
            notes.append("jobs contain a minimum cut" if cls.jobs_cover_min_cut else "balanced series-parallel network")
    elif chosen is Strategy.UNIFORM_FLOW:
        sol = solve_uniform(instance)
        schedule = sol.schedule
        status = ProofStatus.OPTIMAL
        if sol.capacity != 1:
            notes.append(f"unit-capacity solution scaled by common capacity {sol.capacity}")
    elif chosen is Strategy.SP_DYNAMIC_PROGRAM:
        sol = sp_solve(instance)
        schedule = sol.schedule
        status = ProofStatus.OPTIMAL
        notes.append(f"longest vector list {sol.max_list_length}")
    elif strategy == "exact":
        _, schedule = brute_force_solve(instance, budget)
        status = ProofStatus.OPTIMAL
    else:
        _, schedule, stats = branch_and_bound_solve(instance, budget)
        notes.append(f"nodes explored {stats.nodes_explored}, pruned {stats.prunes_by_bound}")
        if stats.proven_optimal:
            status = ProofStatus.OPTIMAL
        else:
            exhausted = True
            status = _status_from_bounds(stats.optimum, bounds)
            if status is ProofStatus.BOUND_CERTIFIED:
                exhausted = False
            notes.append("node budget exhausted")
    timings["solve"] = time.perf_counter() - t0

    report = evaluate_schedule(instance, schedule)
    return SolveReport(
        instance=instance,
        classification=cls,
        strategy=chosen.value + (f":{strategy}" if strategy in ("exact", "bnb", "heuristic") else ""),
        optimum=report.total,
        schedule=schedule,
        per_period=report.values,
        bounds=bounds,
        status=status,
        budget_exhausted=exhausted,
        notes=notes,
        timings=timings,
    )


def _rational(q: Fraction) -> dict[str, int]:
    return {"num": q.numerator, "den": q.denominator}


def bounds_json(b: BoundReport) -> dict:
    return {
        "F": b.base_flow_F,
        "F_without_jobs": b.flow_without_jobs,
        "L": b.lower_L,
        "U": b.upper_U,
        "U_cut": sorted(b.witness_cut_U),
        "guarantee": _rational(b.guarantee),
        "ratio_floor": _rational(b.ratio_floor),
    }


def report_json(report: SolveReport, include_timings: bool = False) -> dict:
    inst = report.instance
    out = {
        "schema": SCHEMA,
        "instance": {
            "nodes": len(inst.network.nodes),
            "arcs": len(inst.network.arcs),
            "job_arcs": len(inst.jobs),
            "jobs": sum(inst.jobs.values()),
            "horizon": inst.horizon,
            "flags": report.classification.flags(),
            "recommended_strategy": report.classification.recommended_strategy.value,
        },
        "strategy": report.strategy,
        "status": report.status.value,
        "optimum": report.optimum,
        "vector": report.vector,
        "per_period": report.per_period,
        "schedule": report.schedule.as_lists(),
        "bounds": bounds_json(report.bounds) if report.bounds else None,
        "budget_exhausted": report.budget_exhausted,
        "notes": report.notes,
    }
    if include_timings:
        out["timings"] = {k: round(v, 6) for k, v in report.timings.items()}
    return out


def emit_report(report: SolveReport, format: str = "human", include_timings: bool = False) -> str:
    if format == "json":
        return json.dumps(report_json(report, include_timings), indent=2, sort_keys=True) + "\n"
    if format != "human":
        raise ValueError(f"unknown format {format!r}")
    lines = [
        f"strategy   {report.strategy}",
        f"status     {report.status.value}",
        f"optimum    {report.optimum}",
        f"vector     ({', '.join(map(str, report.vector))})",
    ]
    if report.bounds:
        b = report.bounds
        lines.append(
            f"bounds     L={b.lower_L} U={b.upper_U} F={b.base_flow_F} "
            f"L/U={b.ratio_floor} (guarantee {b.guarantee})"
        )
    lines.append("")
    lines.append("period  flow  outages")
    for i, v in enumerate(report.per_period, 1):
        down = " ".join(sorted(report.schedule.down_in(i))) or "-"
        lines.append(f"{i:>6}  {v:>4}  {down}")
    for note in report.notes:
        lines.append(f"note: {note}")
    if include_timings:
        for k, v in report.timings.items():
            lines.append(f"time {k}: {v:.4f}s")
    return "\n".join(lines) + "\n"

"""Scheduling unit-duration arc outages to maximise s-t throughput over time."""

from .bounds import (
    BoundReport,
    NotACut,
    approximation_certificate,
    cut_bound,
    lower_bound_same_period,
    upper_bound_U,
)
from .core import (
    Arc,
    EvaluationReport,
    FlowResult,
    Instance,
    InvalidInstance,
    InvalidSchedule,
    Network,
    OutageFlowError,
    Schedule,
    UnknownArc,
    UnsupportedMultiplicity,
    Violation,
    evaluate_schedule,
    max_flow,
    validate_instance,
)
from .exact import BudgetExceeded, SearchStats, branch_and_bound_solve, brute_force_solve
from .generators import generate
from .io import ParseError, emit_instance, emit_schedule, parse_instance, parse_schedule
from .solve import ProofStatus, SolveReport, emit_report, solve
from .sp import NotSeriesParallel, SpTree, build_sp_tree, compose_vector_lists, sp_solve
from .structure import (
    InstanceClass,
    SingleNodeProfile,
    Strategy,
    classify_instance,
    is_balanced,
    jobs_cover_min_cut,
    single_node_analysis,
)
from .uniform import (
    AggregatedFlow,
    NonUniformCapacity,
    acyclify_flow,
    aggregated_max_flow,
    extract_covering_paths,
    solve_uniform,
)

__version__ = "0.1.0"

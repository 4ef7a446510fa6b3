"""Cut bounds on the optimal total throughput and the same-period heuristic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Instance,
    OutageFlowError,
    Schedule,
    UnknownArc,
    check_instance,
    max_flow,
)


class NotACut(OutageFlowError, ValueError):
    pass


@dataclass(frozen=True)
class BoundReport:
    lower_L: int
    upper_U: int
    base_flow_F: int
    flow_without_jobs: int
    ratio_floor: Fraction
    guarantee: Fraction
    witness_schedule: Schedule
    witness_cut_U: frozenset[str]

    @property
    def tight(self) -> bool:
        return self.lower_L == self.upper_U


def cut_bound(instance: Instance, cut) -> int:
    """Cut bound: T * (non-job cut capacity) + (T-1) * (job cut capacity)."""
    check_instance(instance)
    net = instance.network
    cut = frozenset(cut)
    ids = set(net.arc_ids)
    for a in cut:
        if a not in ids:
            raise UnknownArc(a)
    if max_flow(net, cut).value != 0:
        raise NotACut(f"arcs {sorted(cut)} do not separate source from sink")
    T = instance.horizon
    caps = net.capacity_map()
    return sum((T - 1 if a in instance.jobs else T) * caps[a] for a in cut)


def reweighted_capacities(instance: Instance) -> dict[str, int]:
    """Arc weights T*u_a, minus u_a once for job arcs."""
    T = instance.horizon
    return {a.id: (T - 1 if a.id in instance.jobs else T) * a.capacity for a in instance.network.arcs}


def upper_bound_U(instance: Instance) -> tuple[int, frozenset[str]]:
    check_instance(instance)
    r = max_flow(instance.network, capacities=reweighted_capacities(instance))
    return r.value, r.min_cut


def lower_bound_same_period(instance: Instance) -> tuple[int, Schedule]:
    """Value of scheduling every job in period 1, with that schedule."""
    check_instance(instance)
    instance.require_unit_jobs()
    net = instance.network
    F = max_flow(net).value
    F_down = max_flow(net, instance.jobs).value
    return (instance.horizon - 1) * F + F_down, Schedule.same_period(instance)


def approximation_certificate(instance: Instance) -> BoundReport:
    check_instance(instance)
    instance.require_unit_jobs()
    T = instance.horizon
    net = instance.network
    F = max_flow(net).value
    F_down = max_flow(net, instance.jobs).value
    L = (T - 1) * F + F_down
    U, cut = upper_bound_U(instance)
    # L = U = 0 only when nothing can flow; the heuristic is then optimal
    ratio = Fraction(L, U) if U else Fraction(1)
    return BoundReport(
        lower_L=L,
        upper_U=U,
        base_flow_F=F,
        flow_without_jobs=F_down,
        ratio_floor=ratio,
        guarantee=Fraction(T - 1, T),
        witness_schedule=Schedule.same_period(instance),
        witness_cut_U=cut,
    )

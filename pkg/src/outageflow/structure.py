"""Structural tests that certify when the same-period schedule is optimal,
and the strategy dispatch built on them."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import Instance, Network, check_instance, max_flow


class Strategy(str, enum.Enum):
    CLOSED_FORM = "ClosedForm"
    SAME_PERIOD = "SamePeriod"
    SP_DYNAMIC_PROGRAM = "SpDynamicProgram"
    UNIFORM_FLOW = "UniformFlow"
    EXACT_SEARCH = "ExactSearch"


@dataclass(frozen=True)
class SingleNodeProfile:
    node: str
    c1_in: int
    c1_out: int
    c2_in: int
    c2_out: int
    condition_i: bool
    condition_ii: bool
    closed_form_value: int | None


@dataclass(frozen=True)
class InstanceClass:
    balanced: bool
    single_transhipment_node: bool
    series_parallel: bool
    uniform_capacity: bool
    jobs_cover_min_cut: bool
    unit_jobs: bool
    closed_form: bool
    recommended_strategy: Strategy

    def flags(self) -> dict[str, bool]:
        return {
            "balanced": self.balanced,
            "single_transhipment_node": self.single_transhipment_node,
            "series_parallel": self.series_parallel,
            "uniform_capacity": self.uniform_capacity,
            "jobs_cover_min_cut": self.jobs_cover_min_cut,
            "unit_jobs": self.unit_jobs,
            "closed_form": self.closed_form,
        }


def is_balanced(network: Network) -> bool:
    return all(
        sum(a.capacity for a in network.in_arcs(v)) == sum(a.capacity for a in network.out_arcs(v))
        for v in network.transhipment_nodes()
    )


def uniform_capacity(network: Network) -> int | None:
    """The common arc capacity if all arcs share one positive value."""
    caps = {a.capacity for a in network.arcs}
    if len(caps) == 1:
        (c,) = caps
        if c >= 1:
            return c
    return None


def _single_node(network: Network) -> str | None:
    inner = network.transhipment_nodes()
    if len(inner) != 1:
        return None
    (v,) = inner
    s, t = network.source, network.sink
    if all((a.tail, a.head) in ((s, v), (v, t)) for a in network.arcs):
        return v
    return None


def single_node_analysis(instance: Instance) -> SingleNodeProfile | None:
    """Capacity profile around the only transhipment node, or None if the
    network is not of the form s -> v -> t (parallel arcs allowed)."""
    instance.require_unit_jobs()
    net = instance.network
    v = _single_node(net)
    if v is None:
        return None
    J = instance.jobs
    ins, outs = net.in_arcs(v), net.out_arcs(v)
    c1_in = sum(a.capacity for a in ins)
    c1_out = sum(a.capacity for a in outs)
    c2_in = sum(a.capacity for a in ins if a.id not in J)
    c2_out = sum(a.capacity for a in outs if a.id not in J)
    cond_i = c1_in <= c1_out and c2_in <= c2_out
    cond_ii = c1_out <= c1_in and c2_out <= c2_in
    value = None
    if cond_i or cond_ii:
        value = min(c2_in, c2_out) + (instance.horizon - 1) * min(c1_in, c1_out)
    return SingleNodeProfile(v, c1_in, c1_out, c2_in, c2_out, cond_i, cond_ii, value)


def jobs_cover_min_cut(instance: Instance) -> tuple[bool, frozenset[str] | None]:
    """Whether some minimum cut consists of job arcs only.

    Non-job arcs are inflated beyond any finite cut; a min cut of the
    inflated network with the original value can then only use job arcs.
    """
    instance.require_unit_jobs()
    net = instance.network
    F = max_flow(net).value
    big = net.total_capacity() + 1
    caps = {a.id: (a.capacity if a.id in instance.jobs else big) for a in net.arcs}
    r = max_flow(net, capacities=caps)
    if r.value == F:
        return True, r.min_cut
    return False, None


def classify_instance(instance: Instance) -> InstanceClass:
    from .sp import is_series_parallel

    check_instance(instance)
    net = instance.network
    unit = instance.is_unit_jobs()
    balanced = is_balanced(net)
    sp = is_series_parallel(net)
    uniform = uniform_capacity(net) is not None
    single = _single_node(net) is not None
    closed = False
    covers = False
    if unit:
        profile = single_node_analysis(instance)
        closed = profile is not None and profile.closed_form_value is not None
        covers, _ = jobs_cover_min_cut(instance)

    if not unit:
        strategy = Strategy.UNIFORM_FLOW if uniform else Strategy.EXACT_SEARCH
    elif closed:
        strategy = Strategy.CLOSED_FORM
    elif covers or (balanced and sp):
        strategy = Strategy.SAME_PERIOD
    elif uniform:
        strategy = Strategy.UNIFORM_FLOW
    elif sp:
        strategy = Strategy.SP_DYNAMIC_PROGRAM
    else:
        strategy = Strategy.EXACT_SEARCH
    return InstanceClass(balanced, single, sp, uniform, covers, unit, closed, strategy)

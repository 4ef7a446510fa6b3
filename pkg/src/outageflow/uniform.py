"""Polynomial solver for networks whose arcs all share one capacity.

Aggregating the horizon gives a single max-flow problem whose value bounds
the total throughput (each job arc loses one period per job). The bound is
attained: after cancelling flow cycles, the aggregate is peeled off one
period at a time by arc-disjoint s-t paths that cover every arc still
carrying as many units as there are periods left. Paths are found as a
reward-maximal unit flow, solved here as a min-cost flow.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .core import (
    EvaluationReport,
    Instance,
    Network,
    OutageFlowError,
    Schedule,
    check_instance,
    evaluate_schedule,
    max_flow,
)
from .structure import uniform_capacity


class NonUniformCapacity(OutageFlowError, ValueError):
    pass


class CoverageShortfall(OutageFlowError, AssertionError):
    """Covering paths missed an arc at the current level. Indicates a bug or a
    violated precondition, never a property of valid input."""


@dataclass(frozen=True)
class AggregatedFlow:
    arc_totals: dict[str, int]
    value: int

    def support(self) -> list[str]:
        return [a for a, x in self.arc_totals.items() if x > 0]


@dataclass(frozen=True)
class ExtractionRound:
    level: int
    period: int
    required: frozenset[str]  # arcs at the current level
    paths: tuple[tuple[str, ...], ...]
    reward: int


@dataclass(frozen=True)
class UniformSolution:
    total: int
    schedule: Schedule
    report: EvaluationReport
    capacity: int
    aggregated: AggregatedFlow
    acyclic: AggregatedFlow
    period_paths: tuple[tuple[tuple[str, ...], ...], ...]
    rounds: tuple[ExtractionRound, ...]

    def __iter__(self):
        return iter((self.total, self.schedule, self.report))

    def period_usage(self) -> list[dict[str, int]]:
        """Units routed on each arc in each period."""
        out = []
        for paths in self.period_paths:
            use: dict[str, int] = {}
            for p in paths:
                for a in p:
                    use[a] = use.get(a, 0) + self.capacity
            out.append(use)
        return out


def _common_capacity(instance: Instance) -> int:
    if not instance.network.arcs:
        return 1
    c = uniform_capacity(instance.network)
    if c is None:
        caps = sorted({a.capacity for a in instance.network.arcs})
        raise NonUniformCapacity(f"arc capacities are not a single positive value: {caps}")
    return c


def _aggregate_unit(instance: Instance) -> AggregatedFlow:
    T = instance.horizon
    bounds = {a.id: T - instance.jobs.get(a.id, 0) for a in instance.network.arcs}
    r = max_flow(instance.network, capacities=bounds)
    return AggregatedFlow(
        {a.id: r.arc_flows[a.id] for a in instance.network.arcs}, r.value
    )


def _scaled(flow: AggregatedFlow, c: int) -> AggregatedFlow:
    return AggregatedFlow({a: c * x for a, x in flow.arc_totals.items()}, c * flow.value)


def aggregated_max_flow(instance: Instance) -> AggregatedFlow:
    """Max flow over the whole horizon: bound T*c on plain arcs and
    (T - m_a)*c on job arcs. Computed at unit scale and multiplied by c."""
    check_instance(instance)
    c = _common_capacity(instance)
    return _scaled(_aggregate_unit(instance), c)


def _find_cycle(network: Network, totals: dict[str, int]) -> list[str] | None:
    adj: dict[str, list[tuple[str, str]]] = {}
    for a in network.arcs:
        if totals.get(a.id, 0) > 0:
            adj.setdefault(a.tail, []).append((a.id, a.head))
    state: dict[str, int] = {}
    for root in network.nodes:
        if state.get(root):
            continue
        state[root] = 1
        stack = [(root, iter(adj.get(root, ())))]
        via: list[str] = []
        while stack:
            u, it = stack[-1]
            step = next(it, None)
            if step is None:
                state[u] = 2
                stack.pop()
                if via:
                    via.pop()
                continue
            arc_id, v = step
            if state.get(v) == 1:
                # v is on the stack: the cycle is v -> ... -> u -> v
                start = next(i for i, (x, _) in enumerate(stack) if x == v)
                return via[start:] + [arc_id]
            if not state.get(v):
                state[v] = 1
                stack.append((v, iter(adj.get(v, ()))))
                via.append(arc_id)
    return None


def acyclify_flow(network: Network, flow: AggregatedFlow) -> AggregatedFlow:
    """Cancel flow around directed cycles until the support is acyclic."""
    totals = dict(flow.arc_totals)
    while True:
        cycle = _find_cycle(network, totals)
        if cycle is None:
            return AggregatedFlow(totals, flow.value)
        delta = min(totals[a] for a in cycle)
        for a in cycle:
            totals[a] -= delta


def _min_cost_unit_paths(network: Network, arcs: list, reward: set[str]) -> list[str]:
    """Arcs of a unit-capacity s-t flow of minimum cost, where arcs in
    ``reward`` cost -1 and the rest cost 0, over any flow amount.

    Successive shortest paths with node potentials; stops once the cheapest
    augmenting path no longer has negative cost. Assumes the arcs form an
    acyclic digraph, so the initial costs admit Bellman-Ford potentials.
    """
    nodes = list(network.nodes)
    index = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    s, t = index[network.source], index[network.sink]
    head, cap, cost = [], [], []
    adj = [[] for _ in range(n)]
    for a in arcs:
        u, v = index[a.tail], index[a.head]
        c = -1 if a.id in reward else 0
        adj[u].append(len(head))
        head.append(v)
        cap.append(1)
        cost.append(c)
        adj[v].append(len(head))
        head.append(u)
        cap.append(0)
        cost.append(-c)

    INF = float("inf")
    pot = [INF] * n
    pot[s] = 0
    for _ in range(n - 1):
        changed = False
        for u in range(n):
            if pot[u] == INF:
                continue
            for r in adj[u]:
                if cap[r] > 0 and pot[u] + cost[r] < pot[head[r]]:
                    pot[head[r]] = pot[u] + cost[r]
                    changed = True
        if not changed:
            break
    pot = [0 if p == INF else p for p in pot]

    while True:
        dist = [INF] * n
        prev = [-1] * n
        dist[s] = 0
        heap = [(0, s)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for r in adj[u]:
                if cap[r] <= 0:
                    continue
                v = head[r]
                nd = d + cost[r] + pot[u] - pot[v]
                if nd < dist[v]:
                    dist[v] = nd
                    prev[v] = r
                    heapq.heappush(heap, (nd, v))
        if dist[t] == INF or dist[t] + pot[t] - pot[s] >= 0:
            break
        far = max(d for d in dist if d != INF)
        for v in range(n):
            pot[v] += dist[v] if dist[v] != INF else far
        v = t
        while v != s:
            r = prev[v]
            cap[r] -= 1
            cap[r ^ 1] += 1
            v = head[r ^ 1]
    return [a.id for i, a in enumerate(arcs) if cap[2 * i] == 0]


def _decompose(network: Network, used: list[str]) -> list[tuple[str, ...]]:
    """Split an acyclic 0/1 s-t flow into arc-disjoint paths."""
    arcs = {a.id: a for a in network.arcs}
    out_of: dict[str, list[str]] = {}
    for a in used:
        out_of.setdefault(arcs[a].tail, []).append(a)
    paths = []
    while out_of.get(network.source):
        path = []
        v = network.source
        while v != network.sink:
            a = out_of[v].pop(0)
            path.append(a)
            v = arcs[a].head
        paths.append(tuple(path))
    return paths


def extract_covering_paths(network: Network, remaining: dict[str, int], level: int) -> tuple[tuple[str, ...], ...]:
    """Arc-disjoint s-t paths through the support of ``remaining`` that cover
    every arc whose remaining flow equals ``level``."""
    required = {a for a, x in remaining.items() if x == level and x > 0}
    if any(x > level for x in remaining.values()):
        raise CoverageShortfall(f"remaining flow exceeds level {level}")
    support = [a for a in network.arcs if remaining.get(a.id, 0) > 0]
    used = _min_cost_unit_paths(network, support, required)
    paths = _decompose(network, used)
    covered = required.intersection(a for p in paths for a in p)
    if len(covered) != len(required):
        raise CoverageShortfall(
            f"level {level}: covered {len(covered)} of {len(required)} arcs; missing {sorted(required - covered)}"
        )
    return tuple(paths)


def solve_uniform(instance: Instance) -> UniformSolution:
    check_instance(instance)
    c = _common_capacity(instance)
    net = instance.network
    T = instance.horizon
    agg = _aggregate_unit(instance)
    acyc = acyclify_flow(net, agg)

    remaining = dict(acyc.arc_totals)
    period_paths = []
    rounds = []
    for level in range(T, 0, -1):
        required = frozenset(a for a, x in remaining.items() if x == level)
        paths = extract_covering_paths(net, remaining, level)
        for p in paths:
            for a in p:
                remaining[a] -= 1
        period = T - level + 1
        reward = len(required.intersection(a for p in paths for a in p))
        rounds.append(ExtractionRound(level, period, required, paths, reward))
        period_paths.append(paths)
    if any(remaining.values()):
        raise CoverageShortfall("flow left over after the last period")

    outages = {}
    for a, m in instance.jobs.items():
        free = [i + 1 for i, paths in enumerate(period_paths) if not any(a in p for p in paths)]
        if len(free) < m:
            raise CoverageShortfall(f"job arc {a!r} is used in more than {T - m} periods")
        outages[a] = free[:m]
    schedule = Schedule(outages)
    report = evaluate_schedule(instance, schedule)
    total = c * acyc.value
    if report.total != total:
        raise CoverageShortfall(f"schedule evaluates to {report.total}, aggregate bound is {total}")
    return UniformSolution(
        total=total,
        schedule=schedule,
        report=report,
        capacity=c,
        aggregated=_scaled(agg, c),
        acyclic=_scaled(acyc, c),
        period_paths=tuple(period_paths),
        rounds=tuple(rounds),
    )

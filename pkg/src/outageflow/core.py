"""Network and instance model, max-flow/min-cut engine, schedule evaluation.

A schedule fixes which arcs are down in each period. Once it is fixed the
periods decouple, so the total throughput is the sum of T independent
static maximum-flow values.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

INT64_MAX = 2**63 - 1


class OutageFlowError(Exception):
    """Base class for errors raised by this package."""


class UnknownArc(OutageFlowError, KeyError):
    def __init__(self, arc_id):
        super().__init__(arc_id)
        self.arc_id = arc_id

    def __str__(self):
        return f"unknown arc id {self.arc_id!r}"


class InvalidInstance(OutageFlowError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class InvalidSchedule(OutageFlowError, ValueError):
    pass


class UnsupportedMultiplicity(OutageFlowError, ValueError):
    """Raised by solvers that only handle one job per arc."""


@dataclass(frozen=True)
class Arc:
    id: str
    tail: str
    head: str
    capacity: int


@dataclass(frozen=True)
class Network:
    nodes: tuple[str, ...]
    arcs: tuple[Arc, ...]
    source: str
    sink: str

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "arcs", tuple(self.arcs))

    @classmethod
    def from_arcs(cls, arcs: Iterable[tuple[str, str, str, int]], source="s", sink="t", nodes=None):
        """Build a network from ``(arc_id, tail, head, capacity)`` tuples.

        Nodes default to the endpoints in first-appearance order, with the
        terminals first.
        """
        arcs = tuple(Arc(a, u, v, c) for a, u, v, c in arcs)
        if nodes is None:
            seen = {source: None, sink: None}
            for arc in arcs:
                seen.setdefault(arc.tail)
                seen.setdefault(arc.head)
            nodes = tuple(seen)
        return cls(tuple(nodes), arcs, source, sink)

    @property
    def arc_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.arcs)

    def arc(self, arc_id: str) -> Arc:
        for a in self.arcs:
            if a.id == arc_id:
                return a
        raise UnknownArc(arc_id)

    def capacity_map(self) -> dict[str, int]:
        return {a.id: a.capacity for a in self.arcs}

    def in_arcs(self, node: str) -> list[Arc]:
        return [a for a in self.arcs if a.head == node]

    def out_arcs(self, node: str) -> list[Arc]:
        return [a for a in self.arcs if a.tail == node]

    def transhipment_nodes(self) -> list[str]:
        return [v for v in self.nodes if v not in (self.source, self.sink)]

    def total_capacity(self) -> int:
        return sum(a.capacity for a in self.arcs)

    def restricted(self, arc_ids: Iterable[str], source=None, sink=None) -> Network:
        """Subnetwork on the given arcs, optionally with new terminals."""
        keep = set(arc_ids)
        arcs = tuple(a for a in self.arcs if a.id in keep)
        return Network.from_arcs(
            ((a.id, a.tail, a.head, a.capacity) for a in arcs),
            source=self.source if source is None else source,
            sink=self.sink if sink is None else sink,
        )


@dataclass(frozen=True)
class Instance:
    network: Network
    jobs: Mapping[str, int]
    horizon: int

    def __post_init__(self):
        object.__setattr__(self, "jobs", dict(self.jobs))

    @classmethod
    def single_jobs(cls, network: Network, job_arcs: Iterable[str], horizon: int) -> Instance:
        return cls(network, {a: 1 for a in job_arcs}, horizon)

    @property
    def T(self) -> int:
        return self.horizon

    @property
    def job_arcs(self) -> list[str]:
        """Job arc ids in network arc order."""
        return [a.id for a in self.network.arcs if a.id in self.jobs]

    def is_unit_jobs(self) -> bool:
        return all(m == 1 for m in self.jobs.values())

    def require_unit_jobs(self):
        if not self.is_unit_jobs():
            raise UnsupportedMultiplicity("this solver requires exactly one job per job arc")

    def with_jobs(self, jobs) -> Instance:
        if not isinstance(jobs, Mapping):
            jobs = {a: 1 for a in jobs}
        return Instance(self.network, jobs, self.horizon)

    def with_horizon(self, horizon: int) -> Instance:
        return Instance(self.network, self.jobs, horizon)


@dataclass(frozen=True)
class Schedule:
    """Outage periods (1-based) for every job arc."""

    outages: Mapping[str, frozenset[int]]

    def __post_init__(self):
        object.__setattr__(
            self, "outages", {a: frozenset(ps) for a, ps in self.outages.items()}
        )

    @classmethod
    def from_periods(cls, periods: Mapping[str, int]) -> Schedule:
        """Schedule with a single outage per arc."""
        return cls({a: frozenset([p]) for a, p in periods.items()})

    @classmethod
    def same_period(cls, instance: Instance, period: int = 1) -> Schedule:
        instance.require_unit_jobs()
        return cls.from_periods({a: period for a in instance.job_arcs})

    def down_in(self, period: int) -> frozenset[str]:
        return frozenset(a for a, ps in self.outages.items() if period in ps)

    def permuted(self, mapping: Mapping[int, int]) -> Schedule:
        return Schedule({a: frozenset(mapping[p] for p in ps) for a, ps in self.outages.items()})

    def as_lists(self) -> dict[str, list[int]]:
        return {a: sorted(ps) for a, ps in sorted(self.outages.items())}


@dataclass(frozen=True)
class FlowResult:
    value: int
    arc_flows: Mapping[str, int]
    min_cut: frozenset[str]
    source_side: frozenset[str]
    sink_side: frozenset[str]

    @property
    def cut_sides(self) -> tuple[frozenset[str], frozenset[str]]:
        return self.source_side, self.sink_side


@dataclass(frozen=True)
class EvaluationReport:
    total: int
    per_period: tuple[FlowResult, ...]

    @property
    def values(self) -> list[int]:
        return [r.value for r in self.per_period]

    @property
    def vector(self) -> tuple[int, ...]:
        """Per-period values sorted non-increasing."""
        return tuple(sorted(self.values, reverse=True))


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str = ""
    subject: object = None

    def __str__(self):
        return f"{self.code}: {self.detail}" if self.detail else self.code


def validate_network(network: Network) -> list[Violation]:
    out = []
    nodes = set(network.nodes)
    if len(nodes) != len(network.nodes):
        out.append(Violation("DuplicateNode", "node ids must be unique"))
    if network.source == network.sink:
        out.append(Violation("SourceEqualsSink", f"source and sink are both {network.source!r}"))
    for term, name in ((network.source, "source"), (network.sink, "sink")):
        if term not in nodes:
            out.append(Violation("UnknownTerminal", f"{name} {term!r} is not a node", term))
    seen = set()
    for a in network.arcs:
        if a.id in seen:
            out.append(Violation("DuplicateArcId", f"arc id {a.id!r} repeated", a.id))
        seen.add(a.id)
        for end in (a.tail, a.head):
            if end not in nodes:
                out.append(Violation("UnknownArcEndpoint", f"arc {a.id!r} uses undeclared node {end!r}", a.id))
        if not isinstance(a.capacity, int) or isinstance(a.capacity, bool):
            out.append(Violation("NonIntegralCapacity", f"arc {a.id!r} capacity {a.capacity!r}", a.id))
        elif a.capacity < 0:
            out.append(Violation("NegativeCapacity", f"arc {a.id!r} capacity {a.capacity}", a.id))
    return out


def validate_instance(instance: Instance) -> list[Violation]:
    """Every violated invariant of the instance, empty when valid."""
    network = instance.network
    out = validate_network(network)
    T = instance.horizon
    if not isinstance(T, int) or T < 1:
        out.append(Violation("NonPositiveHorizon", f"horizon {T!r}"))
        T = None
    ids = set(network.arc_ids)
    for arc_id, m in instance.jobs.items():
        if arc_id not in ids:
            out.append(Violation("UnknownJobArc", f"job on unknown arc {arc_id!r}", arc_id))
        if not isinstance(m, int) or m < 1:
            out.append(Violation("NonPositiveMultiplicity", f"arc {arc_id!r} has {m!r} jobs", arc_id))
        elif T is not None and m > T:
            out.append(
                Violation("MultiplicityExceedsHorizon", f"arc {arc_id!r} has {m} jobs but T={T}", arc_id)
            )
    if T is not None and not any(v.code == "NonIntegralCapacity" for v in out):
        if T * sum(max(a.capacity, 0) for a in network.arcs) > INT64_MAX:
            out.append(Violation("CapacityOverflow", "T times total capacity exceeds 64 bits"))
    return out


def check_instance(instance: Instance) -> Instance:
    violations = validate_instance(instance)
    if violations:
        raise InvalidInstance(violations)
    return instance


def _dinic(n, edges, s, t):
    """Maximum flow on nodes ``0..n-1`` with ``edges[i] = (u, v, cap)``.

    Returns (value, per-edge flow, set of nodes reachable from s in the
    final residual graph).
    """
    # residual arc 2i is edge i forward, 2i+1 its reverse
    head = []
    cap = []
    adj = [[] for _ in range(n)]
    for u, v, c in edges:
        adj[u].append(len(head))
        head.append(v)
        cap.append(c)
        adj[v].append(len(head))
        head.append(u)
        cap.append(0)

    value = 0
    while True:
        level = [-1] * n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for r in adj[u]:
                if cap[r] > 0 and level[head[r]] < 0:
                    level[head[r]] = level[u] + 1
                    queue.append(head[r])
        if level[t] < 0:
            break
        it = [0] * n
        while True:
            # iterative DFS for one augmenting path in the level graph
            path = []
            u = s
            while u != t:
                advanced = False
                while it[u] < len(adj[u]):
                    r = adj[u][it[u]]
                    v = head[r]
                    if cap[r] > 0 and level[v] == level[u] + 1:
                        path.append(r)
                        u = v
                        advanced = True
                        break
                    it[u] += 1
                if not advanced:
                    if u == s:
                        break
                    level[u] = -1
                    r = path.pop()
                    u = head[r ^ 1]
                    it[u] += 1
            if u != t:
                break
            push = min(cap[r] for r in path)
            for r in path:
                cap[r] -= push
                cap[r ^ 1] += push
            value += push

    reach = {s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for r in adj[u]:
            if cap[r] > 0 and head[r] not in reach:
                reach.add(head[r])
                queue.append(head[r])
    flows = [cap[2 * i + 1] for i in range(len(edges))]
    return value, flows, reach


def max_flow(network: Network, disabled: Iterable[str] = (), capacities: Mapping[str, int] | None = None) -> FlowResult:
    """Maximum s-t flow with ``disabled`` arcs masked to capacity 0.

    ``capacities`` optionally overrides arc capacities (used for the
    reweighted and aggregated problems). The returned minimum cut is the set
    of arcs leaving the residual source side, which is a genuine s-t cut of
    the unmasked network; its effective capacity equals the flow value.
    """
    disabled = frozenset(disabled)
    ids = set(network.arc_ids)
    for a in disabled:
        if a not in ids:
            raise UnknownArc(a)
    if capacities is not None:
        for a in capacities:
            if a not in ids:
                raise UnknownArc(a)
    index = {v: i for i, v in enumerate(network.nodes)}
    eff = {}
    edges = []
    for a in network.arcs:
        c = 0 if a.id in disabled else (capacities.get(a.id, a.capacity) if capacities else a.capacity)
        eff[a.id] = c
        edges.append((index[a.tail], index[a.head], c))
    value, flows, reach = _dinic(len(index), edges, index[network.source], index[network.sink])
    names = network.nodes
    src_side = frozenset(names[i] for i in reach)
    cut = frozenset(a.id for a in network.arcs if a.tail in src_side and a.head not in src_side)
    assert value == sum(eff[a] for a in cut)
    return FlowResult(
        value=value,
        arc_flows={a.id: f for a, f in zip(network.arcs, flows)},
        min_cut=cut,
        source_side=src_side,
        sink_side=frozenset(network.nodes) - src_side,
    )


@dataclass
class FlowCache:
    """Memoised max-flow values keyed by the set of disabled arcs."""

    network: Network
    values: dict = field(default_factory=dict)

    def value(self, disabled: frozenset[str]) -> int:
        v = self.values.get(disabled)
        if v is None:
            v = self.values[disabled] = max_flow(self.network, disabled).value
        return v


def check_schedule(instance: Instance, schedule: Schedule):
    T = instance.horizon
    jobs = instance.jobs
    if set(schedule.outages) != set(jobs):
        missing = sorted(set(jobs) - set(schedule.outages))
        extra = sorted(set(schedule.outages) - set(jobs))
        raise InvalidSchedule(f"schedule arcs do not match job arcs (missing {missing}, extra {extra})")
    for a, ps in schedule.outages.items():
        if len(ps) != jobs[a]:
            raise InvalidSchedule(f"arc {a!r} needs {jobs[a]} outage periods, got {sorted(ps)}")
        bad = [p for p in ps if not isinstance(p, int) or not 1 <= p <= T]
        if bad:
            raise InvalidSchedule(f"arc {a!r} has periods outside 1..{T}: {bad}")


def evaluate_schedule(instance: Instance, schedule: Schedule) -> EvaluationReport:
    check_instance(instance)
    check_schedule(instance, schedule)
    per_period = tuple(
        max_flow(instance.network, schedule.down_in(i)) for i in range(1, instance.horizon + 1)
    )
    return EvaluationReport(sum(r.value for r in per_period), per_period)


def schedule_total(instance: Instance, schedule: Schedule, cache: FlowCache | None = None) -> int:
    """Total throughput only; skips building per-period reports."""
    cache = cache or FlowCache(instance.network)
    return sum(cache.value(schedule.down_in(i)) for i in range(1, instance.horizon + 1))

"""Two-terminal series-parallel networks: recognition, sp-trees, and the
dynamic program over lists of per-period throughput vectors.

For a fixed schedule, the max flow of a parallel composition is the sum of
its parts and that of a series composition is the minimum. Each sp-tree
node therefore keeps the set of sorted throughput vectors its subnetwork can
realise; children are combined under every essentially distinct alignment
of their periods.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterator

from .core import Instance, Network, OutageFlowError, Schedule, check_instance

SERIES = "S"
PARALLEL = "P"


class NotSeriesParallel(OutageFlowError, ValueError):
    def __init__(self, remnant: list[tuple[str, str]]):
        self.remnant = remnant
        super().__init__(f"network is not two-terminal series-parallel; irreducible remnant {remnant}")


class DisconnectedTerminals(OutageFlowError, ValueError):
    pass


class LengthMismatch(OutageFlowError, ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SpTree:
    label: str  # "leaf", SERIES or PARALLEL
    source: str
    sink: str
    arc_id: str | None = None
    left: SpTree | None = None
    right: SpTree | None = None

    @property
    def is_leaf(self) -> bool:
        return self.label == "leaf"

    def leaves(self) -> list[str]:
        out, stack = [], [self]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                out.append(node.arc_id)
            else:
                stack.append(node.right)
                stack.append(node.left)
        return out

    def internal_nodes(self) -> list[SpTree]:
        """Internal nodes in post-order (children before parents)."""
        out = []

        def walk(node):
            if not node.is_leaf:
                walk(node.left)
                walk(node.right)
                out.append(node)

        walk(self)
        return out

    def depth(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + max(self.left.depth(), self.right.depth())

    def __str__(self):
        if self.is_leaf:
            return str(self.arc_id)
        return f"{self.label}({self.left}, {self.right})"


def _reachable(network: Network, start: str, forward: bool = True) -> set[str]:
    adj: dict[str, list[str]] = {}
    for a in network.arcs:
        u, v = (a.tail, a.head) if forward else (a.head, a.tail)
        adj.setdefault(u, []).append(v)
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def build_sp_tree(network: Network) -> SpTree:
    """Decompose by exhaustive series and parallel reductions.

    Parallel reduction merges two edges with the same endpoints; series
    reduction contracts a non-terminal node with exactly one incoming and one
    outgoing edge. The network is series-parallel iff this ends in a single
    source-to-sink edge.
    """
    if not network.arcs:
        raise ValueError("network has no arcs")
    s, t = network.source, network.sink
    if t not in _reachable(network, s):
        raise DisconnectedTerminals(f"sink {t!r} is not reachable from source {s!r}")

    edges: dict[int, tuple[str, str, SpTree]] = {}
    for i, a in enumerate(network.arcs):
        edges[i] = (a.tail, a.head, SpTree("leaf", a.tail, a.head, arc_id=a.id))
    next_id = len(edges)
    ins: dict[str, set[int]] = {}
    outs: dict[str, set[int]] = {}
    by_pair: dict[tuple[str, str], set[int]] = {}
    for i, (u, v, _) in edges.items():
        outs.setdefault(u, set()).add(i)
        ins.setdefault(v, set()).add(i)
        by_pair.setdefault((u, v), set()).add(i)

    def remove(i):
        u, v, tree = edges.pop(i)
        outs[u].discard(i)
        ins[v].discard(i)
        by_pair[(u, v)].discard(i)
        return u, v, tree

    def add(u, v, tree):
        nonlocal next_id
        i = next_id
        next_id += 1
        edges[i] = (u, v, tree)
        outs.setdefault(u, set()).add(i)
        ins.setdefault(v, set()).add(i)
        by_pair.setdefault((u, v), set()).add(i)
        return i

    pairs = deque(sorted(by_pair))
    nodes = deque(v for v in network.nodes if v not in (s, t))
    while pairs or nodes:
        while pairs:
            pair = pairs.popleft()
            group = sorted(by_pair.get(pair, ()))
            while len(group) >= 2:
                i, j = group[0], group[1]
                u, v, t1 = remove(i)
                _, _, t2 = remove(j)
                add(u, v, SpTree(PARALLEL, u, v, left=t1, right=t2))
                group = sorted(by_pair[pair])
            if pair[0] not in (s, t):
                nodes.append(pair[0])
            if pair[1] not in (s, t):
                nodes.append(pair[1])
        while nodes:
            v = nodes.popleft()
            if v in (s, t) or len(ins.get(v, ())) != 1 or len(outs.get(v, ())) != 1:
                continue
            (i,) = ins[v]
            (j,) = outs[v]
            u, _, t1 = edges[i]
            _, w, t2 = edges[j]
            if u == w:
                continue
            remove(i)
            remove(j)
            add(u, w, SpTree(SERIES, u, w, left=t1, right=t2))
            pairs.append((u, w))

    if len(edges) == 1:
        ((u, v, tree),) = edges.values()
        if (u, v) == (s, t):
            return tree
    raise NotSeriesParallel(sorted((u, v) for u, v, _ in edges.values()))


def is_series_parallel(network: Network) -> bool:
    if not network.arcs:
        return False
    try:
        build_sp_tree(network)
    except (NotSeriesParallel, DisconnectedTerminals):
        return False
    return True


def _alignments(z: tuple[int, ...], w: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Essentially distinct pairings of positions of ``z`` with positions of ``w``.

    Yields ``perm`` with position i of ``z`` paired to position perm[i] of
    ``w``. Positions of ``z`` holding equal values are interchangeable, and so
    are positions of ``w`` holding equal values, so each distinct assignment
    of a value multiset of ``w`` to each value group of ``z`` is produced once.
    """
    by_value: dict[int, list[int]] = {}
    for i, x in enumerate(z):
        by_value.setdefault(x, []).append(i)
    groups = list(by_value.values())
    where: dict[int, list[int]] = {}
    for j, y in enumerate(w):
        where.setdefault(y, []).append(j)
    values = sorted(where, reverse=True)
    remaining = Counter(w)
    perm = [0] * len(z)

    def fill(g):
        if g == len(groups):
            yield tuple(perm)
            return
        need = len(groups[g])
        taken: list[int] = []

        def choose(vi, left):
            if left == 0:
                used = Counter()
                for pos, y in zip(groups[g], taken):
                    perm[pos] = where[y][remaining_total[y] - remaining[y] + used[y]]
                    used[y] += 1
                for y, c in used.items():
                    remaining[y] -= c
                yield from fill(g + 1)
                for y, c in used.items():
                    remaining[y] += c
                return
            if vi == len(values):
                return
            y = values[vi]
            for c in range(min(remaining[y], left), -1, -1):
                taken.extend([y] * c)
                yield from choose(vi + 1, left - c)
                del taken[len(taken) - c:]

        yield from choose(0, need)

    remaining_total = Counter(w)
    yield from fill(0)


def _combine(z, w, perm, label):
    if label == PARALLEL:
        return [z[i] + w[perm[i]] for i in range(len(z))]
    return [min(z[i], w[perm[i]]) for i in range(len(z))]


def _canonical(raw: list[int]) -> tuple[int, ...]:
    return tuple(sorted(raw, reverse=True))


def prune_dominated(vectors) -> list[tuple[int, ...]]:
    """Drop every vector that is componentwise <= another distinct vector."""
    ordered = sorted(set(vectors), key=lambda v: (-sum(v), v))
    kept: list[tuple[int, ...]] = []
    for v in ordered:
        # a dominating vector has a strictly larger sum, so it is already kept
        if not any(all(a <= b for a, b in zip(v, k)) for k in kept):
            kept.append(v)
    return kept


# back-reference: (left vector, right vector, alignment) or None at leaves
VectorList = dict


def compose_vector_lists(left: VectorList, right: VectorList, label: str, T: int, prune: bool = True) -> VectorList:
    """All sorted vectors obtained by combining one vector of each list under
    every distinct alignment. Keys are vectors, values their first witness."""
    for z in list(left) + list(right):
        if len(z) != T:
            raise LengthMismatch(f"vector {z} does not have length {T}")
    out: VectorList = {}
    for z in left:
        for w in right:
            for perm in _alignments(z, w):
                v = _canonical(_combine(z, w, perm, label))
                if v not in out:
                    out[v] = (z, w, perm)
    if prune:
        keep = prune_dominated(out)
        out = {v: out[v] for v in sorted(keep, key=lambda v: (-sum(v), v))}
    return out


def leaf_vector(capacity: int, is_job: bool, T: int) -> tuple[int, ...]:
    return (capacity,) * (T - 1) + (0 if is_job else capacity,)


@dataclass
class SpProgram:
    """Vector lists for every sp-tree node of an instance."""

    instance: Instance
    tree: SpTree
    prune: bool = True
    lists: dict[int, VectorList] = field(default_factory=dict)
    max_list_length: int = 0

    def run(self) -> SpProgram:
        T = self.instance.horizon
        caps = self.instance.network.capacity_map()
        jobs = self.instance.jobs

        def visit(node):
            if node.is_leaf:
                v = leaf_vector(caps[node.arc_id], node.arc_id in jobs, T)
                self.lists[id(node)] = {v: None}
                return
            visit(node.left)
            visit(node.right)
            L = compose_vector_lists(
                self.lists[id(node.left)], self.lists[id(node.right)], node.label, T, self.prune
            )
            self.lists[id(node)] = L
            self.max_list_length = max(self.max_list_length, len(L))

        visit(self.tree)
        return self

    def root_list(self) -> VectorList:
        return self.lists[id(self.tree)]

    def best(self) -> tuple[int, ...]:
        """Root vector with maximum sum; ties go to the first one listed."""
        return max(self.root_list(), key=sum)

    def periods_for(self, node: SpTree, vector: tuple[int, ...]) -> dict[str, int]:
        """A schedule of the jobs inside ``node`` realising ``vector``, with
        sorted position i of the vector placed in period i + 1."""
        jobs = self.instance.jobs
        out: dict[str, int] = {}

        def walk(n, vec, slot):
            # slot[i] = period of position i of vec
            if n.is_leaf:
                if n.arc_id in jobs:
                    zeros = [slot[i] for i, x in enumerate(vec) if x == 0]
                    out[n.arc_id] = min(zeros)
                return
            z, w, perm = self.lists[id(n)][vec]
            raw = _combine(z, w, perm, n.label)
            order = sorted(range(len(raw)), key=lambda i: -raw[i])
            period_of_raw = [0] * len(raw)
            for pos, i in enumerate(order):
                period_of_raw[i] = slot[pos]
            walk(n.left, z, period_of_raw)
            right_slot = [0] * len(raw)
            for i in range(len(raw)):
                right_slot[perm[i]] = period_of_raw[i]
            walk(n.right, w, right_slot)

        walk(node, vector, list(range(1, len(vector) + 1)))
        return out


@dataclass(frozen=True)
class SpSolution:
    total: int
    vector: tuple[int, ...]
    schedule: Schedule
    max_list_length: int
    tree: SpTree

    def __iter__(self):
        return iter((self.total, self.vector, self.schedule))


def sp_solve(instance: Instance, prune: bool = True) -> SpSolution:
    check_instance(instance)
    instance.require_unit_jobs()
    tree = build_sp_tree(instance.network)
    prog = SpProgram(instance, tree, prune=prune).run()
    best = prog.best()
    schedule = Schedule.from_periods(prog.periods_for(tree, best))
    return SpSolution(sum(best), best, schedule, prog.max_list_length, tree)

"""Exact solvers by enumeration.

Periods are interchangeable, so a schedule with one job per arc is an
unordered partition of the job arcs into at most T blocks. Partitions are
walked as restricted growth strings in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .bounds import upper_bound_U
from .core import FlowCache, Instance, OutageFlowError, Schedule, check_instance

DEFAULT_BUDGET = 10**6


class BudgetExceeded(OutageFlowError, RuntimeError):
    def __init__(self, count: int, budget: int):
        self.count = count
        self.budget = budget
        super().__init__(f"{count} schedules to enumerate exceeds budget {budget}")


@dataclass(frozen=True)
class SearchStats:
    nodes_explored: int
    prunes_by_bound: int
    optimum: int
    witness: Schedule
    proven_optimal: bool = True


def restricted_growth_strings(n: int, max_blocks: int):
    """Restricted growth strings of length n using at most ``max_blocks``
    block labels, in lexicographic order."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i, used):
        if i == n:
            yield tuple(a)
            return
        for b in range(min(used + 1, max_blocks)):
            a[i] = b
            yield from rec(i + 1, max(used, b + 1))

    yield from rec(1, 1)


def partition_count(multiplicities, T: int) -> int:
    """Number of schedules the brute-force enumeration visits."""
    ms = tuple(multiplicities)

    @lru_cache(maxsize=None)
    def f(i, used):
        if i == len(ms):
            return 1
        m = ms[i]
        total = 0
        for new in range(0, min(m, T - used) + 1):
            old = m - new
            if old <= used:
                total += comb(used, old) * f(i + 1, used + new)
        return total

    return f(0, 0)


def _labelled_schedules(ms, T):
    """Schedules for arbitrary multiplicities, periods opened in order.

    Arc i picks ``old`` already-opened periods and opens the next ``new``
    ones. Every schedule is equivalent to one of these under relabelling of
    periods (some classes appear more than once).
    """
    choice = [None] * len(ms)

    def rec(i, used):
        if i == len(ms):
            yield tuple(choice)
            return
        m = ms[i]
        for new in range(0, min(m, T - used) + 1):
            old = m - new
            if old > used:
                continue
            for olds in combinations(range(used), old):
                choice[i] = olds + tuple(range(used, used + new))
                yield from rec(i + 1, used + new)

    yield from rec(0, 0)


def brute_force_solve(instance: Instance, budget: int = DEFAULT_BUDGET) -> tuple[int, Schedule]:
    """Optimum by enumerating every schedule up to period relabelling.

    Arcs with several jobs are supported; with one job per arc the
    enumeration is exactly the set of partitions into at most T blocks and
    the witness is the lexicographically smallest optimal growth string.
    """
    check_instance(instance)
    T = instance.horizon
    arcs = instance.job_arcs
    ms = [instance.jobs[a] for a in arcs]
    count = partition_count(ms, T)
    if count > budget:
        raise BudgetExceeded(count, budget)
    cache = FlowCache(instance.network)
    F = cache.value(frozenset())

    best, best_choice = -1, None
    if all(m == 1 for m in ms):
        candidates = (tuple((b,) for b in rgs) for rgs in restricted_growth_strings(len(arcs), T))
    else:
        candidates = _labelled_schedules(ms, T)
    for choice in candidates:
        blocks: dict[int, list[str]] = {}
        for a, periods in zip(arcs, choice):
            for p in periods:
                blocks.setdefault(p, []).append(a)
        total = sum(cache.value(frozenset(b)) for b in blocks.values()) + (T - len(blocks)) * F
        if total > best:
            best, best_choice = total, choice
    schedule = Schedule({a: frozenset(p + 1 for p in ps) for a, ps in zip(arcs, best_choice)})
    return best, schedule


def branch_and_bound_solve(instance: Instance, budget: int = DEFAULT_BUDGET) -> tuple[int, Schedule, SearchStats]:
    """Depth-first search over growth strings with bound pruning.

    A partial assignment is bounded by the sum over periods of the max flow
    with only the already-placed outages applied, and by the global cut
    bound. The incumbent starts at the same-period schedule. When more than
    ``budget`` nodes are visited the incumbent is returned unproven.

    ``nodes_explored`` counts the search frontier: complete schedules
    evaluated plus subtrees cut off by the bound. Each frontier node stands
    for at least one distinct partition, so it never exceeds partition_count.
    """
    check_instance(instance)
    instance.require_unit_jobs()
    T = instance.horizon
    arcs = instance.job_arcs
    n = len(arcs)
    cache = FlowCache(instance.network)
    F = cache.value(frozenset())
    U, _ = upper_bound_U(instance)

    best = (T - 1) * F + cache.value(frozenset(arcs)) if n else T * F
    best_rgs = (0,) * n
    visited = explored = pruned = 0
    blocks: list[set[str]] = []
    rgs = [0] * n
    out_of_budget = False

    def bound():
        return min(U, sum(cache.value(frozenset(b)) for b in blocks) + (T - len(blocks)) * F)

    def rec(i):
        nonlocal best, best_rgs, visited, explored, pruned, out_of_budget
        if out_of_budget:
            return
        visited += 1
        if visited > budget:
            out_of_budget = True
            return
        if i == n:
            explored += 1
            value = bound()
            if value > best:
                best, best_rgs = value, tuple(rgs)
            return
        if bound() <= best:
            explored += 1
            pruned += 1
            return
        for b in range(min(len(blocks) + 1, T)):
            rgs[i] = b
            if b == len(blocks):
                blocks.append(set())
            blocks[b].add(arcs[i])
            rec(i + 1)
            blocks[b].discard(arcs[i])
            if not blocks[b] and b == len(blocks) - 1:
                blocks.pop()

    if n:
        rgs[0] = 0
        blocks.append({arcs[0]})
        rec(1)
    else:
        explored = 1
    schedule = Schedule.from_periods({a: b + 1 for a, b in zip(arcs, best_rgs)})
    stats = SearchStats(explored, pruned, best, schedule, proven_optimal=not out_of_budget)
    return best, schedule, stats

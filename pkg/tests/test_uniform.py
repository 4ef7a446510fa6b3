import itertools
import random

import pytest

from oracles import labelled_optimum
from outageflow.core import Instance, Network, max_flow
from outageflow.exact import brute_force_solve
from outageflow.generators import random_uniform, tight_ratio
from outageflow.uniform import (
    AggregatedFlow,
    NonUniformCapacity,
    _find_cycle,
    acyclify_flow,
    aggregated_max_flow,
    extract_covering_paths,
    solve_uniform,
)


def st_paths(net, support):
    """All simple s-t paths inside ``support``."""
    out = []

    def walk(v, path, seen):
        if v == net.sink:
            out.append(tuple(path))
            return
        for a in net.out_arcs(v):
            if a.id in support and a.head not in seen:
                walk(a.head, path + [a.id], seen | {a.head})

    walk(net.source, [], {net.source})
    return out


def coverable(net, remaining, level):
    """Exhaustive: is there an arc-disjoint path family covering the level set?"""
    support = {a for a, x in remaining.items() if x > 0}
    required = {a for a, x in remaining.items() if x == level}
    paths = st_paths(net, support)
    for r in range(len(paths) + 1):
        for fam in itertools.combinations(paths, r):
            arcs = [a for p in fam for a in p]
            if len(arcs) == len(set(arcs)) and required <= set(arcs):
                return True
    return False


class TestAggregated:
    def test_tight_ratio(self, I3):
        agg = aggregated_max_flow(I3)
        assert agg.value == 2
        assert agg.arc_totals["a"] <= 1 and agg.arc_totals["b"] <= 1

    def test_diamond(self, I6):
        assert aggregated_max_flow(I6).value == 2

    def test_no_jobs(self, I6):
        inst = I6.with_jobs({}).with_horizon(4)
        assert aggregated_max_flow(inst).value == 4 * max_flow(I6.network).value

    def test_non_uniform_rejected(self, I2):
        with pytest.raises(NonUniformCapacity):
            aggregated_max_flow(I2)


class TestAcyclify:
    def test_two_cycle(self):
        net = Network.from_arcs([("uv", "u", "v", 1), ("vu", "v", "u", 1), ("st", "s", "t", 1)])
        flow = AggregatedFlow({"uv": 1, "vu": 1, "st": 1}, 1)
        out = acyclify_flow(net, flow)
        assert out.arc_totals == {"uv": 0, "vu": 0, "st": 1}
        assert out.value == 1

    def test_fixed_point(self, I6):
        flow = AggregatedFlow({"su": 1, "sv": 1, "uv": 1, "vt": 2, "ut": 0}, 2)
        assert acyclify_flow(I6.network, flow) == flow

    @pytest.mark.parametrize("seed", range(20))
    def test_acyclic_and_never_increased(self, seed):
        inst = random_uniform(seed, 6, 3, density=0.5, back_prob=0.4)
        agg = aggregated_max_flow(inst)
        acyc = acyclify_flow(inst.network, agg)
        assert _find_cycle(inst.network, acyc.arc_totals) is None
        assert acyc.value == agg.value
        assert all(acyc.arc_totals[a] <= agg.arc_totals[a] for a in agg.arc_totals)


class TestCoveringPaths:
    def test_empty_level(self):
        net = Network.from_arcs([("a", "s", "v", 1), ("b", "v", "t", 1)])
        assert extract_covering_paths(net, {"a": 1, "b": 1}, 2) is not None

    def test_forced_path(self):
        net = Network.from_arcs([("a", "s", "v", 1), ("b", "v", "t", 1)])
        assert extract_covering_paths(net, {"a": 3, "b": 3}, 3) == (("a", "b"),)

    def test_diamond_top_level(self, I6):
        acyc = acyclify_flow(I6.network, aggregated_max_flow(I6))
        paths = extract_covering_paths(I6.network, acyc.arc_totals, 2)
        top = {a for a, x in acyc.arc_totals.items() if x == 2}
        assert top <= {a for p in paths for a in p}

    @pytest.mark.parametrize("seed", range(25))
    def test_agrees_with_exhaustive_search(self, seed):
        inst = random_uniform(seed, 5, 3, density=0.6, max_jobs=2)
        acyc = acyclify_flow(inst.network, aggregated_max_flow(inst))
        level = max(acyc.arc_totals.values(), default=0)
        if level == 0:
            return
        assert coverable(inst.network, acyc.arc_totals, level)
        paths = extract_covering_paths(inst.network, acyc.arc_totals, level)
        used = [a for p in paths for a in p]
        assert len(used) == len(set(used))
        for p in paths:
            assert inst.network.arc(p[0]).tail == inst.network.source
            assert inst.network.arc(p[-1]).head == inst.network.sink


def check_invariants(inst, sol):
    T = inst.T
    net = inst.network
    for k, rnd in enumerate(sol.rounds):
        assert rnd.level == T - k and rnd.period == k + 1
        assert rnd.reward == len(rnd.required)
    for paths in sol.period_paths:
        used = [a for p in paths for a in p]
        assert len(used) == len(set(used))
        for p in paths:
            assert net.arc(p[0]).tail == net.source and net.arc(p[-1]).head == net.sink
            for x, y in zip(p, p[1:]):
                assert net.arc(x).head == net.arc(y).tail
    usage = sol.period_usage()
    for a, total in sol.acyclic.arc_totals.items():
        assert sum(u.get(a, 0) for u in usage) == total
    for a, m in inst.jobs.items():
        zero = [i for i, u in enumerate(usage, 1) if not u.get(a)]
        assert len(zero) >= m
        assert sol.schedule.outages[a] <= set(zero)


class TestSolve:
    def test_tight_ratio_two(self, I3):
        total, sched, rep = solve_uniform(I3)
        assert total == 2 == rep.total
        assert sched.outages["a"] != sched.outages["b"]

    def test_tight_ratio_five(self):
        inst = tight_ratio(5)
        assert solve_uniform(inst).total == 5

    def test_diamond(self, I6):
        sol = solve_uniform(I6)
        assert sol.total == 2 == labelled_optimum(I6)
        check_invariants(I6, sol)

    def test_scaled_capacity(self, I6):
        net = Network.from_arcs([(a.id, a.tail, a.head, 3) for a in I6.network.arcs])
        inst = Instance(net, dict(I6.jobs), 3)
        sol = solve_uniform(inst)
        assert sol.capacity == 3
        assert sol.total == brute_force_solve(inst)[0]

    @pytest.mark.parametrize("seed", range(40))
    def test_matches_brute_force(self, seed):
        rng = random.Random(seed)
        inst = random_uniform(
            seed, rng.randint(2, 8), rng.randint(1, 4), density=0.4, max_jobs=2, back_prob=0.2
        )
        sol = solve_uniform(inst)
        assert sol.total == sol.report.total == aggregated_max_flow(inst).value
        assert sol.total == brute_force_solve(inst)[0]
        check_invariants(inst, sol)

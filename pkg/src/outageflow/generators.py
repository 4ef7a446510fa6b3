"""Fixture instances and seeded random samplers.

The reduction networks follow the constructions used to show hardness:

* Partition, ``D = {d_1..d_m}`` with sum 2B, T = 2: arcs ``s->v`` of
  capacity 2*d_i and two arcs ``v->t`` of capacity 2B-1 all carry a job; a
  single ``v->t`` arc of capacity 1 does not. Everything in period 1 gives
  4B-1, and 4B is reachable iff D splits into two halves of sum B.
* 3-Partition, 3m values in (B/4, B/2) with sum mB, T = m: job arcs
  ``s->v1`` of capacity d_i and m job arcs ``v2->t`` of capacity B, plus
  job-free arcs ``s->v2`` and ``v1->t`` of capacity (m-1)B and ``v1->v2`` of
  capacity B. The network is balanced, not series-parallel, and the optimum
  reaches 2m(m-1)B iff the values split into triples of sum B.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import Instance, Network, OutageFlowError


class InvalidParams(OutageFlowError, ValueError):
    pass


def intro_example() -> Instance:
    net = Network.from_arcs([("a", "s", "v", 4), ("b", "s", "v", 5), ("c", "v", "t", 7)])
    return Instance.single_jobs(net, ["a", "b"], 2)


def sp_example() -> Instance:
    net = Network.from_arcs(
        [("a", "s", "v", 4), ("b", "s", "v", 1), ("c", "v", "t", 2), ("d", "v", "t", 2)]
    )
    return Instance.single_jobs(net, ["a", "b", "c"], 3)


def tight_ratio(T: int) -> Instance:
    if T < 1:
        raise InvalidParams("T must be positive")
    net = Network.from_arcs([("a", "s", "v", 1), ("b", "s", "v", 1), ("c", "v", "t", 1)])
    return Instance.single_jobs(net, ["a", "b"], T)


def partition_reduction(D) -> Instance:
    D = list(D)
    if not D or any(not isinstance(d, int) or d < 1 for d in D):
        raise InvalidParams("D must be a non-empty list of positive integers")
    if sum(D) % 2:
        raise InvalidParams(f"sum of D must be even, got {sum(D)}")
    B = sum(D) // 2
    arcs = [(f"d{i}", "s", "v", 2 * d) for i, d in enumerate(D, 1)]
    arcs += [("o1", "v", "t", 2 * B - 1), ("o2", "v", "t", 2 * B - 1), ("bold", "v", "t", 1)]
    net = Network.from_arcs(arcs)
    return Instance.single_jobs(net, [a[0] for a in arcs if a[0] != "bold"], 2)


def three_partition_reduction(B: int, d) -> Instance:
    d = list(d)
    if len(d) % 3 or not d:
        raise InvalidParams("need 3m values")
    m = len(d) // 3
    if any(not (4 * x > B and 2 * x < B) for x in d):
        raise InvalidParams(f"every value must lie strictly between B/4 and B/2 (B={B})")
    if sum(d) != m * B:
        raise InvalidParams(f"values must sum to m*B = {m * B}, got {sum(d)}")
    arcs = [(f"d{i}", "s", "v1", x) for i, x in enumerate(d, 1)]
    arcs += [
        ("s_v2", "s", "v2", (m - 1) * B),
        ("v1_v2", "v1", "v2", B),
        ("v1_t", "v1", "t", (m - 1) * B),
    ]
    arcs += [(f"w{j}", "v2", "t", B) for j in range(1, m + 1)]
    net = Network.from_arcs(arcs, nodes=("s", "v1", "v2", "t"))
    jobs = [a[0] for a in arcs if a[0].startswith(("d", "w"))]
    return Instance.single_jobs(net, jobs, m)


@dataclass(frozen=True)
class _Shape:
    label: str  # "leaf", "S" or "P"
    left: _Shape | None = None
    right: _Shape | None = None


def _materialise(shape: _Shape, caps) -> Network:
    arcs = []
    counter = iter(range(1, 10**9))
    leaf_ids = iter(range(1, 10**9))

    def build(node, u, v):
        if node.label == "leaf":
            arcs.append((f"a{next(leaf_ids)}", u, v))
        elif node.label == "P":
            build(node.left, u, v)
            build(node.right, u, v)
        else:
            w = f"v{next(counter)}"
            build(node.left, u, w)
            build(node.right, w, v)

    build(shape, "s", "t")
    return Network.from_arcs((a, u, v, caps[i]) for i, (a, u, v) in enumerate(arcs))


def random_sp(seed: int, m: int, T: int, capmax: int, job_prob: float = 0.5) -> Instance:
    """Random series-parallel instance on m arcs.

    Starts from m single arcs and composes two random components at a time,
    in series or parallel with equal probability. Capacities are uniform on
    [1, capmax]; each arc carries a job with probability ``job_prob``.
    """
    if m < 1 or T < 1 or capmax < 1:
        raise InvalidParams("m, T and capmax must be positive")
    rng = random.Random(seed)
    parts = [_Shape("leaf") for _ in range(m)]
    while len(parts) > 1:
        i, j = sorted(rng.sample(range(len(parts)), 2))
        right = parts.pop(j)
        left = parts.pop(i)
        parts.append(_Shape(rng.choice("SP"), left, right))
    caps = [rng.randint(1, capmax) for _ in range(m)]
    net = _materialise(parts[0], caps)
    jobs = [a.id for a in net.arcs if rng.random() < job_prob]
    return Instance.single_jobs(net, jobs, T)


def random_balanced_sp(seed: int, m: int, T: int, value: int, job_prob: float = 0.5) -> Instance:
    """Random balanced series-parallel instance with m arcs and source
    capacity ``value``.

    Parallel parts split the value, series parts share it, so every inner
    node sees equal capacity in and out.
    """
    if m < 1 or value < 1:
        raise InvalidParams("m and value must be positive")
    rng = random.Random(seed)
    caps: list[int] = []

    def gen(k, val):
        if k == 1:
            caps.append(val)
            return _Shape("leaf")
        k1 = rng.randint(1, k - 1)
        if val >= 2 and rng.random() < 0.5:
            v1 = rng.randint(1, val - 1)
            left = gen(k1, v1)
            return _Shape("P", left, gen(k - k1, val - v1))
        left = gen(k1, val)
        return _Shape("S", left, gen(k - k1, val))

    shape = gen(m, value)
    net = _materialise(shape, caps)
    jobs = [a.id for a in net.arcs if rng.random() < job_prob]
    return Instance.single_jobs(net, jobs, T)


def random_single_node(seed: int, T: int, n_in: int, n_out: int, capmax: int, require_condition: bool = True) -> Instance:
    """Random network s -> v -> t with parallel arcs on both sides.

    With ``require_condition`` the sample is redrawn until the capacity
    totals around v are ordered the same way with and without the job arcs.
    """
    rng = random.Random(seed)
    for _ in range(10_000):
        arcs = [(f"i{k}", "s", "v", rng.randint(1, capmax)) for k in range(1, n_in + 1)]
        arcs += [(f"o{k}", "v", "t", rng.randint(1, capmax)) for k in range(1, n_out + 1)]
        jobs = [a[0] for a in arcs if rng.random() < 0.5]
        c1_in = sum(a[3] for a in arcs if a[1] == "s")
        c1_out = sum(a[3] for a in arcs if a[2] == "t")
        c2_in = sum(a[3] for a in arcs if a[1] == "s" and a[0] not in jobs)
        c2_out = sum(a[3] for a in arcs if a[2] == "t" and a[0] not in jobs)
        ok = (c1_in <= c1_out and c2_in <= c2_out) or (c1_out <= c1_in and c2_out <= c2_in)
        if ok or not require_condition:
            return Instance.single_jobs(Network.from_arcs(arcs), jobs, T)
    raise InvalidParams("could not sample an instance meeting the condition")


def random_uniform(
    seed: int,
    n: int,
    T: int,
    density: float = 0.35,
    max_jobs: int = 1,
    capacity: int = 1,
    back_prob: float = 0.0,
    job_prob: float = 0.5,
) -> Instance:
    """Random equal-capacity instance on n nodes.

    Forward pairs (in node order, source first, sink last) get an arc with
    probability ``density``; backward pairs with probability ``back_prob``,
    which allows directed cycles. Job arcs get between 1 and
    ``min(max_jobs, T)`` jobs.
    """
    if n < 2 or T < 1 or capacity < 1:
        raise InvalidParams("need n >= 2, T >= 1 and capacity >= 1")
    rng = random.Random(seed)
    names = ["s"] + [f"v{i}" for i in range(1, n - 1)] + ["t"]
    arcs = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            p = density if i < j else back_prob
            if rng.random() < p:
                arcs.append((f"a{len(arcs) + 1}", names[i], names[j], capacity))
    jobs = {}
    for a in arcs:
        if rng.random() < job_prob:
            jobs[a[0]] = rng.randint(1, min(max_jobs, T))
    return Instance(Network.from_arcs(arcs, nodes=tuple(names)), jobs, T)


GENERATORS = {
    "intro": intro_example,
    "sp-example": sp_example,
    "tight-ratio": tight_ratio,
    "partition": partition_reduction,
    "three-partition": three_partition_reduction,
    "random-sp": random_sp,
    "random-balanced-sp": random_balanced_sp,
    "random-single-node": random_single_node,
    "random-uniform": random_uniform,
}


def generate(kind: str, **params) -> Instance:
    try:
        fn = GENERATORS[kind]
    except KeyError:
        raise InvalidParams(f"unknown generator {kind!r}; choose from {sorted(GENERATORS)}") from None
    try:
        return fn(**params)
    except TypeError as exc:
        raise InvalidParams(str(exc)) from None

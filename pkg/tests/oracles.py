"""Independent oracles; share no code with the solvers under test."""

import itertools


def cut_enum_max_flow(network, disabled=()):
    """Max-flow value as the minimum over all node bipartitions."""
    disabled = set(disabled)
    inner = [v for v in network.nodes if v not in (network.source, network.sink)]
    best = None
    for r in range(len(inner) + 1):
        for side in itertools.combinations(inner, r):
            S = set(side) | {network.source}
            cap = sum(
                a.capacity
                for a in network.arcs
                if a.tail in S and a.head not in S and a.id not in disabled
            )
            best = cap if best is None else min(best, cap)
    return best


def labelled_optimum(instance):
    """Optimum over every labelled schedule (each job arc picks m_a distinct
    periods), flows by cut enumeration."""
    T = instance.horizon
    arcs = sorted(instance.jobs)
    choices = [list(itertools.combinations(range(1, T + 1), instance.jobs[a])) for a in arcs]
    cache = {}
    best = -1
    for picks in itertools.product(*choices):
        total = 0
        for p in range(1, T + 1):
            down = frozenset(a for a, ps in zip(arcs, picks) if p in ps)
            if down not in cache:
                cache[down] = cut_enum_max_flow(instance.network, down)
            total += cache[down]
        best = max(best, total)
    return best


def subset_sum_yes(D):
    half, rem = divmod(sum(D), 2)
    if rem:
        return False
    return any(
        sum(c) == half
        for r in range(len(D) + 1)
        for c in itertools.combinations(D, r)
    )


def three_partition_yes(B, d):
    d = list(d)
    if not d:
        return True
    first, rest = d[0], d[1:]
    for i, j in itertools.combinations(range(len(rest)), 2):
        if first + rest[i] + rest[j] == B:
            left = [x for k, x in enumerate(rest) if k not in (i, j)]
            if three_partition_yes(B, left):
                return True
    return False



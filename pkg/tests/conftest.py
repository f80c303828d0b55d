import itertools
import random

import networkx as nx
import pytest

from mfass.model import FlowNetwork, Instance, Schedule


def nx_max_flow(network: FlowNetwork, shut=()) -> int:
    """Independent max-flow value via networkx (parallel arcs merged)."""
    shut = set(shut)
    g = nx.DiGraph()
    g.add_nodes_from(range(network.node_count))
    for a in network.arcs:
        if a.tail == a.head:
            continue
        cap = 0 if a.id in shut else a.capacity
        if g.has_edge(a.tail, a.head):
            g[a.tail][a.head]["capacity"] += cap
        else:
            g.add_edge(a.tail, a.head, capacity=cap)
    return nx.maximum_flow_value(g, network.source, network.sink)


def naive_optimum(instance: Instance) -> int:
    """Plain product enumeration with networkx flows: no symmetry pruning, no caching tricks."""
    best = -1
    T = instance.horizon
    for periods in itertools.product(range(T), repeat=len(instance.jobs)):
        counts = [periods.count(i) for i in range(T)]
        if any(c > k for c, k in zip(counts, instance.limits)):
            continue
        total = sum(
            nx_max_flow(instance.network, [a for a, p in zip(instance.jobs, periods) if p == i])
            for i in range(T))
        best = max(best, total)
    return best


def random_schedule(instance: Instance, rng: random.Random) -> Schedule:
    while True:
        periods = [rng.randrange(instance.horizon) for _ in instance.jobs]
        if all(periods.count(i) <= k for i, k in enumerate(instance.limits)):
            return Schedule(dict(zip(instance.jobs, periods)))


@pytest.fixture
def rng():
    return random.Random(12345)


def balanced_sp_network(rng: random.Random, arc_count: int, value: int) -> FlowNetwork:
    """Random SP network in which every transshipment node is balanced.

    A subnetwork built for throughput ``c`` is a single arc of capacity ``c``,
    a series pair both built for ``c``, or a parallel pair splitting ``c``.
    """
    edges: list[tuple[int, int, int]] = []
    node_count = 2
    stack = [(arc_count, 0, 1, value)]
    while stack:
        count, u, v, c = stack.pop()
        if count == 1:
            edges.append((u, v, c))
            continue
        left = rng.randint(1, count - 1)
        if c >= 2 and rng.random() < 0.5:
            share = rng.randint(1, c - 1)
            stack.append((count - left, u, v, c - share))
            stack.append((left, u, v, share))
        else:
            mid = node_count
            node_count += 1
            stack.append((count - left, mid, v, c))
            stack.append((left, u, mid, c))
    return FlowNetwork.from_edges(node_count, 0, 1, edges)

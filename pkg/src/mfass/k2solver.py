"""Exact solvers for a limit of two outages per period.

General networks reduce to a maximum-weight perfect matching on an auxiliary
graph with two vertices per job and some zero-weight dummies. Networks with a
single transshipment node have a closed-form optimal schedule that only needs
the job arcs sorted by capacity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cmp_to_key
from itertools import combinations

from mfass.errors import InfeasibleInstance, PreconditionViolated, WrongTopology
from mfass.matching import Edge, matching_weight, max_weight_perfect_matching
from mfass.model import FlowNetwork, Instance, Schedule, ThroughputReport, evaluate, max_flow


@dataclass
class AuxGraph:
    """Vertex layout: job ``k`` is vertex ``k``, its twin ``k'`` is ``n + k``,
    then the ``W`` dummies, then the ``W'`` dummies (paired consecutively)."""

    jobs: tuple[int, ...]
    p: int
    n_w: int
    n_w_prime: int
    f0: int
    f_single: dict[int, int]
    f_pair: dict[tuple[int, int], int]
    edges: list[Edge] = field(default_factory=list)

    @property
    def n_jobs(self) -> int:
        return len(self.jobs)

    @property
    def n_vertices(self) -> int:
        return 2 * self.n_jobs + self.n_w + self.n_w_prime

    def twin(self, k: int) -> int:
        return self.n_jobs + k

    @property
    def w_vertices(self) -> range:
        return range(2 * self.n_jobs, 2 * self.n_jobs + self.n_w)

    @property
    def w_prime_vertices(self) -> range:
        start = 2 * self.n_jobs + self.n_w
        return range(start, start + self.n_w_prime)

    def dump(self) -> str:
        """One ``u v weight`` line per edge."""
        return "".join(f"{u} {v} {w}\n" for u, v, w in self.edges)


def _require_k2(instance: Instance) -> None:
    if not instance.is_uniform or instance.limit != 2:
        raise PreconditionViolated("matching solver needs a uniform limit of 2 outages per period")
    if len(instance.jobs) > 2 * instance.horizon:
        raise InfeasibleInstance(f"{len(instance.jobs)} jobs cannot fit into {instance.horizon} periods of 2")


def build_aux_graph(instance: Instance) -> AuxGraph:
    _require_k2(instance)
    net, jobs = instance.network, instance.jobs
    n, T = len(jobs), instance.horizon
    p = max(0, n - T)
    f0 = max_flow(net)
    f_single = {a: max_flow(net, [a]) for a in jobs}
    f_pair = {(a, b): max_flow(net, [a, b]) for a, b in combinations(jobs, 2)}
    aux = AuxGraph(jobs, p, 2 * p, 2 * (n // 2 - p), f0, f_single, f_pair)
    for (k, a), (l, b) in combinations(enumerate(jobs), 2):
        aux.edges.append((k, l, f_pair[(a, b)] + f0))
    for k, a in enumerate(jobs):
        aux.edges.append((k, aux.twin(k), f_single[a]))
    dummies = list(aux.w_vertices) + list(aux.w_prime_vertices)
    for k in range(n):
        for w in dummies:
            aux.edges.append((aux.twin(k), w, 0))
    wp = list(aux.w_prime_vertices)
    for x, y in zip(wp[::2], wp[1::2]):
        aux.edges.append((x, y, 0))
    return aux


def split_matching(aux: AuxGraph, matching: list[tuple[int, int]]):
    """Return the job-job edges and the job-twin edges of ``matching``, as job arc ids."""
    n = aux.n_jobs
    pairs, singles = [], []
    for u, v in matching:
        u, v = min(u, v), max(u, v)
        if v < n:
            pairs.append(tuple(sorted((aux.jobs[u], aux.jobs[v]))))
        elif u < n and v == aux.twin(u):
            singles.append(aux.jobs[u])
    return sorted(pairs), sorted(singles)


def schedule_from_matching(instance: Instance, aux: AuxGraph, matching: list[tuple[int, int]]) -> Schedule:
    """Job pairs first (ordered by smaller arc id), then lone jobs; later periods stay idle."""
    pairs, singles = split_matching(aux, matching)
    groups = [list(pr) for pr in pairs] + [[a] for a in singles]
    if len(groups) > instance.horizon:
        raise PreconditionViolated(f"matching yields {len(groups)} busy periods but the horizon is {instance.horizon}")
    return Schedule.from_periods(groups)


def sample_perfect_matching(aux: AuxGraph, rng: random.Random) -> list[tuple[int, int]]:
    """A random perfect matching of the auxiliary graph.

    ``W`` vertices only see twins, so they are placed first; each ``W'`` pair
    is either matched internally or both go to twins; leftover twins take
    their own job; the remaining jobs are paired at random (their number is
    even by construction).
    """
    n = aux.n_jobs
    free_twins = list(range(n))
    rng.shuffle(free_twins)
    matching: list[tuple[int, int]] = []
    for w in aux.w_vertices:
        k = free_twins.pop()
        matching.append((aux.twin(k), w))
    wp = list(aux.w_prime_vertices)
    for x, y in zip(wp[::2], wp[1::2]):
        if len(free_twins) >= 2 and rng.random() < 0.5:
            matching.append((aux.twin(free_twins.pop()), x))
            matching.append((aux.twin(free_twins.pop()), y))
        else:
            matching.append((x, y))
    lone = set(free_twins)
    # a twin left over here has no neighbour but its own job
    for k in sorted(lone):
        matching.append((k, aux.twin(k)))
    pool = [k for k in range(n) if k not in lone]
    rng.shuffle(pool)
    for x, y in zip(pool[::2], pool[1::2]):
        matching.append((min(x, y), max(x, y)))
    return sorted((min(u, v), max(u, v)) for u, v in matching)


def solve_k2(instance: Instance) -> tuple[Schedule, ThroughputReport]:
    aux = build_aux_graph(instance)
    matching = max_weight_perfect_matching(aux.n_vertices, aux.edges)
    schedule = schedule_from_matching(instance, aux, matching)
    report = evaluate(instance, schedule)
    expected = matching_weight(aux.edges, matching) + (instance.horizon - aux.n_jobs) * aux.f0
    if report.total != expected:
        raise RuntimeError(f"matching weight identity broken: {report.total} != {expected}")
    return schedule, report


def single_node_hub(network: FlowNetwork) -> int | None:
    """The transshipment node if every arc is ``s -> v`` or ``v -> t`` for one ``v``."""
    s, t = network.source, network.sink
    mids = {a.head for a in network.arcs if a.tail == s} | {a.tail for a in network.arcs if a.head == t}
    if len(mids) != 1 or s in mids or t in mids:
        return None
    (v,) = mids
    if any((a.tail, a.head) not in ((s, v), (v, t)) for a in network.arcs):
        return None
    return v


def single_node_schedule(instance: Instance, stats: dict | None = None) -> Schedule:
    """Optimal schedule for a network ``s -> v -> t`` with at most two outages per period.

    Writing ``a_1..a_r`` for the job arcs on the side with fewer jobs and
    ``b_1..b_s`` for the other side, both by non-increasing capacity:
    period ``i <= r`` shuts ``a_i, b_i``; the following periods up to
    ``2T - s`` shut ``b_i`` alone; if ``s > T`` the last ``s - T`` periods
    pair ``b_i`` with ``b_{2T+1-i}``.

    When ``stats`` is given it receives the number of capacity comparisons
    made while sorting and the number of arcs placed afterwards.
    """
    v = single_node_hub(instance.network)
    if v is None:
        raise WrongTopology("network is not of the form source -> v -> sink")
    if not instance.is_uniform or instance.limit != 2:
        raise PreconditionViolated("single-node schedule needs a uniform limit of 2")
    net, T = instance.network, instance.horizon
    jobs = set(instance.jobs)
    inbound = [a for a in net.arcs if a.head == v and a.id in jobs]
    outbound = [a for a in net.arcs if a.tail == v and a.id in jobs]
    if len(inbound) > len(outbound):
        inbound, outbound = outbound, inbound
    r, s = len(inbound), len(outbound)
    if r + s > 2 * T:
        raise InfeasibleInstance(f"{r + s} jobs cannot fit into {T} periods of 2")

    comparisons = 0

    def by_capacity(x, y):
        nonlocal comparisons
        comparisons += 1
        if x.capacity != y.capacity:
            return y.capacity - x.capacity
        return x.id - y.id

    key = cmp_to_key(by_capacity)
    a = [arc.id for arc in sorted(inbound, key=key)]
    b = [arc.id for arc in sorted(outbound, key=key)]

    periods: list[list[int]] = [[] for _ in range(T)]
    for i in range(r):
        periods[i] = [a[i], b[i]]
    for i in range(r, min(T, 2 * T - s, s)):
        periods[i] = [b[i]]
    if s > T:
        # 1-based period i pairs b_i with b_{2T+1-i}
        for i in range(2 * T - s + 1, T + 1):
            periods[i - 1] = [b[i - 1], b[2 * T - i]]
    if stats is not None:
        stats["comparisons"] = comparisons
        stats["placements"] = sum(len(g) for g in periods)
    return Schedule.from_periods(periods)


def exchange_inequality(x1, x2, x3, x4, x5, x6) -> bool:
    """Exchange inequality behind the single-node schedule.

    For ``x3, x4`` in ``[x1, x2]`` with ``x3 + x4 == x1 + x2`` and
    ``x5 <= x6``: ``min(x3, x6) + min(x4, x5) >= min(x1, x6) + min(x2, x5)``.
    """
    if not (x1 <= x3 <= x2 and x1 <= x4 <= x2 and x3 + x4 == x1 + x2 and x5 <= x6):
        raise PreconditionViolated(f"precondition fails for {(x1, x2, x3, x4, x5, x6)}")
    return min(x3, x6) + min(x4, x5) >= min(x1, x6) + min(x2, x5)


lemma1_check = exchange_inequality

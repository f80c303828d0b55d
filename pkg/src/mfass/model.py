"""Networks, instances, schedules, and their evaluation by maximum flow."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from mfass.errors import InfeasibleInstance, InfeasibleSchedule

INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class Arc:
    id: int
    tail: int
    head: int
    capacity: int


@dataclass(frozen=True)
class FlowNetwork:
    node_count: int
    source: int
    sink: int
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))

    @classmethod
    def from_edges(cls, node_count: int, source: int, sink: int,
                   edges: Iterable[tuple[int, int, int]]) -> "FlowNetwork":
        """Build a network from ``(tail, head, capacity)`` triples, numbering arcs in order."""
        arcs = tuple(Arc(i, t, h, c) for i, (t, h, c) in enumerate(edges))
        return cls(node_count, source, sink, arcs)

    @property
    def m(self) -> int:
        return len(self.arcs)

    def arc(self, arc_id: int) -> Arc:
        return self.arcs[arc_id]

    def in_arcs(self, v: int) -> list[Arc]:
        return [a for a in self.arcs if a.head == v]

    def out_arcs(self, v: int) -> list[Arc]:
        return [a for a in self.arcs if a.tail == v]

    @cached_property
    def _residual(self):
        # Edge 2k is arc k forward, 2k+1 its reverse.
        adj: list[list[int]] = [[] for _ in range(self.node_count)]
        to = [0] * (2 * len(self.arcs))
        for a in self.arcs:
            to[2 * a.id] = a.head
            to[2 * a.id + 1] = a.tail
            adj[a.tail].append(2 * a.id)
            adj[a.head].append(2 * a.id + 1)
        return adj, to


@dataclass(frozen=True)
class Instance:
    network: FlowNetwork
    jobs: tuple[int, ...]
    horizon: int
    limits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "jobs", tuple(sorted(self.jobs)))
        object.__setattr__(self, "limits", tuple(self.limits))

    @classmethod
    def uniform(cls, network: FlowNetwork, jobs: Iterable[int], horizon: int, limit: int) -> "Instance":
        return cls(network, tuple(jobs), horizon, (limit,) * horizon)

    @property
    def is_uniform(self) -> bool:
        return len(set(self.limits)) <= 1

    @property
    def limit(self) -> int:
        """The common per-period limit; only meaningful when ``is_uniform``."""
        return self.limits[0] if self.limits else 0

    def with_capacities(self, capacities: Sequence[int]) -> "Instance":
        arcs = tuple(Arc(a.id, a.tail, a.head, int(c)) for a, c in zip(self.network.arcs, capacities))
        net = FlowNetwork(self.network.node_count, self.network.source, self.network.sink, arcs)
        return Instance(net, self.jobs, self.horizon, self.limits)

    def with_limits(self, limits: Sequence[int]) -> "Instance":
        return Instance(self.network, self.jobs, len(limits), tuple(limits))


@dataclass
class Schedule:
    """Outage period (0-based) for every job arc."""

    assignment: dict[int, int] = field(default_factory=dict)

    @classmethod
    def from_periods(cls, periods: Sequence[Iterable[int]]) -> "Schedule":
        return cls({a: i for i, group in enumerate(periods) for a in group})

    def periods(self, horizon: int) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(horizon)]
        for a, i in sorted(self.assignment.items()):
            out[i].append(a)
        return out


@dataclass(frozen=True)
class ThroughputReport:
    per_period_flow: tuple[int, ...]
    total: int


@dataclass(frozen=True)
class InstanceClassTags:
    is_series_parallel: bool
    is_balanced: bool
    is_unit_capacity: bool
    all_arcs_jobbed: bool


def max_flow(network: FlowNetwork, shut: Iterable[int] = ()) -> int:
    """Maximum s-t flow value with every arc in ``shut`` at capacity zero.

    Dinic's algorithm on a residual structure cached per network; shutting is
    done by masking capacities, so the network object is never modified.
    """
    adj, to = network._residual
    cap = [0] * len(to)
    for a in network.arcs:
        cap[2 * a.id] = a.capacity
    for k in shut:
        cap[2 * k] = 0
    s, t = network.source, network.sink
    n = network.node_count
    flow = 0
    while True:
        level = [-1] * n
        level[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for e in adj[v]:
                w = to[e]
                if cap[e] > 0 and level[w] < 0:
                    level[w] = level[v] + 1
                    queue.append(w)
        if level[t] < 0:
            return flow
        it = [0] * n
        while True:
            path: list[int] = []
            v = s
            while v != t:
                edges = adj[v]
                while it[v] < len(edges):
                    e = edges[it[v]]
                    if cap[e] > 0 and level[to[e]] == level[v] + 1:
                        break
                    it[v] += 1
                else:
                    if v == s:
                        break
                    level[v] = -1
                    e = path.pop()
                    v = to[e ^ 1]
                    it[v] += 1
                    continue
                path.append(e)
                v = to[e]
            if v != t:
                break
            push = min(cap[e] for e in path)
            for e in path:
                cap[e] -= push
                cap[e ^ 1] += push
            flow += push


def validate_instance(instance: Instance) -> list[str]:
    """Return a list of problems with ``instance``; empty means usable and feasible."""
    errors: list[str] = []
    net = instance.network
    if net.node_count < 1:
        errors.append("node count must be positive")
    for name, v in (("source", net.source), ("sink", net.sink)):
        if not 0 <= v < net.node_count:
            errors.append(f"{name} {v} is not a valid node id")
    if net.source == net.sink:
        errors.append("source and sink coincide")
    for pos, a in enumerate(net.arcs):
        if a.id != pos:
            errors.append(f"arc ids must be dense and ordered: position {pos} holds id {a.id}")
        if not (0 <= a.tail < net.node_count and 0 <= a.head < net.node_count):
            errors.append(f"arc {a.id} has an endpoint outside 0..{net.node_count - 1}")
        if a.capacity < 0:
            errors.append(f"arc {a.id} has negative capacity {a.capacity}")
        elif a.capacity > INT64_MAX:
            errors.append(f"arc {a.id} capacity exceeds the 64-bit range")
    if len(set(instance.jobs)) != len(instance.jobs):
        errors.append("job set lists an arc twice")
    for j in instance.jobs:
        if not 0 <= j < net.m:
            errors.append(f"job {j} is not an arc id")
    if instance.horizon < 1:
        errors.append("horizon must be at least 1")
    if len(instance.limits) != instance.horizon:
        errors.append(f"expected {instance.horizon} per-period limits, got {len(instance.limits)}")
    if any(k < 0 for k in instance.limits):
        errors.append("per-period limits must be nonnegative")
    if len(instance.jobs) > sum(instance.limits):
        errors.append(f"infeasible: {len(instance.jobs)} jobs exceed total capacity "
                      f"{sum(instance.limits)} of the per-period limits")
    return errors


def require_feasible(instance: Instance) -> None:
    problems = validate_instance(instance)
    if problems:
        raise InfeasibleInstance("; ".join(problems))


def validate_schedule(instance: Instance, schedule: Schedule) -> list[str]:
    """List violated constraints; periods are reported 1-based."""
    violations: list[str] = []
    jobs = set(instance.jobs)
    for a in sorted(set(schedule.assignment) - jobs):
        violations.append(f"job-duration: arc {a} is not a job arc but is scheduled")
    for a in sorted(jobs - set(schedule.assignment)):
        violations.append(f"job-duration: job arc {a} is not scheduled in any period")
    counts = [0] * instance.horizon
    for a, i in sorted(schedule.assignment.items()):
        if not 0 <= i < instance.horizon:
            violations.append(f"period-range: arc {a} scheduled in period {i + 1} outside 1..{instance.horizon}")
        elif a in jobs:
            counts[i] += 1
    for i, (c, k) in enumerate(zip(counts, instance.limits)):
        if c > k:
            violations.append(f"period-limit: period {i + 1} shuts {c} jobs, limit is {k}")
    return violations


def evaluate(instance: Instance, schedule: Schedule) -> ThroughputReport:
    violations = validate_schedule(instance, schedule)
    if violations:
        raise InfeasibleSchedule(violations)
    flows = tuple(max_flow(instance.network, shut) for shut in schedule.periods(instance.horizon))
    total = sum(flows)
    if total > INT64_MAX:
        raise OverflowError("total throughput exceeds the 64-bit range")
    return ThroughputReport(flows, total)


def is_balanced(network: FlowNetwork) -> bool:
    balance = [0] * network.node_count
    for a in network.arcs:
        balance[a.head] += a.capacity
        balance[a.tail] -= a.capacity
    return all(b == 0 for v, b in enumerate(balance) if v not in (network.source, network.sink))


def classify(instance: Instance) -> InstanceClassTags:
    from mfass.sptree import is_series_parallel

    net = instance.network
    return InstanceClassTags(
        is_series_parallel=is_series_parallel(net),
        is_balanced=is_balanced(net),
        is_unit_capacity=all(a.capacity == 1 for a in net.arcs),
        all_arcs_jobbed=set(instance.jobs) == {a.id for a in net.arcs},
    )


def all_at_once(instance: Instance, period: int = 0) -> Schedule:
    """Every job shut in the same period."""
    return Schedule({a: period for a in instance.jobs})


def induced_availability(instance: Instance, schedule: Mapping[int, int] | Schedule) -> dict[tuple[int, int], int]:
    """The 0/1 availability indicator ``y[(arc, period)]`` for job arcs (0 in the outage period)."""
    assignment = schedule.assignment if isinstance(schedule, Schedule) else schedule
    return {(a, i): int(assignment.get(a) != i) for a in instance.jobs for i in range(instance.horizon)}

"""Instance generators: reduction gadgets with certified optima, and random families."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from mfass.errors import PreconditionViolated
from mfass.model import Arc, FlowNetwork, Instance


@dataclass(frozen=True)
class Certificate:
    bound: int
    decision: str  # "yes", "no" or "unknown"
    family: str

    def dumps(self) -> str:
        return f"bound {self.bound}\ndecision {self.decision}\nfamily {self.family}\n"

    @classmethod
    def loads(cls, text: str) -> "Certificate":
        fields = dict(line.split(None, 1) for line in text.splitlines() if line.strip())
        return cls(int(fields["bound"]), fields["decision"].strip(), fields["family"].strip())


# Exact decision procedures, only used to label certificates at small sizes.

def has_three_partition(B: int, values: Sequence[int], max_items: int = 18) -> bool | None:
    if len(values) > max_items:
        return None
    items = sorted(values, reverse=True)
    used = [False] * len(items)

    def fill(remaining_triples: int) -> bool:
        if remaining_triples == 0:
            return True
        first = used.index(False)
        used[first] = True
        for j in range(first + 1, len(items)):
            if used[j]:
                continue
            used[j] = True
            for k in range(j + 1, len(items)):
                if not used[k] and items[first] + items[j] + items[k] == B:
                    used[k] = True
                    if fill(remaining_triples - 1):
                        return True
                    used[k] = False
            used[j] = False
        used[first] = False
        return False

    return fill(len(items) // 3)


def has_partition(B: int, values: Sequence[int]) -> bool:
    reachable = {0}
    for u in values:
        reachable |= {r + u for r in reachable if r + u <= B}
    return B in reachable


def _check_three_partition(B: int, values: Sequence[int]) -> int:
    if len(values) % 3 or not values:
        raise PreconditionViolated("3-Partition needs 3n values with n >= 1")
    n = len(values) // 3
    if sum(values) != n * B:
        raise PreconditionViolated(f"values sum to {sum(values)}, expected n*B = {n * B}")
    for u in values:
        if not (B < 4 * u and 2 * u < B):
            raise PreconditionViolated(f"value {u} is outside the open window (B/4, B/2)")
    return n


def gen_3partition(B: int, values: Sequence[int]) -> tuple[Instance, Certificate]:
    """Single transshipment node, every arc a job, three outages per period.

    Value ``u_i`` becomes ``3 u_i - B``: an arc into the hub with that
    capacity when it is nonnegative, otherwise an arc out of the hub with its
    negation. Arc ``i`` corresponds to value ``i``. Nodes: 0 source, 1 hub,
    2 sink. The throughput can reach ``(n-1) X``, ``X`` the total
    inbound capacity, exactly when the values split into triples summing to ``B``.
    """
    n = _check_three_partition(B, values)
    shifted = [3 * u - B for u in values]
    arcs = tuple(Arc(i, 0, 1, d) if d >= 0 else Arc(i, 1, 2, -d) for i, d in enumerate(shifted))
    net = FlowNetwork(3, 0, 2, arcs)
    inst = Instance.uniform(net, range(len(arcs)), n, 3)
    X = sum(d for d in shifted if d >= 0)
    decision = has_three_partition(B, values)
    return inst, Certificate((n - 1) * X, _label(decision), "3part")


def gen_partition(B: int, values: Sequence[int]) -> tuple[Instance, Certificate]:
    """Arcs ``s -> v`` with the values, two arcs ``v -> t`` of capacity ``B``, two periods,
    limit ``|J| - 1``; throughput ``2B`` is reachable iff the values split evenly."""
    if sum(values) != 2 * B:
        raise PreconditionViolated(f"values sum to {sum(values)}, expected 2B = {2 * B}")
    n = len(values)
    arcs = [Arc(i, 0, 1, u) for i, u in enumerate(values)]
    arcs += [Arc(n, 1, 2, B), Arc(n + 1, 1, 2, B)]
    net = FlowNetwork(3, 0, 2, tuple(arcs))
    inst = Instance.uniform(net, range(n + 2), 2, n + 1)
    return inst, Certificate(2 * B, _label(has_partition(B, values)), "part")


def gen_unitcap(B: int, values: Sequence[int]) -> tuple[Instance, Certificate]:
    """Unit capacities: ``3n`` disjoint ``s -> v`` paths, path ``i`` a chain of ``u_i`` job
    arcs, then ``3(n-1)`` parallel non-job arcs ``v -> t``; ``T = n``, limit ``B``.

    Nodes: 0 source, 1 sink, 2 hub, then path interiors in order. Path arcs
    come first (path by path, source side first), the hub-to-sink arcs last.
    """
    n = _check_three_partition(B, values)
    arcs: list[Arc] = []
    node = 3
    for u in values:
        prev = 0
        for step in range(u):
            nxt = 2 if step == u - 1 else node
            if nxt != 2:
                node += 1
            arcs.append(Arc(len(arcs), prev, nxt, 1))
            prev = nxt
    jobs = range(len(arcs))
    for _ in range(3 * (n - 1)):
        arcs.append(Arc(len(arcs), 2, 1, 1))
    net = FlowNetwork(node, 0, 1, tuple(arcs))
    inst = Instance.uniform(net, jobs, n, B)
    return inst, Certificate(3 * n * (n - 1), _label(has_three_partition(B, values)), "unitcap")


def _label(decision: bool | None) -> str:
    return "unknown" if decision is None else "yes" if decision else "no"


def _limits(K: int | Sequence[int], T: int) -> tuple[int, ...]:
    return (K,) * T if isinstance(K, int) else tuple(K)


def _trim_jobs(jobs: list[int], limits: Sequence[int]) -> list[int]:
    # keep the instance feasible: drop the highest-numbered excess jobs
    return jobs[: sum(limits)]


def gen_random_sp(arc_count: int, cap_range: tuple[int, int] = (1, 20), job_probability: float = 0.6,
                  T: int = 2, K: int | Sequence[int] = 2, seed: int = 0) -> Instance:
    """Random two-terminal series-parallel network built from a random composition tree.

    Node 0 is the source and node 1 the sink. Jobs beyond what the limits
    can absorb are dropped (highest arc ids first), so the result is feasible.
    """
    if arc_count < 1:
        raise PreconditionViolated("arc_count must be at least 1")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    node_count = 2
    stack = [(arc_count, 0, 1)]
    while stack:
        count, u, v = stack.pop()
        if count == 1:
            edges.append((u, v))
            continue
        left = rng.randint(1, count - 1)
        if rng.random() < 0.5:
            mid = node_count
            node_count += 1
            stack.append((count - left, mid, v))
            stack.append((left, u, mid))
        else:
            stack.append((count - left, u, v))
            stack.append((left, u, v))
    lo, hi = cap_range
    arcs = tuple(Arc(i, u, v, rng.randint(lo, hi)) for i, (u, v) in enumerate(edges))
    jobs = [i for i in range(len(arcs)) if rng.random() < job_probability]
    limits = _limits(K, T)
    return Instance(FlowNetwork(node_count, 0, 1, arcs), tuple(_trim_jobs(jobs, limits)), T, limits)


def gen_random_single_node(in_arcs: int, out_arcs: int, cap_range: tuple[int, int] = (1, 20),
                           T: int = 2, seed: int = 0, K: int | Sequence[int] = 2,
                           job_probability: float = 1.0) -> Instance:
    """Network ``s -> v -> t`` only: nodes 0 source, 1 hub, 2 sink; inbound arcs first."""
    if in_arcs < 1 or out_arcs < 1:
        raise PreconditionViolated("need at least one arc on each side of the hub")
    rng = random.Random(seed)
    lo, hi = cap_range
    arcs = [Arc(i, 0, 1, rng.randint(lo, hi)) for i in range(in_arcs)]
    arcs += [Arc(in_arcs + i, 1, 2, rng.randint(lo, hi)) for i in range(out_arcs)]
    jobs = [a.id for a in arcs if rng.random() < job_probability]
    limits = _limits(K, T)
    return Instance(FlowNetwork(3, 0, 2, tuple(arcs)), tuple(_trim_jobs(jobs, limits)), T, limits)


def gen_random_network(node_count: int, arc_count: int, cap_range: tuple[int, int] = (1, 20),
                       job_probability: float = 0.6, T: int = 2, K: int | Sequence[int] = 2,
                       seed: int = 0) -> Instance:
    """Random acyclic network, generally not series-parallel.

    Source is node 0 and sink the last node; every arc goes from a lower to
    a higher node id, and a spine ``0 -> 1 -> ... -> n-1`` comes first.
    """
    if node_count < 2:
        raise PreconditionViolated("need at least a source and a sink")
    rng = random.Random(seed)
    lo, hi = cap_range
    pairs = [(v, v + 1) for v in range(node_count - 1)][:arc_count]
    while len(pairs) < arc_count:
        u, v = sorted(rng.sample(range(node_count), 2))
        pairs.append((u, v))
    arcs = tuple(Arc(i, u, v, rng.randint(lo, hi)) for i, (u, v) in enumerate(pairs))
    jobs = [i for i in range(len(arcs)) if rng.random() < job_probability]
    limits = _limits(K, T)
    return Instance(FlowNetwork(node_count, 0, node_count - 1, arcs), tuple(_trim_jobs(jobs, limits)), T, limits)

"""Dynamic programs over the SP-tree.

A job-capacity vector is a tuple of ``T`` pairs ``(jobs_shut, capacity)``,
one per period, for the subnetwork below an SP-tree node. Periods are
interchangeable when their limits agree, so vectors are stored in standard
form: capacity non-increasing, then job count non-increasing. With a
time-varying limit only periods sharing a limit are interchangeable; the
periods are then sorted by limit (largest first) and the standard form is
applied inside each block of equal limits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional, Sequence

from mfass.errors import BudgetExceeded, InfeasibleInstance
from mfass.model import Instance, Schedule, ThroughputReport, evaluate, require_feasible
from mfass.sptree import Leaf, Parallel, Series, SPNode, decompose, postorder

Vector = tuple[tuple[int, int], ...]
# (left child vector, right child vector, right permutation, canonicalizing permutation)
Provenance = Optional[tuple[Vector, Vector, tuple[int, ...], tuple[int, ...]]]

DEFAULT_LIST_CAP = 2_000_000


def _standard_key(entry: tuple[int, int]) -> tuple[int, int]:
    return (-entry[1], -entry[0])


def canonicalize(vector: Sequence[tuple[int, int]]) -> Vector:
    """Standard-form permutation of ``vector``: capacity descending, then jobs descending."""
    return tuple(sorted((tuple(e) for e in vector), key=_standard_key))


def is_standard_form(vector: Sequence[tuple[int, int]]) -> bool:
    return all(_standard_key(x) <= _standard_key(y) for x, y in zip(vector, vector[1:]))


def _blocks(limits: Sequence[int]) -> list[range]:
    out, start = [], 0
    for i in range(1, len(limits) + 1):
        if i == len(limits) or limits[i] != limits[start]:
            out.append(range(start, i))
            start = i
    return out


def _canonical_with_perm(raw: list[tuple[int, int]], blocks: list[range]) -> tuple[Vector, tuple[int, ...]]:
    sigma: list[int] = []
    for block in blocks:
        sigma.extend(sorted(block, key=lambda i: _standard_key(raw[i])))
    return tuple(raw[i] for i in sigma), tuple(sigma)


def _distinct_permutations(vector: Vector) -> list[tuple[int, ...]]:
    seen: set[Vector] = set()
    out = []
    for pi in permutations(range(len(vector))):
        image = tuple(vector[i] for i in pi)
        if image not in seen:
            seen.add(image)
            out.append(pi)
    return out


def merge_lists(left: dict[Vector, Provenance], right: dict[Vector, Provenance], series: bool,
                limits: Sequence[int], cap: int = DEFAULT_LIST_CAP) -> dict[Vector, Provenance]:
    """Combine two child lists; ``limits`` is the per-position limit in DP order."""
    T = len(limits)
    blocks = _blocks(limits)
    out: dict[Vector, Provenance] = {}
    right_perms = [(zw, _distinct_permutations(zw)) for zw in right]
    for zu in left:
        for zw, perms in right_perms:
            for pi in perms:
                raw = []
                for i in range(T):
                    ju, cu = zu[i]
                    jw, cw = zw[pi[i]]
                    if ju + jw > limits[i]:
                        break
                    raw.append((ju + jw, min(cu, cw) if series else cu + cw))
                else:
                    vec, sigma = _canonical_with_perm(raw, blocks)
                    if vec not in out:
                        out[vec] = (zu, zw, pi, sigma)
                        if len(out) > cap:
                            raise BudgetExceeded(f"job-capacity list grew past {cap} vectors")
    return out


def leaf_list(capacity: int, is_job: bool, limits: Sequence[int]) -> dict[Vector, Provenance]:
    T = len(limits)
    if not is_job:
        return {((0, capacity),) * T: None}
    out: dict[Vector, Provenance] = {}
    for block in _blocks(limits):
        if limits[block.start] < 1:
            continue
        raw = [(0, capacity)] * T
        raw[block.start] = (1, 0)
        vec, _ = _canonical_with_perm(raw, _blocks(limits))
        out[vec] = None
    return out


@dataclass
class DPTables:
    """All job-capacity lists of one run, with what is needed to replay them."""

    instance: Instance
    tree: SPNode
    order: tuple[int, ...]  # DP position -> period
    limits: tuple[int, ...]  # per DP position
    lists: dict[int, dict[Vector, Provenance]] = field(default_factory=dict)

    def list_at(self, node: SPNode) -> dict[Vector, Provenance]:
        return self.lists[id(node)]

    @property
    def root_list(self) -> dict[Vector, Provenance]:
        return self.list_at(self.tree)

    def best_root_vector(self) -> Vector:
        return max(self.root_list, key=lambda vec: sum(z for _, z in vec))

    def realize(self, node: SPNode, vector: Vector) -> dict[int, int]:
        """Job arc -> DP position for one schedule of ``node``'s jobs achieving ``vector``."""
        jobs = set(self.instance.jobs)
        out: dict[int, int] = {}
        stack = [(node, vector, tuple(range(len(vector))))]
        while stack:
            node, vec, pos = stack.pop()
            if isinstance(node, Leaf):
                if node.arc in jobs:
                    (k,) = [k for k, (j, _) in enumerate(vec) if j == 1]
                    out[node.arc] = pos[k]
                continue
            zu, zw, pi, sigma = self.list_at(node)[vec]
            raw_pos = [0] * len(vec)
            for k, i in enumerate(sigma):
                raw_pos[i] = pos[k]
            pos_w = [0] * len(vec)
            for i, p in enumerate(raw_pos):
                pos_w[pi[i]] = p
            stack.append((node.left, zu, tuple(raw_pos)))
            stack.append((node.right, zw, tuple(pos_w)))
        return out

    def trace(self) -> list[str]:
        """One line per SP-tree node (children first): kind, arc count, list size."""
        lines = []
        for node in postorder(self.tree):
            kind = "leaf" if isinstance(node, Leaf) else "series" if isinstance(node, Series) else "parallel"
            lines.append(f"{kind} {len(self.lists[id(node)])}")
        return lines


def build_tables(instance: Instance, tree: SPNode | None = None, cap: int = DEFAULT_LIST_CAP) -> DPTables:
    require_feasible(instance)
    if tree is None:
        tree = decompose(instance.network)
    order = tuple(sorted(range(instance.horizon), key=lambda i: (-instance.limits[i], i)))
    limits = tuple(instance.limits[i] for i in order)
    tables = DPTables(instance, tree, order, limits)
    jobs = set(instance.jobs)
    caps = [a.capacity for a in instance.network.arcs]
    for node in postorder(tree):
        if isinstance(node, Leaf):
            lst = leaf_list(caps[node.arc], node.arc in jobs, limits)
        else:
            lst = merge_lists(tables.list_at(node.left), tables.list_at(node.right),
                              isinstance(node, Series), limits, cap)
        tables.lists[id(node)] = lst
    if not tables.root_list:
        raise InfeasibleInstance("no schedule respects the per-period limits")
    return tables


def reconstruct_schedule(tables: DPTables, vector: Vector) -> Schedule:
    positions = tables.realize(tables.tree, vector)
    return Schedule({a: tables.order[p] for a, p in positions.items()})


def solve_sp_dp(instance: Instance, cap: int = DEFAULT_LIST_CAP) -> tuple[Schedule, ThroughputReport]:
    """Optimal schedule for a series-parallel network, via job-capacity lists."""
    tables = build_tables(instance, cap=cap)
    schedule = reconstruct_schedule(tables, tables.best_root_vector())
    return schedule, evaluate(instance, schedule)


def sp_dp_optimum(instance: Instance, cap: int = DEFAULT_LIST_CAP) -> int:
    tables = build_tables(instance, cap=cap)
    return sum(z for _, z in tables.best_root_vector())


def max_flow_with_outages(instance: Instance, rho: int, tree: SPNode | None = None) -> int | None:
    """Largest s-t capacity when exactly ``rho`` job arcs are closed; ``None`` if impossible."""
    if tree is None:
        tree = decompose(instance.network)
    jobs = set(instance.jobs)
    caps = [a.capacity for a in instance.network.arcs]
    table: dict[int, list[int | None]] = {}
    for node in postorder(tree):
        if isinstance(node, Leaf):
            z: list[int | None] = [caps[node.arc]] + [None] * rho
            if rho >= 1 and node.arc in jobs:
                z[1] = 0
        else:
            zu, zw = table.pop(id(node.left)), table.pop(id(node.right))
            z = [None] * (rho + 1)
            for j in range(rho + 1):
                if zu[j] is None:
                    continue
                for j2 in range(rho + 1 - j):
                    if zw[j2] is None:
                        continue
                    cand = zu[j] + zw[j2] if isinstance(node, Parallel) else min(zu[j], zw[j2])
                    if z[j + j2] is None or cand > z[j + j2]:
                        z[j + j2] = cand
        table[id(node)] = z
    return table[id(tree)][rho]

"""Exhaustive reference solver for desk-scale instances."""

from __future__ import annotations

from math import comb
from typing import Iterator, Sequence

from mfass.errors import InfeasibleInstance, TooLarge
from mfass.model import Instance, Schedule, ThroughputReport, max_flow, require_feasible

DEFAULT_CAP = 10**7


def count_feasible_assignments(n_jobs: int, horizon: int, limits: Sequence[int] | int) -> int:
    """Number of ordered job-to-period maps respecting the per-period limits."""
    if isinstance(limits, int):
        limits = (limits,) * horizon
    # ways[r]: ways to place r still-unassigned labelled jobs into the remaining periods
    ways = [1] + [0] * n_jobs
    for k in limits:
        ways = [sum(comb(r, c) * ways[r - c] for c in range(min(k, r) + 1)) for r in range(n_jobs + 1)]
    return ways[n_jobs]


def _assignments(n: int, limits: Sequence[int], symmetric: bool) -> Iterator[tuple[list[int], list[int]]]:
    """Yield ``(periods, masks)`` in lexicographic order of ``periods``.

    ``periods[k]`` is the period of job ``k``; ``masks[i]`` has bit ``k`` set
    for every job in period ``i``. Both lists are reused between yields.

    With ``symmetric`` only the lexicographically smallest member of each
    period-relabelling orbit is produced (restricted growth strings).
    """
    T = len(limits)
    load = [0] * T
    masks = [0] * T
    current = [0] * n

    def rec(k: int, used: int) -> Iterator[tuple[list[int], list[int]]]:
        if k == n:
            yield current, masks
            return
        bit = 1 << k
        top = min(T, used + 1) if symmetric else T
        for i in range(top):
            if load[i] < limits[i]:
                load[i] += 1
                masks[i] |= bit
                current[k] = i
                yield from rec(k + 1, max(used, i + 1))
                masks[i] &= ~bit
                load[i] -= 1

    yield from rec(0, 0)


def solve_bruteforce(instance: Instance, cap: int = DEFAULT_CAP) -> tuple[Schedule, ThroughputReport]:
    """Enumerate every feasible schedule and keep the best one.

    Ties go to the lexicographically smallest period list (jobs in id order).
    Max-flow values are cached per shut set, as bitmasks over the jobs.
    """
    require_feasible(instance)
    jobs = instance.jobs
    n, T = len(jobs), instance.horizon
    size = count_feasible_assignments(n, T, instance.limits)
    if size > cap:
        raise TooLarge(f"{size} feasible assignments exceed the enumeration cap {cap}")
    if size == 0:
        raise InfeasibleInstance("no feasible assignment")
    net = instance.network
    cache: dict[int, int] = {}

    def flow(mask: int) -> int:
        if mask not in cache:
            cache[mask] = max_flow(net, [jobs[k] for k in range(n) if mask >> k & 1])
        return cache[mask]

    best_total = -1
    best: list[int] = []
    for periods, masks in _assignments(n, instance.limits, instance.is_uniform):
        total = sum(cache[m] if m in cache else flow(m) for m in masks)
        if total > best_total:
            best_total, best = total, list(periods)
    schedule = Schedule({jobs[k]: i for k, i in enumerate(best)})
    masks = [0] * T
    for k, i in enumerate(best):
        masks[i] |= 1 << k
    report = ThroughputReport(tuple(flow(m) for m in masks), best_total)
    return schedule, report


def optimum(instance: Instance, cap: int = DEFAULT_CAP) -> int:
    return solve_bruteforce(instance, cap)[1].total

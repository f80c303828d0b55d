"""Scaling-and-rounding approximation for series-parallel networks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from mfass.errors import InfeasibleInstance, PreconditionViolated
from mfass.model import Instance, Schedule, ThroughputReport, all_at_once, evaluate, max_flow, require_feasible
from mfass.spdp import DEFAULT_LIST_CAP, build_tables, max_flow_with_outages, reconstruct_schedule, solve_sp_dp
from mfass.sptree import decompose


def as_fraction(epsilon) -> Fraction:
    """Exact rational for ``epsilon``; floats go through their shortest repr so 0.1 is 1/10."""
    if isinstance(epsilon, Fraction):
        return epsilon
    if isinstance(epsilon, float):
        return Fraction(repr(epsilon))
    return Fraction(epsilon)


@dataclass(frozen=True)
class ScalingParams:
    rho: int
    M: int
    B: int
    L: Fraction
    epsilon: Fraction
    clamped: tuple[int, ...]
    scaled: tuple[int, ...]


def forced_outages(instance: Instance) -> int:
    """Fewest outages any single period can end up with over all feasible schedules."""
    return max(0, len(instance.jobs) - sum(instance.limits) + min(instance.limits))


def scale_factor(B: int, m: int, T: int, epsilon) -> Fraction:
    return max(Fraction(1), as_fraction(epsilon) * B / (m * T))


def compute_scaling(instance: Instance, epsilon) -> ScalingParams:
    eps = as_fraction(epsilon)
    if not 0 < eps < 1:
        raise PreconditionViolated(f"epsilon must lie in (0, 1), got {epsilon}")
    require_feasible(instance)
    tree = decompose(instance.network)
    rho = forced_outages(instance)
    if rho == 0:
        M = max_flow(instance.network)
    else:
        M = max_flow_with_outages(instance, rho, tree)
        if M is None:
            raise InfeasibleInstance(f"cannot close {rho} job arcs")
    clamped = tuple(min(a.capacity, M) for a in instance.network.arcs)
    B = max(clamped, default=0)
    L = scale_factor(B, instance.network.m, instance.horizon, eps)
    scaled = tuple(floor(c / L) for c in clamped)
    return ScalingParams(rho, M, B, L, eps, clamped, scaled)


@dataclass(frozen=True)
class Certificate:
    """Values behind ``F(y~) >= L*F'(y~)`` and the resulting guarantee ``F(y~) >= (1-eps)*OPT``."""

    L: Fraction
    scaled_value: int  # F'(y~): optimum of the scaled instance
    value: int  # F(y~): the returned schedule on original capacities
    epsilon: Fraction
    lower_bound: int  # M, a lower bound on OPT

    def lines(self) -> list[str]:
        return [
            f"F(y~) = {self.value} >= L*F'(y~) = {self.L}*{self.scaled_value} = {self.L * self.scaled_value}",
            "L*F'(y~) >= L*F'(y*) (scaled schedule is optimal for scaled capacities)",
            f"L*F'(y*) >= (1-eps)*F(y*) with eps = {self.epsilon}; OPT >= M = {self.lower_bound}",
        ]


def solve_fptas(instance: Instance, epsilon, cap: int = DEFAULT_LIST_CAP) -> tuple[Schedule, ThroughputReport, Certificate]:
    params = compute_scaling(instance, epsilon)
    if params.L == 1:
        schedule, report = solve_sp_dp(instance, cap)
        cert = Certificate(params.L, report.total, report.total, params.epsilon, params.M)
        return schedule, report, cert
    scaled = instance.with_capacities(params.scaled)
    tables = build_tables(scaled, cap=cap)
    best = tables.best_root_vector()
    schedule = reconstruct_schedule(tables, best)
    report = evaluate(instance, schedule)
    cert = Certificate(params.L, sum(z for _, z in best), report.total, params.epsilon, params.M)
    return schedule, report, cert


def solve_ptas_kall(instance: Instance, epsilon, cap: int = DEFAULT_LIST_CAP) -> tuple[Schedule, ThroughputReport]:
    """Without an effective limit: all jobs at once when ``1/T <= epsilon``, else the FPTAS."""
    if any(k < len(instance.jobs) for k in instance.limits):
        raise PreconditionViolated("every period must admit all jobs")
    decompose(instance.network)
    if ptas_takes_shortcut(instance.horizon, epsilon):
        schedule = all_at_once(instance)
        return schedule, evaluate(instance, schedule)
    schedule, report, _ = solve_fptas(instance, epsilon, cap)
    return schedule, report


def ptas_takes_shortcut(horizon: int, epsilon) -> bool:
    return Fraction(1, horizon) <= as_fraction(epsilon)

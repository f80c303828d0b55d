"""Algorithm selection."""

from __future__ import annotations

from dataclasses import dataclass

from mfass.approx import Certificate, solve_fptas, solve_ptas_kall
from mfass.errors import UnsupportedInstance
from mfass.k2solver import single_node_hub, single_node_schedule, solve_k2
from mfass.model import Instance, Schedule, ThroughputReport, evaluate, require_feasible
from mfass.oracle import DEFAULT_CAP, count_feasible_assignments, solve_bruteforce
from mfass.spdp import solve_sp_dp
from mfass.sptree import is_series_parallel

ALGORITHMS = ("auto", "bruteforce", "k2", "single-node", "spdp", "fptas", "ptas")


@dataclass
class DispatchConfig:
    dp_max_horizon: int = 4
    oracle_cap: int = DEFAULT_CAP


@dataclass
class SolveResult:
    algorithm: str
    schedule: Schedule
    report: ThroughputReport
    certificate: Certificate | None = None


def choose_algorithm(instance: Instance, epsilon=None, config: DispatchConfig | None = None) -> str:
    config = config or DispatchConfig()
    n = len(instance.jobs)
    if instance.is_uniform and instance.limit == 2:
        return "single-node" if single_node_hub(instance.network) is not None else "k2"
    sp = is_series_parallel(instance.network) if instance.network.arcs else False
    if sp and instance.horizon <= config.dp_max_horizon:
        return "fptas" if epsilon is not None else "spdp"
    if sp and epsilon is not None and all(k >= n for k in instance.limits):
        return "ptas"
    if count_feasible_assignments(n, instance.horizon, instance.limits) <= config.oracle_cap:
        return "bruteforce"
    raise UnsupportedInstance(
        "no exact or approximate method applies: the limit is not 2, the network is "
        + ("series-parallel but the horizon exceeds the dynamic-program threshold"
           if sp else "not series-parallel")
        + f", and enumeration would exceed {config.oracle_cap} assignments")


def solve(instance: Instance, algorithm: str = "auto", epsilon=None,
          config: DispatchConfig | None = None) -> SolveResult:
    config = config or DispatchConfig()
    require_feasible(instance)
    if algorithm == "auto":
        algorithm = choose_algorithm(instance, epsilon, config)
    cert = None
    if algorithm == "bruteforce":
        schedule, report = solve_bruteforce(instance, config.oracle_cap)
    elif algorithm == "k2":
        schedule, report = solve_k2(instance)
    elif algorithm == "single-node":
        schedule = single_node_schedule(instance)
        report = evaluate(instance, schedule)
    elif algorithm == "spdp":
        schedule, report = solve_sp_dp(instance)
    elif algorithm == "fptas":
        if epsilon is None:
            raise UnsupportedInstance("the approximation scheme needs an epsilon")
        schedule, report, cert = solve_fptas(instance, epsilon)
    elif algorithm == "ptas":
        if epsilon is None:
            raise UnsupportedInstance("the approximation scheme needs an epsilon")
        schedule, report = solve_ptas_kall(instance, epsilon)
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")
    return SolveResult(algorithm, schedule, report, cert)

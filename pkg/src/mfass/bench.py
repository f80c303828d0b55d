"""Benchmark runner: solver comparison over generated instance families, as CSV rows.

Config (JSON)::

    {
      "epsilon": 0.25,
      "oracle_cap": 200000,
      "solvers": ["auto", "bruteforce"],
      "families": [
        {"name": "sp6", "generator": "random-sp",
         "params": {"arc_count": 6, "T": 2, "K": 2}, "seeds": [0, 1]},
        {"name": "gadget", "generator": "3part",
         "params": {"B": 10, "values": [3, 3, 3, 3, 4, 4]}}
      ]
    }
"""

from __future__ import annotations

import csv
import io
import json
import time
from pathlib import Path

from mfass import generators
from mfass.errors import MFASSError
from mfass.model import Instance
from mfass.oracle import count_feasible_assignments, solve_bruteforce
from mfass.solve import DispatchConfig, solve

FIELDS = ["family", "instance", "solver", "total", "wall_time", "gap", "status"]

GENERATORS = {
    "3part": lambda p, seed: generators.gen_3partition(p["B"], p["values"])[0],
    "part": lambda p, seed: generators.gen_partition(p["B"], p["values"])[0],
    "unitcap": lambda p, seed: generators.gen_unitcap(p["B"], p["values"])[0],
    "random-sp": lambda p, seed: generators.gen_random_sp(seed=seed, **_tuples(p)),
    "random-single-node": lambda p, seed: generators.gen_random_single_node(seed=seed, **_tuples(p)),
    "random-network": lambda p, seed: generators.gen_random_network(seed=seed, **_tuples(p)),
}


def _tuples(params: dict) -> dict:
    return {k: tuple(v) if k == "cap_range" else v for k, v in params.items()}


def family_instances(family: dict) -> list[tuple[str, Instance]]:
    make = GENERATORS[family["generator"]]
    params = family.get("params", {})
    seeds = family.get("seeds", [0])
    return [(f"{family['name']}#{seed}", make(params, seed)) for seed in seeds]


def run_bench(config: dict) -> list[dict]:
    epsilon = config.get("epsilon")
    dispatch = DispatchConfig(**{k: config[k] for k in ("dp_max_horizon", "oracle_cap") if k in config})
    rows = []
    for family in config["families"]:
        try:
            instances = family_instances(family)
        except (MFASSError, KeyError, TypeError) as exc:
            rows.append(dict.fromkeys(FIELDS, "") | {"family": family.get("name", "?"), "status": f"error: {exc}"})
            continue
        for label, instance in instances:
            opt = None
            if count_feasible_assignments(len(instance.jobs), instance.horizon, instance.limits) <= dispatch.oracle_cap:
                try:
                    opt = solve_bruteforce(instance, dispatch.oracle_cap)[1].total
                except MFASSError:
                    opt = None
            for solver in config["solvers"]:
                row = {"family": family["name"], "instance": label, "solver": solver,
                       "total": "", "wall_time": "", "gap": "", "status": "ok"}
                start = time.perf_counter()
                try:
                    result = solve(instance, solver, epsilon, dispatch)
                except (MFASSError, ValueError) as exc:
                    row["status"] = f"error: {type(exc).__name__}: {exc}"
                else:
                    row["total"] = result.report.total
                    if opt is not None:
                        row["gap"] = 0.0 if opt == 0 else (opt - result.report.total) / opt
                    if solver == "auto":
                        row["status"] = f"ok ({result.algorithm})"
                row["wall_time"] = f"{time.perf_counter() - start:.6f}"
                rows.append(row)
    return rows


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def load_config(path: str | Path) -> dict:
    return json.loads(Path(path).read_text())

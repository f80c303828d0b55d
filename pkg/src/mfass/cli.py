"""Command line interface.

Exit codes: 0 ok, 2 infeasible, 3 unsupported, 4 parse error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from mfass import generators
from mfass.bench import load_config, rows_to_csv, run_bench
from mfass.errors import (InfeasibleInstance, InfeasibleSchedule, MFASSError, ParseError,
                          UnsupportedInstance)
from mfass.io import format_instance, format_schedule, read_instance, read_schedule
from mfass.lp import export_lp
from mfass.model import ThroughputReport, evaluate, validate_schedule
from mfass.solve import ALGORITHMS, DispatchConfig, solve

EXIT_OK, EXIT_INFEASIBLE, EXIT_UNSUPPORTED, EXIT_PARSE = 0, 2, 3, 4


def _report_lines(report: ThroughputReport) -> list[str]:
    lines = [f"period {i + 1} flow {f}" for i, f in enumerate(report.per_period_flow)]
    lines.append(f"total {report.total}")
    return lines


def cmd_solve(args) -> int:
    instance = read_instance(args.input)
    config = DispatchConfig(args.dp_max_horizon, args.oracle_cap)
    result = solve(instance, args.algorithm, args.epsilon, config)
    text = format_schedule(result.schedule, instance.horizon)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"algorithm {result.algorithm}")
    print("\n".join(_report_lines(result.report)))
    if result.certificate is not None:
        print("certificate:")
        for line in result.certificate.lines():
            print("  " + line)
    return EXIT_OK


def cmd_check(args) -> int:
    instance = read_instance(args.input)
    schedule = read_schedule(args.schedule)
    violations = validate_schedule(instance, schedule)
    if violations:
        print("infeasible schedule:")
        for v in violations:
            print("  " + v)
        return EXIT_INFEASIBLE
    print("schedule is feasible")
    print("\n".join(_report_lines(evaluate(instance, schedule))))
    return EXIT_OK


def _seed(args) -> int:
    env = os.environ.get("MFASS_SEED")
    return int(env) if env is not None else args.seed


def cmd_gen(args) -> int:
    cert = None
    if args.family == "3part":
        instance, cert = generators.gen_3partition(args.B, args.values)
    elif args.family == "part":
        instance, cert = generators.gen_partition(args.B, args.values)
    elif args.family == "unitcap":
        instance, cert = generators.gen_unitcap(args.B, args.values)
    elif args.family == "random-sp":
        instance = generators.gen_random_sp(args.arcs, (args.cap_min, args.cap_max), args.job_probability,
                                            args.horizon, _limit_arg(args.limit), _seed(args))
        cert = generators.Certificate(0, "unknown", "random")
    else:
        instance = generators.gen_random_single_node(args.in_arcs, args.out_arcs, (args.cap_min, args.cap_max),
                                                     args.horizon, _seed(args), _limit_arg(args.limit),
                                                     args.job_probability)
        cert = generators.Certificate(0, "unknown", "random")
    text = format_instance(instance)
    if args.output:
        Path(args.output).write_text(text)
        Path(str(args.output) + ".cert").write_text(cert.dumps())
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _limit_arg(values: list[int]):
    return values[0] if len(values) == 1 else values


def cmd_export_lp(args) -> int:
    text = export_lp(read_instance(args.input))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bench(args) -> int:
    text = rows_to_csv(run_bench(load_config(args.config)))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mfass", description="Arc shutdown scheduling for maximum throughput")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("input")
    p.add_argument("-a", "--algorithm", choices=ALGORITHMS, default="auto")
    p.add_argument("--epsilon", type=float)
    p.add_argument("-o", "--output", help="schedule file (default: stdout)")
    p.add_argument("--dp-max-horizon", type=int, default=DispatchConfig.dp_max_horizon)
    p.add_argument("--oracle-cap", type=int, default=DispatchConfig.oracle_cap)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="validate and score a schedule")
    p.add_argument("input")
    p.add_argument("schedule")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="generate an instance")
    gen = p.add_subparsers(dest="family", required=True)
    for name in ("3part", "part", "unitcap"):
        g = gen.add_parser(name)
        g.add_argument("--B", type=int, required=True)
        g.add_argument("--values", type=int, nargs="+", required=True)
        g.add_argument("-o", "--output")
        g.set_defaults(func=cmd_gen)
    for name in ("random-sp", "random-single-node"):
        g = gen.add_parser(name)
        if name == "random-sp":
            g.add_argument("--arcs", type=int, default=6)
            g.add_argument("--job-probability", type=float, default=0.6)
        else:
            g.add_argument("--in-arcs", type=int, default=2)
            g.add_argument("--out-arcs", type=int, default=3)
            g.add_argument("--job-probability", type=float, default=1.0)
        g.add_argument("--cap-min", type=int, default=1)
        g.add_argument("--cap-max", type=int, default=20)
        g.add_argument("--horizon", type=int, default=2)
        g.add_argument("--limit", type=int, nargs="+", default=[2])
        g.add_argument("--seed", type=int, default=0, help="overridden by MFASS_SEED")
        g.add_argument("-o", "--output")
        g.set_defaults(func=cmd_gen)

    p = sub.add_parser("export-lp", help="write the mixed-binary model in LP format")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export_lp)

    p = sub.add_parser("bench", help="run a benchmark config, CSV output")
    p.add_argument("config")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {args.input if hasattr(args, 'input') else ''}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InfeasibleInstance, InfeasibleSchedule) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except UnsupportedInstance as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except MFASSError as exc:
        print(f"unsupported: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())

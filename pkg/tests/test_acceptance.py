"""Acceptance suite: one test per exit criterion, each printing a PASS/FAIL line."""

import itertools
import random
import time
from fractions import Fraction

import pytest

from conftest import balanced_sp_network, nx_max_flow
from lp_reader import parse_lp, solve_with_fixed
from mfass.approx import as_fraction, ptas_takes_shortcut, solve_fptas, solve_ptas_kall
from mfass.generators import (gen_3partition, gen_partition, gen_random_network, gen_random_single_node,
                              gen_random_sp, gen_unitcap)
from mfass.io import format_instance, read_instance, write_instance
from mfass.k2solver import (build_aux_graph, exchange_inequality, sample_perfect_matching, schedule_from_matching,
                            single_node_schedule, solve_k2)
from mfass.lp import build_lp, export_lp
from mfass.matching import matching_weight
from mfass.model import Instance, all_at_once, evaluate, is_balanced, max_flow
from mfass.oracle import solve_bruteforce
from mfass.spdp import max_flow_with_outages, solve_sp_dp

pytestmark = pytest.mark.acceptance


@pytest.fixture
def verdict(capsys):
    def report(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail
    return report


def _k2_instance(seed):
    rng = random.Random(seed)
    T = rng.randint(1, 5)
    nodes = rng.randint(2, 7)
    inst = gen_random_network(nodes, rng.randint(nodes, 14), (1, 15), 0.9, T=T, K=2, seed=seed)
    jobs = list(inst.jobs)
    rng.shuffle(jobs)
    return Instance.uniform(inst.network, jobs[:min(8, 2 * T)], T, 2)


def test_criterion_01_matching_solver_agrees_with_oracle(verdict):
    start = time.perf_counter()
    mismatches = 0
    for seed in range(200):
        inst = _k2_instance(seed)
        assert len(inst.jobs) <= 8 and inst.horizon <= 5
        if solve_k2(inst)[1].total != solve_bruteforce(inst)[1].total:
            mismatches += 1
    elapsed = time.perf_counter() - start
    verdict(1, mismatches == 0 and elapsed < 60,
            f"200 instances, {mismatches} mismatches, {elapsed:.1f}s (limit 60s)")


def test_criterion_02_weight_identity(verdict):
    failures = checked = 0
    for seed in range(20):
        inst = _k2_instance(1000 + seed)
        aux = build_aux_graph(inst)
        rng = random.Random(seed)
        for _ in range(50):
            m = sample_perfect_matching(aux, rng)
            sched = schedule_from_matching(inst, aux, m)
            expected = matching_weight(aux.edges, m) + (inst.horizon - len(inst.jobs)) * aux.f0
            checked += 1
            failures += evaluate(inst, sched).total != expected
    verdict(2, failures == 0, f"{checked} sampled matchings over 20 instances, {failures} identity failures")


def test_criterion_03_single_node_optimal(verdict):
    mismatches = 0
    for seed in range(200):
        rng = random.Random(seed)
        T = rng.randint(1, 6)
        inst = gen_random_single_node(rng.randint(1, 6), rng.randint(1, 6), (1, 30), T, seed,
                                      job_probability=rng.choice([1.0, 0.8]))
        if evaluate(inst, single_node_schedule(inst)).total != solve_k2(inst)[1].total:
            mismatches += 1
    # operation count: comparisons of one sort, linear placement work
    worst = 0.0
    for n_side in (50, 200, 800):
        inst = gen_random_single_node(n_side, n_side, (1, 10**6), n_side, 7)
        stats = {}
        single_node_schedule(inst, stats)
        n = len(inst.jobs)
        assert stats["placements"] == n
        worst = max(worst, stats["comparisons"] / (n * n.bit_length()))
    verdict(3, mismatches == 0 and worst <= 1.0,
            f"200 instances, {mismatches} mismatches; comparisons/(n log n) at most {worst:.2f}")


def test_criterion_04_exchange_inequality_fuzz(verdict):
    rng = random.Random(2024)
    violations = 0
    for k in range(100_000):
        if k % 2:
            x1 = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 97))
            x2 = x1 + Fraction(rng.randint(0, 10**6), rng.randint(1, 97))
            x3 = x1 + (x2 - x1) * Fraction(rng.randint(0, 1000), 1000)
            x5 = Fraction(rng.randint(-2 * 10**6, 2 * 10**6), rng.randint(1, 97))
            x6 = x5 + Fraction(rng.randint(0, 10**6), rng.randint(1, 97))
        else:
            x1 = rng.randint(-50, 50)
            x2 = x1 + rng.randint(0, 50)
            x3 = rng.randint(x1, x2)
            x5 = rng.randint(-100, 100)
            x6 = x5 + rng.randint(0, 100)
        x4 = x1 + x2 - x3
        violations += not exchange_inequality(x1, x2, x3, x4, x5, x6)
    verdict(4, violations == 0, f"100000 sextuples, {violations} violations")


def test_criterion_05_dp_agrees_with_oracle(verdict):
    mismatches = 0
    for seed in range(200):
        rng = random.Random(seed)
        T, K = rng.randint(1, 3), rng.randint(1, 3)
        inst = gen_random_sp(rng.randint(1, 8), (0, 20), rng.choice([0.5, 0.8, 1.0]), T=T, K=K, seed=seed)
        if solve_sp_dp(inst)[1].total != solve_bruteforce(inst)[1].total:
            mismatches += 1
    verdict(5, mismatches == 0, f"200 instances, {mismatches} mismatches")


def test_criterion_06_forced_outage_flow(verdict):
    mismatches = checked = 0
    for seed in range(100):
        rng = random.Random(seed)
        inst = gen_random_sp(rng.randint(1, 8), (0, 20), 0.7, T=3, K=3, seed=seed)
        for rho in range(min(3, len(inst.jobs)) + 1):
            expected = max(nx_max_flow(inst.network, c) for c in itertools.combinations(inst.jobs, rho))
            checked += 1
            mismatches += max_flow_with_outages(inst, rho) != expected
    verdict(6, mismatches == 0, f"100 instances, {checked} (instance, rho) pairs, {mismatches} mismatches")


def test_criterion_07_gadget_certificates(verdict):
    results = []

    def check(name, inst, bound, yes):
        opt = solve_bruteforce(inst)[1].total
        dp = solve_sp_dp(inst)[1].total
        ok = opt == dp and (opt == bound if yes else opt < bound)
        results.append((name, ok, opt, bound))

    inst, cert = gen_3partition(10, (3, 3, 3, 3, 4, 4))
    check("3part yes", inst, 4, True)
    inst, cert = gen_3partition(20, (6, 6, 6, 6, 7, 9))
    check("3part no", inst, cert.bound, False)
    inst, _ = gen_partition(4, (2, 2, 3, 1))
    check("part yes", inst, 8, True)
    inst, _ = gen_partition(4, (3, 5))
    check("part no", inst, 8, False)
    inst, _ = gen_unitcap(10, (3, 3, 3, 3, 4, 4))
    check("unitcap yes", inst, 6, True)
    inst, cert = gen_unitcap(13, (4, 4, 4, 4, 4, 6))
    # 26 jobs: past the enumeration cap, the SP dynamic program is the exact reference here
    dp = solve_sp_dp(inst)[1].total
    results.append(("unitcap no", dp < cert.bound, dp, cert.bound))
    detail = ", ".join(f"{name} {opt}/{bound}" for name, _, opt, bound in results)
    verdict(7, all(ok for _, ok, _, _ in results), detail)


def test_criterion_08_fptas_guarantee(verdict):
    violations = cert_failures = scaled_runs = 0
    for seed in range(100):
        rng = random.Random(seed)
        T = rng.randint(1, 3)
        inst = gen_random_sp(rng.randint(2, 8), (1, rng.choice([50, 5000, 100_000])), rng.choice([0.6, 1.0]),
                             T=T, K=rng.randint(1, 3), seed=seed)
        opt = solve_bruteforce(inst)[1].total
        for eps in (0.1, 0.25, 0.5):
            _, report, cert = solve_fptas(inst, eps)
            scaled_runs += cert.L > 1
            violations += report.total < (1 - as_fraction(eps)) * opt
            cert_failures += not report.total >= cert.L * cert.scaled_value
    verdict(8, violations == 0 and cert_failures == 0,
            f"300 runs ({scaled_runs} with L > 1), {violations} guarantee violations, "
            f"{cert_failures} certificate failures")


def test_criterion_09_ptas_dispatch(verdict):
    T, eps = 10, 0.2
    bound_failures = exact_failures = 0
    for seed in range(30):
        rng = random.Random(seed)
        base = gen_random_sp(rng.randint(1, 8), (1, 20), 0.7, T=T, K=1, seed=seed)
        inst = Instance.uniform(base.network, base.jobs, T, max(1, len(base.jobs)))
        sched, report = solve_ptas_kall(inst, eps)
        if set(sched.assignment.values()) - {0} or report.total < Fraction(T - 1, T) * T * max_flow(inst.network):
            bound_failures += 1
    for seed in range(30):
        rng = random.Random(seed)
        net = balanced_sp_network(rng, rng.randint(1, 7), rng.randint(1, 15))
        assert is_balanced(net)
        inst = Instance.uniform(net, range(net.m), T, net.m)
        exact_failures += solve_ptas_kall(inst, eps)[1].total != solve_bruteforce(inst)[1].total
    ok = ptas_takes_shortcut(T, eps) and bound_failures == 0 and exact_failures == 0
    verdict(9, ok, f"shortcut branch taken; {bound_failures} bound failures on 30 SP instances, "
                   f"{exact_failures} mismatches on 30 balanced all-jobs instances")


def test_criterion_10_trivial_classes(verdict):
    aa_failures = bal_failures = 0
    for seed in range(50):
        rng = random.Random(seed)
        base = gen_random_network(rng.randint(2, 6), rng.randint(1, 7), (0, 15), 1.0, T=1, K=1, seed=seed)
        T = rng.randint(1, 4)
        inst = Instance.uniform(base.network, range(base.network.m), T, base.network.m)
        aa_failures += evaluate(inst, all_at_once(inst)).total != solve_bruteforce(inst)[1].total
    for seed in range(50):
        rng = random.Random(seed)
        net = balanced_sp_network(rng, rng.randint(1, 8), rng.randint(1, 15))
        assert is_balanced(net)
        jobs = [a for a in range(net.m) if rng.random() < 0.6]
        inst = Instance.uniform(net, jobs, rng.randint(1, 4), max(1, len(jobs)))
        bal_failures += evaluate(inst, all_at_once(inst)).total != solve_bruteforce(inst)[1].total
    verdict(10, aa_failures == 0 and bal_failures == 0,
            f"{aa_failures}/50 mismatches with every arc a job, {bal_failures}/50 on balanced SP")


def _lp_optimum(inst):
    objective, rows, binaries = parse_lp(export_lp(inst))
    best = None
    T = inst.horizon
    for periods in itertools.product(range(T), repeat=len(inst.jobs)):
        fixed = {f"y_{a}_{i + 1}": int(p != i) for a, p in zip(inst.jobs, periods) for i in range(T)}
        value = solve_with_fixed(objective, rows, binaries, fixed)
        if value is not None and (best is None or value > best):
            best = value
    return round(best)


def test_criterion_11_round_trip_and_lp(verdict, tmp_path):
    round_trip_failures = 0
    for seed in range(100):
        rng = random.Random(seed)
        kind = seed % 4
        if kind == 0:
            inst = gen_random_sp(rng.randint(1, 12), T=rng.randint(1, 4), K=rng.randint(1, 3), seed=seed)
        elif kind == 1:
            T = rng.randint(1, 3)
            inst = gen_random_network(rng.randint(2, 8), rng.randint(1, 14), (0, 99), 0.5, T=T,
                                      K=[rng.randint(0, 4) for _ in range(T)], seed=seed)
        elif kind == 2:
            inst = gen_random_single_node(rng.randint(1, 5), rng.randint(1, 5), T=3, seed=seed)
        else:
            inst = [gen_3partition(10, (3, 3, 3, 3, 4, 4)), gen_partition(4, (2, 2, 3, 1)),
                    gen_unitcap(10, (3, 3, 3, 3, 4, 4))][seed % 3][0]
        path = tmp_path / f"{seed}.mfass"
        write_instance(inst, path)
        back = read_instance(path)
        round_trip_failures += back != inst or format_instance(back) != path.read_text()

    count_failures = 0
    for seed in range(20):
        rng = random.Random(seed)
        inst = gen_random_network(rng.randint(2, 7), rng.randint(1, 12), (1, 9), 0.5, T=rng.randint(1, 4), K=2,
                                  seed=seed)
        net, T, n = inst.network, inst.horizon, len(inst.jobs)
        model = build_lp(inst)
        counts = (len(model.continuous), len(model.binaries), len(model.rows_named("capj")),
                  len(model.rows_named("capn")), len(model.rows_named("dur")), len(model.rows_named("lim")))
        count_failures += counts != (net.m * T, n * T, n * T, (net.m - n) * T, n, T if n else 0)

    lp_failures = 0
    for seed in range(20):
        rng = random.Random(seed)
        T = rng.randint(1, 3)
        inst = gen_random_network(rng.randint(2, 5), rng.randint(2, 7), (1, 9), 0.6, T=T, K=rng.randint(1, 2),
                                  seed=seed)
        inst = Instance(inst.network, inst.jobs[:4], T, inst.limits)
        lp_failures += _lp_optimum(inst) != solve_bruteforce(inst)[1].total
    ok = round_trip_failures == 0 and count_failures == 0 and lp_failures == 0
    verdict(11, ok, f"{round_trip_failures}/100 round-trip failures, {count_failures}/20 LP count mismatches, "
                    f"{lp_failures}/20 enumerated-LP mismatches")

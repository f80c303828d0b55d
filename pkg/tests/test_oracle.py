import itertools
import random

import pytest

from conftest import naive_optimum, random_schedule
from mfass.errors import InfeasibleInstance, TooLarge
from mfass.generators import gen_partition, gen_random_network, gen_random_sp
from mfass.model import FlowNetwork, Instance, evaluate, max_flow
from mfass.oracle import count_feasible_assignments, solve_bruteforce


def _count_by_product(n, limits):
    T = len(limits)
    return sum(1 for p in itertools.product(range(T), repeat=n)
               if all(p.count(i) <= k for i, k in enumerate(limits)))


@pytest.mark.parametrize("n,T,limits,expected", [
    (0, 3, (1, 1, 1), 1),
    (0, 1, (0,), 1),
    (3, 2, (2, 2), 6),
    (4, 2, (2, 2), 6),
])
def test_count_feasible_assignments_examples(n, T, limits, expected):
    assert count_feasible_assignments(n, T, limits) == expected


@pytest.mark.parametrize("n", range(6))
@pytest.mark.parametrize("limits", [(1, 1), (2, 2), (3, 1, 2), (0, 2, 2), (2, 2, 2, 2)])
def test_count_matches_product_enumeration(n, limits):
    assert count_feasible_assignments(n, len(limits), limits) == _count_by_product(n, limits)


def test_count_accepts_scalar_limit():
    assert count_feasible_assignments(3, 2, 2) == 6


def test_no_jobs_gives_idle_schedule():
    net = FlowNetwork.from_edges(2, 0, 1, [(0, 1, 3), (0, 1, 4)])
    sched, report = solve_bruteforce(Instance.uniform(net, [], 4, 1))
    assert sched.assignment == {}
    assert report.total == 4 * 7


def test_infeasible_raises():
    net = FlowNetwork.from_edges(2, 0, 1, [(0, 1, 3)] * 3)
    with pytest.raises(InfeasibleInstance):
        solve_bruteforce(Instance.uniform(net, [0, 1, 2], 1, 2))


def test_cap_raises_too_large():
    inst = gen_random_sp(10, job_probability=1.0, T=3, K=4, seed=1)
    with pytest.raises(TooLarge):
        solve_bruteforce(inst, cap=100)


def test_partition_yes_instance_reaches_2B():
    inst, cert = gen_partition(4, (2, 2, 3, 1))
    assert solve_bruteforce(inst)[1].total == 8 == cert.bound


@pytest.mark.parametrize("seed", range(40))
def test_oracle_matches_naive_enumeration(seed):
    rng = random.Random(seed)
    uniform = seed % 2 == 0
    T = rng.randint(1, 3)
    K = rng.randint(1, 3) if uniform else [rng.randint(0, 3) for _ in range(T)]
    inst = gen_random_network(rng.randint(2, 5), rng.randint(2, 7), (1, 9), 0.7, T=T, K=K, seed=seed)
    inst = Instance(inst.network, inst.jobs[:5], T, inst.limits)
    assert solve_bruteforce(inst)[1].total == naive_optimum(inst)


@pytest.mark.parametrize("seed", range(20))
def test_oracle_schedule_is_feasible_and_reported_correctly(seed):
    inst = gen_random_network(5, 8, (1, 9), 0.7, T=3, K=2, seed=seed)
    sched, report = solve_bruteforce(inst)
    assert evaluate(inst, sched) == report


@pytest.mark.parametrize("seed", range(20))
def test_oracle_dominates_random_schedules(seed):
    rng = random.Random(seed)
    inst = gen_random_network(5, 8, (1, 9), 0.7, T=3, K=2, seed=seed)
    best = solve_bruteforce(inst)[1].total
    for _ in range(10):
        assert evaluate(inst, random_schedule(inst, rng)).total <= best


@pytest.mark.parametrize("seed", range(15))
def test_extending_horizon_never_hurts(seed):
    inst = gen_random_network(5, 8, (1, 9), 0.7, T=2, K=2, seed=seed)
    longer = Instance.uniform(inst.network, inst.jobs, 3, 2)
    assert solve_bruteforce(longer)[1].total >= solve_bruteforce(inst)[1].total


@pytest.mark.parametrize("seed", range(15))
def test_arc_relabeling_invariance(seed):
    rng = random.Random(seed)
    inst = gen_random_network(5, 7, (1, 9), 0.7, T=2, K=2, seed=seed)
    perm = list(range(inst.network.m))
    rng.shuffle(perm)
    arcs = sorted(inst.network.arcs, key=lambda a: perm[a.id])
    relabeled_net = FlowNetwork.from_edges(inst.network.node_count, inst.network.source, inst.network.sink,
                                           [(a.tail, a.head, a.capacity) for a in arcs])
    relabeled = Instance(relabeled_net, [perm[j] for j in inst.jobs], inst.horizon, inst.limits)
    assert max_flow(relabeled_net) == max_flow(inst.network)
    assert solve_bruteforce(relabeled)[1].total == solve_bruteforce(inst)[1].total


def test_ties_break_to_lexicographically_smallest():
    net = FlowNetwork.from_edges(2, 0, 1, [(0, 1, 1), (0, 1, 1)])
    inst = Instance(net, [0, 1], 2, (1, 2))
    sched, report = solve_bruteforce(inst)
    # both jobs in period 1 is impossible (limit 1); (0,1) beats (1,0) and (1,1) ties at 2
    assert sched.assignment == {0: 0, 1: 1}
    assert report.total == 2

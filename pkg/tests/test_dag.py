import numpy as np
import pytest

from helpers import random_equality_instance
from nfold import dag, oracle
from nfold.core import NFoldInstance, check_feasible
from nfold.errors import (
    ArithmeticOverflowError,
    EmptyScheduleError,
    InstanceError,
    UnsupportedRelationError,
)


def toy():
    return NFoldInstance(
        n=1, t=2, r=1, blocks=[[[1, 0]]], b_top=[1], b_local=[2], cost=[[5, 1]]
    )


def test_toy_instance_optimum():
    sol = dag.solve(toy())
    assert sol.as_lists() == [[1, 1]]
    assert sol.objective == 6


def test_infeasible_when_target_unreachable():
    inst = NFoldInstance(
        n=1, t=2, r=1, blocks=[[[1, 0]]], b_top=[3], b_local=[2], cost=[[5, 1]]
    )
    assert dag.solve(inst) is None


def test_q_zero_cases():
    base = dict(n=1, t=1, r=1, blocks=[[[1]]], b_local=[0], cost=[[1]])
    sol, stats = dag.solve_with_stats(NFoldInstance(b_top=[0], **base))
    assert sol.as_lists() == [[0]]
    assert stats.vertices == 1
    assert stats.relaxations == 0
    assert dag.solve(NFoldInstance(b_top=[1], **base)) is None


def test_window_bounds_formula():
    # n=1, max entry 1, r=1, q=4, b_top=4: layer 2 keeps [ceil(2)-3, floor(2)+3]
    inst = NFoldInstance(
        n=1, t=2, r=1, blocks=[[[1, 0]]], b_top=[4], b_local=[4], cost=[[0, 0]]
    )
    assert dag.window_bounds(inst, 2, 0) == (-1, 5)
    assert dag.window_bounds(inst, 4, 0) == (1, 7)
    assert dag.window_bounds(inst, 2, 0, extra_slack=5) == (-6, 10)


def test_window_bounds_rounds_rationals_exactly():
    inst = NFoldInstance(
        n=1, t=2, r=1, blocks=[[[1, 0]]], b_top=[-3], b_local=[2], cost=[[0, 0]]
    )
    # j=1: j*b/q = -3/2; ceil = -1, floor = -2; terms are 3 on both sides
    assert dag.window_bounds(inst, 1, 0) == (-4, 1)


def test_window_bounds_argument_checks():
    inst = toy()
    with pytest.raises(InstanceError):
        dag.window_bounds(inst, 0, 0)
    with pytest.raises(InstanceError):
        dag.window_bounds(inst, 1, 1)
    empty = NFoldInstance(
        n=1, t=1, r=1, blocks=[[[1]]], b_top=[0], b_local=[0], cost=[[1]]
    )
    with pytest.raises(EmptyScheduleError):
        dag.window_bounds(empty, 1, 0)


def test_mixed_relations_rejected():
    inst = NFoldInstance(
        n=1, t=1, r=1, blocks=[[[1]]], b_top=[1], b_local=[1], cost=[[1]],
        global_relations=["<="],
    )
    with pytest.raises(UnsupportedRelationError):
        dag.solve(inst)


def test_invalid_instance_rejected():
    inst = NFoldInstance(
        n=1, t=2, r=1, blocks=[[[1, 0, 0]]], b_top=[1], b_local=[1], cost=[[1, 1]]
    )
    with pytest.raises(InstanceError):
        dag.solve(inst)


def test_no_global_rows_takes_cheapest_columns():
    inst = NFoldInstance(
        n=2, t=3, r=0, blocks=[[], []], b_top=[], b_local=[2, 3],
        cost=[[4, 1, 2], [7, 9, 3]],
    )
    sol, stats = dag.solve_with_stats(inst)
    assert sol.as_lists() == [[0, 2, 0], [0, 0, 3]]
    assert sol.objective == 2 + 9
    assert stats.vertices == 1 + 5
    assert stats.relaxations == 5 * 3


def test_cost_overflow_preflight():
    inst = NFoldInstance(
        n=1, t=1, r=0, blocks=[[]], b_top=[], b_local=[4], cost=[[2**61]]
    )
    with pytest.raises(ArithmeticOverflowError):
        dag.solve(inst)


def test_negative_costs_handled():
    inst = NFoldInstance(
        n=2, t=2, r=1, blocks=[[[1, -1]], [[1, -1]]], b_top=[0], b_local=[2, 2],
        cost=[[-3, -1], [2, -2]],
    )
    # two units of column 0 in brick 0 (-3 each) balanced by two units of
    # column 1 in brick 1 (-2 each) keeps the global row at 0
    ref = oracle.brute_force_solve(inst)
    got = dag.solve(inst)
    assert got.objective == ref.objective == -10


def test_solution_matches_oracle_on_random_suite():
    rng = np.random.default_rng(81)
    agree = 0
    for _ in range(150):
        inst = random_equality_instance(rng)
        ref = oracle.brute_force_solve(inst)
        got = dag.solve(inst)
        assert (ref is None) == (got is None)
        if ref is not None:
            assert got.objective == ref.objective
            assert check_feasible(inst, got.bricks)
            agree += 1
    assert agree > 30  # the suite must exercise plenty of feasible instances


def test_stats_bound_on_toy():
    # 1 + q * (n*D*(n+1+4r))^r with n=1, D=1, r=1, q=2 gives 1 + 2*6 = 13
    _, stats = dag.solve_with_stats(toy())
    assert stats.vertices <= 13
    assert stats.relaxations <= 2 * stats.vertices


def test_widened_windows_never_change_objective():
    rng = np.random.default_rng(82)
    for _ in range(60):
        inst = random_equality_instance(rng)
        a = dag.solve(inst)
        b = dag.solve(inst, extra_window_slack=5)
        assert (a is None) == (b is None)
        if a is not None:
            assert a.objective == b.objective


def test_solve_with_path_returns_schedule_order_choices():
    inst = toy()
    sol, stats, path = dag.solve_with_path(inst)
    assert sol.objective == 6
    assert len(path) == inst.total_mass
    rebuilt = [[0, 0]]
    for i, k in path:
        rebuilt[i][k] += 1
    assert rebuilt == sol.as_lists()
    assert dag.solve_with_path(
        NFoldInstance(n=1, t=2, r=1, blocks=[[[1, 0]]], b_top=[3], b_local=[2], cost=[[5, 1]])
    )[0] is None


def test_deterministic_across_runs():
    rng = np.random.default_rng(83)
    inst = random_equality_instance(rng)
    first = dag.solve_with_stats(inst)
    second = dag.solve_with_stats(inst)
    if first[0] is None:
        assert second[0] is None
    else:
        assert first[0].as_lists() == second[0].as_lists()
    assert first[1].vertices == second[1].vertices
    assert first[1].relaxations == second[1].relaxations

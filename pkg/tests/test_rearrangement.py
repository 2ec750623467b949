from fractions import Fraction

import numpy as np
import pytest

from helpers import random_equality_instance, random_zero_sum_columns
from nfold import dag, oracle
from nfold.balancer import balance_counts
from nfold.errors import DimensionMismatchError, SizeLimitError
from nfold.rearrangement import (
    ColumnSequence,
    exists_blockwise_interleaving,
    exists_bounded_reordering,
    interleave_by_schedule,
    partial_sum_check,
)


def origin(j):
    return (0,)


def test_column_sequence_caches_totals_and_norm():
    seq = ColumnSequence.from_columns([(1, -2), (0, 2)])
    assert seq.m == 2
    assert seq.r == 2
    assert seq.total == (1, 0)
    assert seq.max_norm == 2
    assert ColumnSequence.from_columns([]).max_norm == 0


def test_partial_sum_check_simple_band():
    assert partial_sum_check([(1,), (-1,)], origin, -1, 1)
    assert not partial_sum_check([(2,), (2,), (-4,)], origin, -2, 2)


def test_partial_sum_check_rational_center():
    # prefix sums 1, 2 against centers 3/2, 3: deviations -1/2, -1
    center = lambda j: (Fraction(3 * j, 2),)
    assert partial_sum_check([(1,), (1,)], center, -1, 0)
    assert not partial_sum_check([(1,), (1,)], center, Fraction(-1, 4), 0)


def test_exists_bounded_reordering_examples():
    assert exists_bounded_reordering([(1,), (-1,)], 2)
    assert exists_bounded_reordering([(1,), (1,), (-2,)], 4)
    assert exists_bounded_reordering([(3,)], 0)


def test_exists_bounded_reordering_tight_cases():
    # [(1),(1),(-2)]: the best order's worst deviation is 2/3, so bound 0 fails
    assert not exists_bounded_reordering([(1,), (1,), (-2,)], 0)
    assert exists_bounded_reordering([(1,), (1,), (-2,)], 1)


def test_exists_bounded_reordering_limit():
    cols = [(0,)] * 11
    with pytest.raises(SizeLimitError):
        exists_bounded_reordering(cols, 1)
    assert exists_bounded_reordering(cols, 1, limit=11)


def test_interleave_by_schedule_places_by_occurrence():
    sched = balance_counts([2, 2])  # 1 2 1 2
    out = interleave_by_schedule(sched, [[(1,), (2,)], [(10,), (20,)]])
    assert out.columns.ravel().tolist() == [1, 10, 2, 20]


def test_interleave_single_block_and_empty():
    sched = balance_counts([2])
    out = interleave_by_schedule(sched, [[(5,), (7,)]])
    assert out.columns.ravel().tolist() == [5, 7]
    empty = interleave_by_schedule(balance_counts([0]), [[]])
    assert empty.m == 0


def test_interleave_count_mismatch_rejected():
    sched = balance_counts([2, 1])
    with pytest.raises(DimensionMismatchError):
        interleave_by_schedule(sched, [[(1,)], [(2,)]])


def test_zero_sum_multisets_reorder_within_bound():
    rng = np.random.default_rng(11)
    for _ in range(60):
        cols = random_zero_sum_columns(rng)
        r = cols.shape[1]
        delta = int(np.abs(cols).max())
        assert exists_bounded_reordering(cols, 2 * delta * r)


def test_solver_witness_passes_window_band():
    rng = np.random.default_rng(12)
    done = 0
    while done < 25:
        inst = random_equality_instance(rng)
        if inst.r == 0 or inst.total_mass == 0:
            continue
        sol, _, path = dag.solve_with_path(inst)
        if sol is None:
            continue
        done += 1
        q = inst.total_mass
        nd = inst.n * inst.max_abs_entry
        lo, hi = -nd * (inst.n + 2 * inst.r), nd * (1 + 2 * inst.r)
        sched = balance_counts(inst.b_local)
        ordered = [[] for _ in range(inst.n)]
        for i, k in path:
            ordered[i].append(tuple(int(v) for v in inst.blocks[i][:, k]))
        center = lambda j: [Fraction(j * int(inst.b_top[k]), q) for k in range(inst.r)]
        arranged = interleave_by_schedule(sched, ordered)
        assert partial_sum_check(arranged, center, lo, hi)


def test_blockwise_interleaving_exists_for_oracle_optima():
    # constructive window content: some within-block order of any optimal
    # solution's columns stays inside the window band
    rng = np.random.default_rng(13)
    done = 0
    while done < 25:
        inst = random_equality_instance(rng)
        if inst.r == 0 or inst.total_mass == 0:
            continue
        ref = oracle.brute_force_solve(inst)
        if ref is None:
            continue
        done += 1
        q = inst.total_mass
        nd = inst.n * inst.max_abs_entry
        lo, hi = -nd * (inst.n + 2 * inst.r), nd * (1 + 2 * inst.r)
        sched = balance_counts(inst.b_local)
        per_block = []
        for i in range(inst.n):
            cols = []
            for k, cnt in enumerate(ref.as_lists()[i]):
                cols += [tuple(int(v) for v in inst.blocks[i][:, k])] * cnt
            per_block.append(cols)
        center = lambda j: [Fraction(j * int(inst.b_top[k]), q) for k in range(inst.r)]
        assert exists_blockwise_interleaving(sched, per_block, center, lo, hi)


def test_blockwise_interleaving_node_budget():
    sched = balance_counts([3, 3])
    per_block = [[(1,), (0,), (-1,)], [(1,), (0,), (-1,)]]
    with pytest.raises(SizeLimitError):
        exists_blockwise_interleaving(
            sched, per_block, lambda j: (0,), -6, 6, node_budget=2
        )

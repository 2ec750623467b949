"""Desk-scale audits of bounded partial sums under reordering.

Small exhaustive checkers used by tests and the audit CLI, not by the
solver itself:

* partial_sum_check: do the prefix sums of a given column order stay inside
  a slack band around a rational center line?
* exists_bounded_reordering: does ANY order of the columns stay within a
  band around the line (j/m) * total?  Exhaustive with pruning, small m
  only.
* interleave_by_schedule: place each block's ordered columns at that block's
  slots of a balanced schedule (the arrangement whose prefix sums the
  layered solver's windows must contain).
* exists_blockwise_interleaving: like exists_bounded_reordering but only
  within-block order may vary while the block-to-slot assignment is fixed
  by a schedule; certifies that the solver's window band is attainable.

All comparisons are exact: integer prefix sums against Fraction centers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .balancer import BalancedSchedule
from .core import _to_int64
from .errors import DimensionMismatchError, SizeLimitError

CenterLine = Callable[[int], Sequence]


@dataclass(frozen=True)
class ColumnSequence:
    """An ordered list of integer vectors, stored as an (m, r) array."""

    columns: np.ndarray

    @classmethod
    def from_columns(cls, cols, r: int | None = None) -> "ColumnSequence":
        rows = [tuple(int(v) for v in c) for c in cols]
        if rows:
            width = len(rows[0])
            if any(len(row) != width for row in rows):
                raise DimensionMismatchError("columns have differing dimension")
        else:
            width = 0 if r is None else r
        arr = _to_int64(np.array(rows, dtype=np.int64).reshape(len(rows), width), "columns")
        return cls(columns=arr)

    @property
    def m(self) -> int:
        return int(self.columns.shape[0])

    @property
    def r(self) -> int:
        return int(self.columns.shape[1])

    @property
    def total(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.columns.sum(axis=0))

    @property
    def max_norm(self) -> int:
        """Largest |entry| over all columns; 0 when empty."""
        return int(np.abs(self.columns).max()) if self.columns.size else 0


def _as_sequence(cols) -> ColumnSequence:
    if isinstance(cols, ColumnSequence):
        return cols
    return ColumnSequence.from_columns(cols)


def partial_sum_check(cols, center: CenterLine, slack_lo, slack_hi) -> bool:
    """True iff every prefix sum sits within [slack_lo, slack_hi] of center(j)."""
    seq = _as_sequence(cols)
    lo = Fraction(slack_lo)
    hi = Fraction(slack_hi)
    psum = [0] * seq.r
    for j in range(1, seq.m + 1):
        row = seq.columns[j - 1]
        mid = center(j)
        for k in range(seq.r):
            psum[k] += int(row[k])
            dev = psum[k] - Fraction(mid[k])
            if dev < lo or dev > hi:
                return False
    return True


def exists_bounded_reordering(cols, bound: int, limit: int = 10) -> bool:
    """True iff some ordering keeps every prefix within bound of the line
    (j/m) * total, in max-norm.  Exhaustive with prefix pruning; refuses
    more than `limit` columns."""
    seq = _as_sequence(cols)
    m, r = seq.m, seq.r
    if m > limit:
        raise SizeLimitError(f"{m} columns exceed the reordering search limit {limit}")
    if m == 0:
        return True
    total = seq.total
    # duplicate columns explode m!; branch over distinct values instead
    distinct: list[list] = []
    for row in sorted(map(tuple, seq.columns.tolist())):
        if distinct and distinct[-1][0] == row:
            distinct[-1][1] += 1
        else:
            distinct.append([row, 1])
    psum = [0] * r

    def feasible_prefix(j: int) -> bool:
        return all(abs(m * psum[k] - j * total[k]) <= bound * m for k in range(r))

    def rec(j: int) -> bool:
        if j > m:
            return True
        for entry in distinct:
            if entry[1] == 0:
                continue
            entry[1] -= 1
            for k in range(r):
                psum[k] += entry[0][k]
            ok = feasible_prefix(j) and rec(j + 1)
            for k in range(r):
                psum[k] -= entry[0][k]
            entry[1] += 1
            if ok:
                return True
        return False

    return rec(1)


def interleave_by_schedule(schedule: BalancedSchedule, per_block: Sequence) -> ColumnSequence:
    """The w-th column of block i lands at the w-th slot of symbol i."""
    seqs = [_as_sequence(b) for b in per_block]
    if len(seqs) != schedule.n:
        raise DimensionMismatchError(
            f"{len(seqs)} blocks for a schedule over {schedule.n} symbols"
        )
    for i, seq in enumerate(seqs):
        want = int(schedule.counts[i])
        if seq.m != want:
            raise DimensionMismatchError(f"block {i + 1}: {seq.m} columns, schedule needs {want}")
    widths = {seq.r for seq in seqs if seq.m}
    if len(widths) > 1:
        raise DimensionMismatchError(f"blocks disagree on column dimension: {sorted(widths)}")
    r = widths.pop() if widths else 0
    taken = [0] * schedule.n
    rows = []
    for symbol in schedule.entries:
        i = int(symbol) - 1
        rows.append(seqs[i].columns[taken[i]])
        taken[i] += 1
    return ColumnSequence.from_columns(rows, r=r)


def exists_blockwise_interleaving(
    schedule: BalancedSchedule,
    per_block: Sequence,
    center: CenterLine,
    slack_lo,
    slack_hi,
    node_budget: int = 1_000_000,
) -> bool:
    """True iff some within-block column order passes partial_sum_check once
    interleaved along the schedule.  The slot-to-block assignment is fixed;
    only each block's internal order is searched (with pruning and a node
    budget, since this is a certification tool)."""
    seqs = [_as_sequence(b) for b in per_block]
    if len(seqs) != schedule.n:
        raise DimensionMismatchError(
            f"{len(seqs)} blocks for a schedule over {schedule.n} symbols"
        )
    for i, seq in enumerate(seqs):
        want = int(schedule.counts[i])
        if seq.m != want:
            raise DimensionMismatchError(f"block {i + 1}: {seq.m} columns, schedule needs {want}")
    q = schedule.q
    if q == 0:
        return True
    widths = {seq.r for seq in seqs if seq.m}
    if len(widths) > 1:
        raise DimensionMismatchError(f"blocks disagree on column dimension: {sorted(widths)}")
    r = widths.pop() if widths else 0
    lo = Fraction(slack_lo)
    hi = Fraction(slack_hi)
    remaining = []
    for seq in seqs:
        counts: list[list] = []
        for row in sorted(map(tuple, seq.columns.tolist())):
            if counts and counts[-1][0] == row:
                counts[-1][1] += 1
            else:
                counts.append([row, 1])
        remaining.append(counts)
    psum = [0] * r
    visited = 0

    def rec(j: int) -> bool:
        nonlocal visited
        if j > q:
            return True
        visited += 1
        if visited > node_budget:
            raise SizeLimitError(f"interleaving search exceeded {node_budget} nodes")
        i = int(schedule.entries[j - 1]) - 1
        mid = center(j)
        for entry in remaining[i]:
            if entry[1] == 0:
                continue
            entry[1] -= 1
            for k in range(r):
                psum[k] += entry[0][k]
            ok = all(lo <= psum[k] - Fraction(mid[k]) <= hi for k in range(r)) and rec(j + 1)
            for k in range(r):
                psum[k] -= entry[0][k]
            entry[1] += 1
            if ok:
                return True
        return False

    return rec(1)

"""Greedy balanced scheduling of weighted symbols.

Given target multiplicities m_1..m_n with total q, emit a length-q sequence
over the symbols 1..n in which every symbol appears exactly m_e times and
every prefix tracks the uniform rate closely.  The deviation of symbol e
after j slots,

    imbalance(e, j) = occ(e, j) - (j / q) * m_e,

stays within [-n, 1] for the sequence produced here: each slot goes to a
symbol whose deviation is currently most negative (smallest index on ties).
Deviations are compared via the integer key q*occ - j*m_e, so no rationals
appear in the hot loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import backend
from .core import _to_int64
from .errors import EmptyScheduleError, InstanceError


@dataclass(frozen=True)
class BalancedSchedule:
    """entries[j] is the 1-based symbol of slot j+1; counts are the targets."""

    entries: np.ndarray
    counts: np.ndarray

    @property
    def n(self) -> int:
        return int(self.counts.shape[0])

    @property
    def q(self) -> int:
        return int(self.entries.shape[0])

    def occurrences(self, e: int, j: int) -> int:
        """How often symbol e appears among the first j slots."""
        return int(np.count_nonzero(self.entries[:j] == e))


def balance_counts(counts) -> BalancedSchedule:
    """Build the greedy balanced sequence for the given multiplicities."""
    arr = _to_int64(counts, "counts")
    if arr.ndim != 1:
        raise InstanceError(f"counts must be a vector, got shape {arr.shape}")
    if arr.size and int(arr.min()) < 0:
        raise InstanceError("counts must be non-negative")
    live = np.flatnonzero(arr > 0)
    if live.size == 0:
        entries = np.empty(0, dtype=np.int64)
    else:
        packed = backend.kernels().balance_schedule(np.ascontiguousarray(arr[live]))
        entries = live[packed] + 1  # back to original 1-based symbols
    entries.flags.writeable = False
    return BalancedSchedule(entries=entries, counts=arr)


def imbalance(schedule: BalancedSchedule, e: int, j: int) -> Fraction:
    """Exact prefix deviation occ(e, j) - (j/q) * m_e as a Fraction."""
    q = schedule.q
    if q == 0:
        raise EmptyScheduleError("imbalance undefined for an empty schedule")
    if not 1 <= e <= schedule.n:
        raise InstanceError(f"symbol {e} outside 1..{schedule.n}")
    if not 1 <= j <= q:
        raise InstanceError(f"prefix length {j} outside 1..{q}")
    occ = schedule.occurrences(e, j)
    return Fraction(q * occ - j * int(schedule.counts[e - 1]), q)


def verify_balance(schedule: BalancedSchedule) -> bool:
    """True iff totals match the targets and every prefix deviation is in [-n, 1].

    Works for any sequence over 1..n, not only greedy output; the acceptance
    property -n*q <= q*occ(e,j) - j*m_e <= q is checked with integers.
    """
    entries = schedule.entries
    counts = schedule.counts
    n = schedule.n
    q = schedule.q
    if q != int(counts.sum()):
        return False
    if q == 0:
        return True
    if entries.min() < 1 or entries.max() > n:
        return False
    onehot = np.zeros((q, n), dtype=np.int64)
    onehot[np.arange(q), entries - 1] = 1
    occ = np.cumsum(onehot, axis=0)  # occ[j-1, e-1]
    if not np.array_equal(occ[-1], counts):
        return False
    j = np.arange(1, q + 1, dtype=np.int64)[:, None]
    key = q * occ - j * counts[None, :]
    return bool((key >= -n * q).all() and (key <= q).all())

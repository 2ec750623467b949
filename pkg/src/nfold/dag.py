"""Layered shortest-path solver for pure-equality instances.

The q = sum(b_local) unit contributions are laid out along a balanced
schedule: slot j belongs to brick schedule[j], and choosing one of that
brick's t columns advances the running global row sum.  Layer j of the
search graph holds the plausible running sums after j slots; layer 0 is the
zero vector, layer q must hit b_top exactly.  Every layer is a dense box,

    lo(j,k) = ceil(j*b_top[k] / q) - n*D*(n+2r),
    hi(j,k) = floor(j*b_top[k] / q) + n*D*(1+2r),      D = max |block entry|,

which is wide enough that some optimal solution survives with all its
partial sums inside the boxes.  Boxes are further intersected with exact
reachability envelopes (what j columns can add up to, and what the last
q-j columns can still bridge to b_top); that intersection never excludes a
complete path, so the optimum is unchanged while the tables shrink a lot.

A topological sweep (one kernel call per layer) relaxes every finite cell
along every column in ascending column order; only strictly cheaper
candidates overwrite, so tie-breaking is deterministic and backend
independent.  Cell weights may be negative; correctness needs only the
layer order, never Dijkstra-style assumptions.

All table arithmetic is int64 after explicit Python-integer range checks;
anything that could approach 2**62 fails fast with an overflow error.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import backend
from .balancer import balance_counts
from .core import NFoldInstance, Solution, check_feasible, validate_instance
from .errors import (
    ArithmeticOverflowError,
    EmptyScheduleError,
    InstanceError,
    SizeLimitError,
    UnsupportedRelationError,
)

# hard cap on cells in one layer table; beyond this the dense representation
# is hopeless anyway and a clear error beats an allocation failure
VOLUME_LIMIT = 50_000_000

_RANGE_LIMIT = 2**62


@dataclass(frozen=True)
class SolveStats:
    """Counters of the last run: materialized (reachable) cells, examined
    edges with a finite source and an in-window target, and wall time."""

    vertices: int
    relaxations: int
    wall_time: float


def _window_terms(inst: NFoldInstance) -> tuple[int, int]:
    n, r, d = inst.n, inst.r, inst.max_abs_entry
    return n * d * (n + 2 * r), n * d * (1 + 2 * r)


def window_bounds(inst: NFoldInstance, j: int, k: int, extra_slack: int = 0) -> tuple[int, int]:
    """Inclusive [lo, hi] of global row k at layer j, before envelope clipping."""
    q = inst.total_mass
    if q == 0:
        raise EmptyScheduleError("windows are undefined when total local mass is 0")
    if not 1 <= j <= q:
        raise InstanceError(f"layer {j} outside 1..{q}")
    if not 0 <= k < inst.r:
        raise InstanceError(f"row {k} outside 0..{inst.r - 1}")
    below, above = _window_terms(inst)
    num = j * int(inst.b_top[k])
    return (-(-num // q) - below - extra_slack, num // q + above + extra_slack)


def _preflight(inst: NFoldInstance, extra: int) -> None:
    q = inst.total_mass
    if q * inst.max_abs_cost >= _RANGE_LIMIT:
        raise ArithmeticOverflowError("path cost bound q * max|cost| exceeds the 64-bit budget")
    below, above = _window_terms(inst)
    top = int(np.abs(inst.b_top).max()) if inst.r else 0
    if top + below + above + abs(extra) + inst.max_abs_entry * q >= _RANGE_LIMIT:
        raise ArithmeticOverflowError("window coordinate bound exceeds the 64-bit budget")


def _solve(inst: NFoldInstance, extra: int, want_path: bool):
    started = time.perf_counter()
    report = validate_instance(inst)
    if not report.ok:
        raise InstanceError("; ".join(report.violations))
    if not inst.is_pure_equality():
        raise UnsupportedRelationError("layered solver needs pure-equality rows")

    def done(sol, vertices, relaxations, path):
        stats = SolveStats(vertices, relaxations, time.perf_counter() - started)
        return sol, stats, path

    q = inst.total_mass
    n, t, r = inst.n, inst.t, inst.r
    if q == 0:
        zeros = [[0] * t for _ in range(n)]
        if all(int(v) == 0 for v in inst.b_top):
            return done(Solution.build(inst, zeros), 1, 0, [] if want_path else None)
        return done(None, 1, 0, None)

    _preflight(inst, extra)
    schedule = balance_counts(inst.b_local)
    layer_brick = [int(e) - 1 for e in schedule.entries]

    if r == 0:
        # no global rows: each slot independently takes its brick's cheapest column
        bricks = [[0] * t for _ in range(n)]
        path = [] if want_path else None
        for j in range(q):
            i = layer_brick[j]
            c = inst.cost[i]
            k = int(np.argmin(c))
            bricks[i][k] += 1
            if want_path:
                path.append((i, k))
        return done(Solution.build(inst, bricks), 1 + q, q * t, path)

    below, above = _window_terms(inst)
    b_top = [int(v) for v in inst.b_top]

    # exact reachability envelopes: per-layer prefix min/max and suffix min/max
    # of the selectable column entries, per row
    col_min = np.stack([block.min(axis=1) for block in inst.blocks])  # (n, r)
    col_max = np.stack([block.max(axis=1) for block in inst.blocks])
    order = np.asarray(layer_brick)
    fwd_min = np.cumsum(col_min[order], axis=0)  # (q, r)
    fwd_max = np.cumsum(col_max[order], axis=0)
    sfx_min = fwd_min[-1][None, :] - fwd_min  # suffix after layer j
    sfx_max = fwd_max[-1][None, :] - fwd_max

    kern = backend.kernels()
    cols_by_brick = [np.ascontiguousarray(block) for block in inst.blocks]
    costs_by_brick = [np.ascontiguousarray(c) for c in inst.cost]

    prev_cost = np.zeros(1, dtype=np.int64)
    prev_lo = np.zeros(r, dtype=np.int64)
    prev_shape = np.ones(r, dtype=np.int64)
    layers = []  # (cost flat, pred flat, lo, shape) per layer 1..q, for backtracking
    vertices = 1
    relaxations = 0

    for j in range(1, q + 1):
        lo = np.empty(r, dtype=np.int64)
        shape = np.empty(r, dtype=np.int64)
        volume = 1
        for k in range(r):
            num = j * b_top[k]
            w_lo = -(-num // q) - below - extra
            w_hi = num // q + above + extra
            lo_k = max(w_lo, int(fwd_min[j - 1, k]), b_top[k] - int(sfx_max[j - 1, k]))
            hi_k = min(w_hi, int(fwd_max[j - 1, k]), b_top[k] - int(sfx_min[j - 1, k]))
            if lo_k > hi_k:
                return done(None, vertices, relaxations, None)
            lo[k] = lo_k
            shape[k] = hi_k - lo_k + 1
            volume *= hi_k - lo_k + 1
        if volume > VOLUME_LIMIT:
            raise SizeLimitError(f"layer {j} needs {volume} cells, limit is {VOLUME_LIMIT}")
        i = layer_brick[j - 1]
        cur_cost, pred, relaxed = kern.sweep_layer(
            prev_cost, prev_lo, prev_shape, lo, shape, cols_by_brick[i], costs_by_brick[i]
        )
        relaxations += int(relaxed)
        reached = int(np.count_nonzero(cur_cost != kern.SENTINEL))
        if reached == 0:
            return done(None, vertices, relaxations, None)
        vertices += reached
        layers.append((cur_cost, pred, lo, shape))
        prev_cost, prev_lo, prev_shape = cur_cost, lo, shape

    final_cost, final_pred, final_lo, final_shape = layers[-1]
    # after clipping, the last layer is exactly the single cell b_top
    assert all(int(v) == 1 for v in final_shape) and all(
        int(final_lo[k]) == b_top[k] for k in range(r)
    ), "internal: final layer is not the single target cell"
    if int(final_cost[0]) == kern.SENTINEL:
        return done(None, vertices, relaxations, None)

    bricks = [[0] * t for _ in range(n)]
    steps: list[tuple[int, int]] = []
    coord = list(b_top)
    flat = 0
    for j in range(q, 0, -1):
        _, pred, _, _ = layers[j - 1]
        k = int(pred[flat])
        assert k >= 0, "internal: reachable cell without a predecessor column"
        i = layer_brick[j - 1]
        bricks[i][k] += 1
        steps.append((i, k))
        block = inst.blocks[i]
        for a in range(r):
            coord[a] -= int(block[a, k])
        if j > 1:
            _, _, plo, pshape = layers[j - 2]
            flat = 0
            for a in range(r):
                off = coord[a] - int(plo[a])
                assert 0 <= off < int(pshape[a]), "internal: backtrack left the table"
                flat = flat * int(pshape[a]) + off
    assert all(v == 0 for v in coord), "internal: backtrack did not return to the origin"
    steps.reverse()

    sol = Solution.build(inst, bricks)
    assert sol.objective == int(final_cost[0]), "internal: table cost disagrees with objective"
    assert check_feasible(inst, bricks), "internal: backtracked solution is infeasible"
    return done(sol, vertices, relaxations, steps if want_path else None)


def solve(inst: NFoldInstance, extra_window_slack: int = 0) -> Optional[Solution]:
    """Minimize over a pure-equality instance; None means infeasible.

    extra_window_slack widens every window symmetrically; it exists so tests
    can confirm that wider windows never change the optimum.
    """
    sol, _, _ = _solve(inst, extra_window_slack, want_path=False)
    return sol


def solve_with_stats(
    inst: NFoldInstance, extra_window_slack: int = 0
) -> tuple[Optional[Solution], SolveStats]:
    sol, stats, _ = _solve(inst, extra_window_slack, want_path=False)
    return sol, stats


def solve_with_path(
    inst: NFoldInstance,
) -> tuple[Optional[Solution], SolveStats, Optional[list[tuple[int, int]]]]:
    """Like solve_with_stats, plus the per-slot (brick, column) choices of the
    returned optimum in schedule order (None when infeasible)."""
    return _solve(inst, 0, want_path=True)

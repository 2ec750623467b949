"""Pure-numpy fallback kernels (NFOLD_BACKEND=numpy).

Same contracts as the numba twins: cost tables travel as flat C-order int64
arrays plus a shape vector, unreachable cells hold SENTINEL, and relaxation
order is column-major in k so tie-breaking matches exactly (only a strictly
cheaper candidate overwrites a cell).
"""

from __future__ import annotations

import numpy as np

SENTINEL = np.iinfo(np.int64).max


def balance_schedule(counts: np.ndarray) -> np.ndarray:
    """Greedy fill: at each slot place the symbol with the most negative
    deviation key q*occ - j*m, breaking ties toward the smallest index.
    counts: positive int64 vector.  Returns 0-based symbol per slot."""
    q = int(counts.sum())
    key = -counts.astype(np.int64)
    out = np.empty(q, dtype=np.int64)
    for j in range(q):
        y = int(np.argmin(key))
        out[j] = y
        key[y] += q
        key -= counts
    return out


def sweep_layer(prev_cost, prev_lo, prev_shape, cur_lo, cur_shape, cols, costs):
    """Relax every finite cell of the previous layer along every column.

    prev_cost: flat int64 table of the source layer (C order, SENTINEL =
    unreachable), prev_lo/cur_lo: absolute coordinates of table origin per
    axis, cols: (r, t) column matrix of the active block, costs: (t,) column
    prices.  Returns (cur_cost flat, pred flat int32, relaxations) where pred
    holds the last column index written into the cell (-1 if unreachable)
    and relaxations counts finite-source edges whose target lies inside the
    current window.
    """
    r = prev_shape.shape[0]
    t = costs.shape[0]
    src_table = prev_cost.reshape(tuple(int(v) for v in prev_shape))
    shape = tuple(int(v) for v in cur_shape)
    cur = np.full(shape, SENTINEL, dtype=np.int64)
    pred = np.full(shape, -1, dtype=np.int32)
    relaxations = 0
    for k in range(t):
        src_slices = []
        dst_slices = []
        empty = False
        for a in range(r):
            shift = int(prev_lo[a]) + int(cols[a, k]) - int(cur_lo[a])
            s0 = max(0, -shift)
            s1 = min(src_table.shape[a], shape[a] - shift)
            if s0 >= s1:
                empty = True
                break
            src_slices.append(slice(s0, s1))
            dst_slices.append(slice(s0 + shift, s1 + shift))
        if empty:
            continue
        src = src_table[tuple(src_slices)]
        finite = src != SENTINEL
        hits = int(np.count_nonzero(finite))
        if hits == 0:
            continue
        relaxations += hits
        cand = src.copy()
        cand[finite] += np.int64(costs[k])
        dst_cost = cur[tuple(dst_slices)]
        dst_pred = pred[tuple(dst_slices)]
        better = finite & (cand < dst_cost)
        dst_cost[better] = cand[better]
        dst_pred[better] = k
    return cur.ravel(), pred.ravel(), relaxations

"""Numba-compiled kernels; contracts documented in _kernels_numpy."""

from __future__ import annotations

import numpy as np
from numba import njit

SENTINEL = np.iinfo(np.int64).max


@njit(cache=True)
def balance_schedule(counts):
    n = counts.shape[0]
    q = 0
    for e in range(n):
        q += counts[e]
    out = np.empty(q, dtype=np.int64)
    key = np.empty(n, dtype=np.int64)
    for e in range(n):
        key[e] = -counts[e]
    for j in range(q):
        y = 0
        best = key[0]
        for e in range(1, n):
            if key[e] < best:
                best = key[e]
                y = e
        out[j] = y
        key[y] += q
        for e in range(n):
            key[e] -= counts[e]
    return out


@njit(cache=True)
def sweep_layer(prev_cost, prev_lo, prev_shape, cur_lo, cur_shape, cols, costs):
    r = prev_shape.shape[0]
    t = costs.shape[0]
    cur_size = 1
    for a in range(r):
        cur_size *= cur_shape[a]
    strides = np.empty(r, dtype=np.int64)
    acc = 1
    for a in range(r - 1, -1, -1):
        strides[a] = acc
        acc *= cur_shape[a]
    cur = np.full(cur_size, SENTINEL, dtype=np.int64)
    pred = np.full(cur_size, -1, dtype=np.int32)
    relaxations = 0
    offsets = np.empty(r, dtype=np.int64)
    n_prev = prev_cost.shape[0]
    for k in range(t):
        for a in range(r):
            offsets[a] = 0
        for src in range(n_prev):
            c = prev_cost[src]
            if c != SENTINEL:
                flat = 0
                inside = True
                for a in range(r):
                    d = offsets[a] + prev_lo[a] + cols[a, k] - cur_lo[a]
                    if d < 0 or d >= cur_shape[a]:
                        inside = False
                        break
                    flat += d * strides[a]
                if inside:
                    relaxations += 1
                    w = c + costs[k]
                    if w < cur[flat]:
                        cur[flat] = w
                        pred[flat] = np.int32(k)
            a = r - 1
            while a >= 0:
                offsets[a] += 1
                if offsets[a] < prev_shape[a]:
                    break
                offsets[a] = 0
                a -= 1
    return cur, pred, relaxations

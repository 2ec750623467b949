"""Shared random-instance generators for the unit and acceptance suites."""

import numpy as np

from nfold.core import NFoldInstance


def _random_blocks(rng, n, t, r, delta_max):
    """Top blocks with entries in [-delta_max, delta_max], max |entry| >= 1.

    All-zero tops are resampled: they drop the instance's coefficient bound
    to 0 and with it every size formula keyed to it, while staying allowed
    by an "entries <= delta" reading.
    """
    while True:
        blocks = rng.integers(-delta_max, delta_max + 1, size=(n, r, t))
        if r == 0 or np.abs(blocks).max() >= 1:
            return blocks


def _feasible_assignment(rng, t, mass):
    out = np.zeros(t, dtype=np.int64)
    left = int(mass)
    for j in range(t - 1):
        v = int(rng.integers(0, left + 1))
        out[j] = v
        left -= v
    out[t - 1] = left
    return out


def random_equality_instance(rng, n_max=3, t_max=3, r_max=2, delta_max=2, b_max=4, c_max=5):
    """One random pure-equality instance; b_top is derived from a hidden
    feasible assignment half the time, uniform otherwise (so the suite mixes
    feasible and infeasible instances)."""
    n = int(rng.integers(1, n_max + 1))
    t = int(rng.integers(1, t_max + 1))
    r = int(rng.integers(0, r_max + 1))
    blocks = _random_blocks(rng, n, t, r, delta_max)
    b_local = rng.integers(0, b_max + 1, size=n)
    cost = rng.integers(-c_max, c_max + 1, size=(n, t))
    q = int(b_local.sum())
    if rng.random() < 0.5:
        x = np.stack([_feasible_assignment(rng, t, b_local[i]) for i in range(n)])
        b_top = (
            np.einsum("irt,it->r", blocks, x) if r else np.zeros(0, dtype=np.int64)
        )
    else:
        span = delta_max * q + 2
        b_top = rng.integers(-span, span + 1, size=r)
    return NFoldInstance(
        n=n,
        t=t,
        r=r,
        blocks=[blocks[i] for i in range(n)],
        b_top=b_top,
        b_local=b_local,
        cost=[cost[i] for i in range(n)],
    )


def random_mixed_instance(rng, n_max=3, t_max=3, r_max=2, delta_max=2, b_max=4, c_max=5):
    """Like random_equality_instance but with relations drawn from
    {<=, =, >=} globally and {<=, =} locally."""
    n = int(rng.integers(1, n_max + 1))
    t = int(rng.integers(1, t_max + 1))
    r = int(rng.integers(0, r_max + 1))
    blocks = _random_blocks(rng, n, t, r, delta_max)
    b_local = rng.integers(0, b_max + 1, size=n)
    cost = rng.integers(-c_max, c_max + 1, size=(n, t))
    grel = [("<=", "=", ">=")[int(rng.integers(0, 3))] for _ in range(r)]
    lrel = [("<=", "=")[int(rng.integers(0, 2))] for _ in range(n)]
    q = int(b_local.sum())
    if rng.random() < 0.5:
        rows = []
        for i in range(n):
            mass = int(b_local[i])
            if lrel[i] == "<=":
                mass = int(rng.integers(0, mass + 1))
            rows.append(_feasible_assignment(rng, t, mass))
        x = np.stack(rows)
        g = np.einsum("irt,it->r", blocks, x) if r else np.zeros(0, dtype=np.int64)
        b_top = np.array(
            [
                g[k]
                + (
                    int(rng.integers(0, 3))
                    if grel[k] == "<="
                    else -int(rng.integers(0, 3))
                    if grel[k] == ">="
                    else 0
                )
                for k in range(r)
            ],
            dtype=np.int64,
        ) if r else g
    else:
        span = delta_max * q + 2
        b_top = rng.integers(-span, span + 1, size=r)
    return NFoldInstance(
        n=n,
        t=t,
        r=r,
        blocks=[blocks[i] for i in range(n)],
        b_top=b_top,
        b_local=b_local,
        cost=[cost[i] for i in range(n)],
        global_relations=grel,
        local_relations=lrel,
    )


def random_zero_sum_columns(rng, r_max=2, m_max=7, delta_max=2):
    """A multiset of m columns in Z^r with entries <= delta_max in absolute
    value whose total is the zero vector (last column balances the rest,
    resampling until it fits the entry bound)."""
    r = int(rng.integers(1, r_max + 1))
    m = int(rng.integers(2, m_max + 1))
    while True:
        cols = rng.integers(-delta_max, delta_max + 1, size=(m - 1, r))
        last = -cols.sum(axis=0)
        if np.abs(last).max() <= delta_max:
            return np.vstack([cols, last[None, :]])

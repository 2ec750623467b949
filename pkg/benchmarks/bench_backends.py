"""Compare the numba and numpy kernel backends on one medium instance.

Usage: python benchmarks/bench_backends.py [--scale S] [--repeat K]

The instance is random but seeded, with its global right side derived from a
hidden assignment so the run always has a feasible optimum.  The numba path
is warmed up once before timing so JIT compilation is not billed to it.
"""

import argparse
import time

import numpy as np

from nfold import backend, dag
from nfold.core import NFoldInstance


def build_instance(scale: int) -> NFoldInstance:
    rng = np.random.default_rng(7)
    n, t, r, mass = 3, 3, 2, 40 * scale
    blocks = rng.integers(-2, 3, size=(n, r, t))
    b_local = np.full(n, mass, dtype=np.int64)
    hidden = np.stack(
        [np.bincount(rng.integers(0, t, size=mass), minlength=t) for _ in range(n)]
    )
    b_top = np.einsum("irt,it->r", blocks, hidden)
    cost = rng.integers(-5, 6, size=(n, t))
    return NFoldInstance(
        n=n,
        t=t,
        r=r,
        blocks=[blocks[i] for i in range(n)],
        b_top=b_top,
        b_local=b_local,
        cost=[cost[i] for i in range(n)],
    )


def time_backend(name: str, inst: NFoldInstance, repeat: int):
    backend.select(name)
    dag.solve(inst)  # warm-up: JIT compile (numba) or fill caches (numpy)
    best = None
    sol = stats = None
    for _ in range(repeat):
        started = time.perf_counter()
        sol, stats = dag.solve_with_stats(inst)
        elapsed = time.perf_counter() - started
        best = elapsed if best is None else min(best, elapsed)
    backend.select(None)
    return sol, stats, best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--scale", type=int, default=1, help="local mass multiplier")
    parser.add_argument("--repeat", type=int, default=3, help="timed runs per backend")
    args = parser.parse_args()

    inst = build_instance(args.scale)
    print(
        f"instance: n={inst.n} t={inst.t} r={inst.r} "
        f"delta={inst.max_abs_entry} q={inst.total_mass}"
    )

    results = {}
    for name in backend.available_backends():
        sol, stats, best = time_backend(name, inst, args.repeat)
        results[name] = (sol, stats, best)
        obj = "infeasible" if sol is None else sol.objective
        print(
            f"{name:>6}: best of {args.repeat} = {best * 1000:8.1f} ms   "
            f"objective = {obj}   vertices = {stats.vertices}   "
            f"relaxations = {stats.relaxations}"
        )

    if len(results) == 2:
        (sol_a, stats_a, t_a), (sol_b, stats_b, t_b) = results.values()
        obj_a = None if sol_a is None else sol_a.objective
        obj_b = None if sol_b is None else sol_b.objective
        assert obj_a == obj_b, "backends disagree on the objective"
        assert (stats_a.vertices, stats_a.relaxations) == (
            stats_b.vertices,
            stats_b.relaxations,
        ), "backends disagree on search counters"
        slow, fast = max(t_a, t_b), min(t_a, t_b)
        print(f"agreement: identical objective and counters; speedup x{slow / fast:.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

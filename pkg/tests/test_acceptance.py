"""Acceptance gate: nine end-to-end checks, one test and one printed
PASS/FAIL line per criterion.  All comparisons are exact (tolerance 0);
the two timed criteria assert their stated wall-clock budgets."""

import contextlib
import io
import itertools
import time
from pathlib import Path

import numpy as np

from helpers import (
    random_equality_instance,
    random_mixed_instance,
    random_zero_sum_columns,
)
from nfold import dag, oracle
from nfold.apps import (
    EquitableColoringInstance,
    LobbyingInstance,
    closest_string_solve,
    equitable_coloring_solve,
    lobbying_solve,
    minimum_vertex_cover,
)
from nfold.balancer import balance_counts
from nfold.cli import main as cli_main
from nfold.rearrangement import exists_bounded_reordering
from nfold.reduction import solve_mixed

DATA = Path(__file__).parent / "data"

SUITE1_SEED = 1001
SUITE1_SIZE = 300


def _report(num: int, name: str, ok: bool, detail: str = "") -> bool:
    verdict = "PASS" if ok else "FAIL"
    suffix = f" [{detail}]" if detail else ""
    print(f"[acceptance] criterion {num} ({name}): {verdict}{suffix}")
    return ok


def suite1():
    rng = np.random.default_rng(SUITE1_SEED)
    return [random_equality_instance(rng) for _ in range(SUITE1_SIZE)]


def test_criterion_1_oracle_equivalence_equality():
    started = time.perf_counter()
    bad = 0
    for inst in suite1():
        got = dag.solve(inst)
        ref = oracle.brute_force_solve(inst)
        agree = (got is None) == (ref is None) and (
            got is None or got.objective == ref.objective
        )
        bad += not agree
    elapsed = time.perf_counter() - started
    ok = bad == 0 and elapsed < 60.0
    assert _report(
        1,
        "oracle equivalence, equality form",
        ok,
        f"{SUITE1_SIZE} instances, {bad} disagreements, {elapsed:.1f}s",
    )


def test_criterion_2_oracle_equivalence_mixed():
    rng = np.random.default_rng(1002)
    bad = 0
    for _ in range(200):
        inst = random_mixed_instance(rng)
        got = solve_mixed(inst)
        ref = oracle.brute_force_solve_mixed(inst)
        agree = (got is None) == (ref is None) and (
            got is None or got.objective == ref.objective
        )
        bad += not agree
    assert _report(
        2, "oracle equivalence, mixed relations", bad == 0, f"200 instances, {bad} disagreements"
    )


def test_criterion_3_schedule_invariants():
    rng = np.random.default_rng(1003)
    violations = 0
    for _ in range(1000):
        n = int(rng.integers(1, 9))
        counts = rng.integers(0, 200 // n + 1, size=n)
        q = int(counts.sum())
        schedule = balance_counts(counts)
        occ = np.zeros(n, dtype=np.int64)
        if len(schedule.entries) != q:
            violations += 1
            continue
        for j, e in enumerate(schedule.entries, start=1):
            occ[e - 1] += 1
            dev = q * occ - j * counts
            if dev.min() < -n * q or dev.max() > q:
                violations += 1
                break
        else:
            if not np.array_equal(occ, counts):
                violations += 1
    assert _report(
        3, "balanced schedule prefix bounds", violations == 0, f"1000 vectors, {violations} violations"
    )


def test_criterion_4_window_sufficiency():
    bad = 0
    for inst in suite1():
        base = dag.solve(inst)
        wide = dag.solve(inst, extra_window_slack=5)
        same = (base is None) == (wide is None) and (
            base is None or base.objective == wide.objective
        )
        bad += not same
    assert _report(
        4, "windows +5 never improve the optimum", bad == 0, f"{SUITE1_SIZE} instances, {bad} changes"
    )


def test_criterion_5_bounded_reordering_exists():
    rng = np.random.default_rng(1005)
    bad = 0
    for _ in range(200):
        cols = random_zero_sum_columns(rng)
        r = cols.shape[1]
        delta = int(np.abs(cols).max())
        if not exists_bounded_reordering(cols, 2 * delta * r):
            bad += 1
    assert _report(
        5, "zero-sum multisets reorder within 2*delta*r", bad == 0, f"200 multisets, {bad} failures"
    )


def test_criterion_6_size_bounds():
    bad = 0
    for inst in suite1():
        _, stats = dag.solve_with_stats(inst)
        q = inst.total_mass
        width = inst.n * inst.max_abs_entry * (inst.n + 1 + 4 * inst.r)
        vertex_bound = 1 + q * width**inst.r
        if stats.vertices > vertex_bound:
            bad += 1
        elif stats.relaxations > inst.n * inst.t * stats.vertices:
            bad += 1
    assert _report(
        6, "vertex and relaxation counts within claimed size", bad == 0, f"{SUITE1_SIZE} instances, {bad} over bound"
    )


def test_criterion_7_linear_scaling_in_q():
    from nfold.core import NFoldInstance

    counts = []
    for scale in (1, 2, 4, 8):
        inst = NFoldInstance(
            n=2,
            t=2,
            r=1,
            blocks=[[[1, -1]], [[1, -1]]],
            b_top=[0],
            b_local=[8 * scale, 8 * scale],
            cost=[[0, 1], [1, 0]],
        )
        _, stats = dag.solve_with_stats(inst)
        counts.append(stats.relaxations)
    ratios = [counts[i + 1] / counts[i] for i in range(3)]
    ok = all(ratio <= 3.0 for ratio in ratios)
    assert _report(
        7,
        "relaxations scale linearly in q",
        ok,
        "ratios per doubling " + ", ".join(f"{x:.2f}" for x in ratios),
    )


def _lobby_reference(rows):
    # flipping a row turns its 0s into 1s, so flipped rows count as all-ones
    w, m = len(rows), len(rows[0])
    need = w // 2 + 1
    best = None
    for flip in itertools.product((0, 1), repeat=w):
        ones = [sum(1 if flip[i] else rows[i][j] for i in range(w)) for j in range(m)]
        if all(o >= need for o in ones):
            cnt = sum(flip)
            if best is None or cnt < best:
                best = cnt
    return best


def _closest_reference(strings, d):
    L = len(strings[0])
    for cand in itertools.product("ab", repeat=L):
        if all(sum(a != b for a, b in zip(s, cand)) <= d for s in strings):
            return True
    return False


def _equitable_reference(vertices, edges, h):
    for colors in itertools.product(range(1, h + 1), repeat=len(vertices)):
        phi = dict(zip(vertices, colors))
        if any(phi[u] == phi[v] for u, v in edges):
            continue
        sizes = [0] * h
        for c in colors:
            sizes[c - 1] += 1
        if max(sizes) - min(sizes) <= 1:
            return True
    return False


def test_criterion_8_applications_vs_exhaustion():
    started = time.perf_counter()
    bad = 0

    for w in range(1, 5):
        for m in range(1, 4):
            for bits in itertools.product((0, 1), repeat=w * m):
                rows = tuple(tuple(bits[i * m : (i + 1) * m]) for i in range(w))
                ref = _lobby_reference(rows)
                for k in range(w + 1):
                    got = lobbying_solve(LobbyingInstance(rows=rows, budget=k))
                    if got.yes != (ref is not None and ref <= k):
                        bad += 1
                    elif ref is not None and got.optimum != ref:
                        bad += 1

    for L in range(1, 5):
        singles = ["".join(p) for p in itertools.product("ab", repeat=L)]
        inputs = [(s,) for s in singles] + list(itertools.product(singles, repeat=2))
        for strings in inputs:
            for d in range(L + 1):
                got = closest_string_solve(list(strings), d)
                ref = _closest_reference(strings, d)
                if (got is not None) != ref:
                    bad += 1
                elif got is not None and any(
                    sum(a != b for a, b in zip(s, got)) > d for s in strings
                ):
                    bad += 1

    for nv in range(1, 6):
        verts = tuple(range(nv))
        pairs = list(itertools.combinations(verts, 2))
        for mask in range(1 << len(pairs)):
            edges = tuple(p for i, p in enumerate(pairs) if mask >> i & 1)
            cover = minimum_vertex_cover(verts, edges)
            for h in range(1, len(cover) + 1):
                inst = EquitableColoringInstance(
                    vertices=verts, edges=edges, colors=h, cover=cover
                )
                got = equitable_coloring_solve(inst)
                if got.yes != _equitable_reference(verts, edges, h):
                    bad += 1
                elif got.yes:
                    phi = got.coloring
                    sizes = [list(phi.values()).count(c) for c in range(1, h + 1)]
                    if any(phi[u] == phi[v] for u, v in edges) or (
                        max(sizes) - min(sizes) > 1
                    ):
                        bad += 1

    elapsed = time.perf_counter() - started
    ok = bad == 0 and elapsed < 300.0
    assert _report(
        8, "applications match exhaustion", ok, f"{bad} disagreements, {elapsed:.1f}s"
    )


GOLDEN_CASES = {
    "solve_feasible": ["solve", "feasible.json"],
    "solve_full": ["solve", "feasible.json", "--oracle", "--stats", "--audit"],
    "solve_infeasible": ["solve", "infeasible.json"],
    "solve_mixed": ["solve", "mixed.json", "--oracle"],
    "oracle_mixed": ["oracle", "mixed.json"],
    "audit_mixed": ["audit", "mixed.json"],
    "lobbying": ["lobbying", "lobby.txt", "--k", "1"],
    "closest": ["closest-string", "closest.txt", "--d", "1"],
    "multistrings": ["multistrings", "strings.txt"],
    "eqcolor": ["eqcolor", "star.txt", "--colors", "2"],
}


def _run_cli(argv):
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = cli_main(argv)
    return code, out.getvalue()


def test_criterion_9_cli_goldens_byte_identical():
    bad = []
    for name, argv in sorted(GOLDEN_CASES.items()):
        full = [str(DATA / a) if (DATA / a).is_file() else a for a in argv]
        code1, out1 = _run_cli(full)
        code2, out2 = _run_cli(full)
        golden = (DATA / f"{name}.golden.json").read_text(encoding="utf-8")
        if not (code1 == code2 == 0 and out1 == out2 == golden):
            bad.append(name)
    assert _report(
        9,
        "CLI golden outputs reproduce byte for byte",
        not bad,
        f"{len(GOLDEN_CASES)} commands" + (f", mismatches: {bad}" if bad else ""),
    )

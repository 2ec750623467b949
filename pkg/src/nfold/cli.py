"""Command-line front end.

Subcommands: solve, oracle, audit, lobbying, closest-string, multistrings,
eqcolor.  Instance files are strict JSON (unknown keys rejected, relations
default to "="); domain files are small line-oriented text formats described
in the README.  Output is a sorted-key JSON document on stdout so runs are
byte-for-byte reproducible.

Exit codes: 0 success (an infeasible instance or a "no" answer is still a
successful run), 1 oracle disagreement under --oracle, 2 unreadable or
invalid input, 3 a size/budget limit was hit, 4 64-bit overflow guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import dag, oracle, reduction
from .apps import (
    EquitableColoringInstance,
    LobbyingInstance,
    MultiStringsInstance,
    WILDCARD,
    closest_string_solve,
    equitable_coloring_solve,
    hamming_table,
    lobbying_solve,
    minimum_vertex_cover,
    multistrings_solve,
    table_distance,
)
from .balancer import balance_counts, verify_balance
from .core import NFoldInstance, validate_instance
from .errors import (
    ArithmeticOverflowError,
    InstanceError,
    NFoldError,
    SizeLimitError,
)
from .rearrangement import (
    exists_blockwise_interleaving,
    interleave_by_schedule,
    partial_sum_check,
)

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_INVALID = 2
EXIT_LIMIT = 3
EXIT_OVERFLOW = 4

_REQUIRED_KEYS = {"n", "t", "r", "blocks", "b_top", "b_local", "cost"}
_OPTIONAL_KEYS = {"global_relations", "local_relations"}


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc


def load_instance(path: str) -> NFoldInstance:
    """Parse and validate a JSON instance file."""
    try:
        doc = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise InstanceError(f"{path}: top level must be an object")
    keys = set(doc)
    unknown = keys - _REQUIRED_KEYS - _OPTIONAL_KEYS
    if unknown:
        raise InstanceError(f"{path}: unknown keys {sorted(unknown)}")
    missing = _REQUIRED_KEYS - keys
    if missing:
        raise InstanceError(f"{path}: missing keys {sorted(missing)}")
    for name in ("n", "t", "r"):
        if not isinstance(doc[name], int) or isinstance(doc[name], bool):
            raise InstanceError(f"{path}: {name} must be an integer")
    inst = NFoldInstance(
        n=doc["n"],
        t=doc["t"],
        r=doc["r"],
        blocks=doc["blocks"],
        b_top=doc["b_top"],
        b_local=doc["b_local"],
        cost=doc["cost"],
        global_relations=doc.get("global_relations"),
        local_relations=doc.get("local_relations"),
    )
    report = validate_instance(inst)
    if not report.ok:
        raise InstanceError(f"{path}: " + "; ".join(report.violations))
    return inst


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _solution_doc(sol) -> dict:
    if sol is None:
        return {"status": "infeasible"}
    return {"status": "optimal", "objective": sol.objective, "x": sol.as_lists()}


def _audit_doc(inst: NFoldInstance) -> dict:
    """Certify the equality program the solver actually ran.

    Mixed instances are audited through their constructed equality form; the
    three checks are: the schedule's prefix deviations stay in [-n, 1], the
    witness path's partial sums stay inside the window band, and some
    within-block reordering of the witness columns does too (null when the
    search hits its node budget).
    """
    target = inst if inst.is_pure_equality() else reduction.reduce_to_equality(inst)[0]
    sol, _, path = dag.solve_with_path(target)
    doc: dict = {"program": "original" if target is inst else "constructed"}
    if sol is None:
        doc["feasible"] = False
        return doc
    doc["feasible"] = True
    schedule = balance_counts(target.b_local)
    doc["schedule_balanced"] = verify_balance(schedule)
    q = target.total_mass
    if q == 0:
        doc["partial_sums_in_window"] = True
        doc["blockwise_reordering_exists"] = True
        return doc
    nd = target.n * target.max_abs_entry
    lo = -nd * (target.n + 2 * target.r)
    hi = nd * (1 + 2 * target.r)
    b_top = [int(v) for v in target.b_top]

    def center(j: int):
        return [Fraction(j * b_top[k], q) for k in range(target.r)]

    ordered = [[] for _ in range(target.n)]
    for i, k in path:
        ordered[i].append(tuple(int(v) for v in target.blocks[i][:, k]))
    arranged = interleave_by_schedule(schedule, ordered)
    doc["partial_sums_in_window"] = partial_sum_check(arranged, center, lo, hi)
    multisets = [sorted(cols) for cols in ordered]
    try:
        doc["blockwise_reordering_exists"] = exists_blockwise_interleaving(
            schedule, multisets, center, lo, hi
        )
    except SizeLimitError:
        doc["blockwise_reordering_exists"] = None
    return doc


def cmd_solve(args) -> int:
    inst = load_instance(args.instance)
    sol, stats = (
        dag.solve_with_stats(inst)
        if inst.is_pure_equality()
        else (reduction.solve_mixed(inst), None)
    )
    doc = _solution_doc(sol)
    if args.stats:
        if stats is None:
            # mixed pipeline: report the inner equality solve's counters
            constructed, _ = reduction.reduce_to_equality(inst)
            _, stats = dag.solve_with_stats(constructed)
        doc["stats"] = {"vertices": stats.vertices, "relaxations": stats.relaxations}
    if args.oracle:
        ref = (
            oracle.brute_force_solve(inst)
            if inst.is_pure_equality()
            else oracle.brute_force_solve_mixed(inst)
        )
        agree = (sol is None) == (ref is None) and (
            sol is None or sol.objective == ref.objective
        )
        doc["oracle"] = {
            "agrees": agree,
            "objective": None if ref is None else ref.objective,
        }
        if not agree:
            _emit(doc)
            return EXIT_DISAGREE
    if args.audit:
        doc["audit"] = _audit_doc(inst)
    _emit(doc)
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = load_instance(args.instance)
    sol = (
        oracle.brute_force_solve(inst)
        if inst.is_pure_equality()
        else oracle.brute_force_solve_mixed(inst)
    )
    _emit(_solution_doc(sol))
    return EXIT_OK


def cmd_audit(args) -> int:
    inst = load_instance(args.instance)
    sol = dag.solve(inst) if inst.is_pure_equality() else reduction.solve_mixed(inst)
    doc = _solution_doc(sol)
    doc["audit"] = _audit_doc(inst)
    _emit(doc)
    return EXIT_OK


def _parse_binary_matrix(path: str) -> tuple[tuple[int, ...], ...]:
    rows = []
    for ln, raw in enumerate(_read_text(path).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip().replace(" ", "")
        if not line:
            continue
        if any(ch not in "01" for ch in line):
            raise InstanceError(f"{path}:{ln}: matrix rows must contain only 0/1")
        rows.append(tuple(int(ch) for ch in line))
    if not rows:
        raise InstanceError(f"{path}: no matrix rows found")
    return tuple(rows)


def cmd_lobbying(args) -> int:
    rows = _parse_binary_matrix(args.matrix)
    inst = LobbyingInstance(rows=rows, budget=args.k)
    result = lobbying_solve(inst)
    _emit(
        {
            "answer": "yes" if result.yes else "no",
            "budget": args.k,
            "optimum": result.optimum,
            "row_types": [list(rt) for rt in inst.row_types],
            "flips": None if result.flips is None else list(result.flips),
        }
    )
    return EXIT_OK


def _parse_strings_file(path: str):
    strings = []
    bounds: dict[str, list[int]] = {}
    for ln, raw in enumerate(_read_text(path).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line:
            key, _, rest = line.partition(":")
            key = key.strip()
            if key not in ("d", "D", "beta"):
                raise InstanceError(f"{path}:{ln}: unknown bound line {key!r}")
            try:
                bounds[key] = [int(v) for v in rest.split()]
            except ValueError as exc:
                raise InstanceError(f"{path}:{ln}: {key} needs integers") from exc
        else:
            if bounds:
                raise InstanceError(f"{path}:{ln}: strings must precede bound lines")
            strings.append(line)
    if not strings:
        raise InstanceError(f"{path}: no strings found")
    return strings, bounds


def _alphabet_of(strings) -> list[str]:
    letters = sorted({ch for s in strings for ch in s if ch != WILDCARD})
    return letters if letters else ["a"]


def cmd_closest_string(args) -> int:
    strings, bounds = _parse_strings_file(args.strings)
    if bounds:
        raise InstanceError(f"{args.strings}: closest-string files take no bound lines")
    y = closest_string_solve(strings, args.d)
    if y is None:
        _emit({"answer": "no", "distance_bound": args.d})
        return EXIT_OK
    inst = MultiStringsInstance(
        strings=tuple(strings),
        lower=(0,) * len(strings),
        upper=(args.d,) * len(strings),
        distances=hamming_table(_alphabet_of(strings)),
        beta=0,
    )
    worst = max((table_distance(inst, y, h) for h in range(inst.k)), default=0)
    _emit({"answer": "yes", "distance_bound": args.d, "string": y, "max_distance": worst})
    return EXIT_OK


def cmd_multistrings(args) -> int:
    strings, bounds = _parse_strings_file(args.strings)
    k = len(strings)
    if "d" not in bounds or "D" not in bounds:
        raise InstanceError(f"{args.strings}: need 'd:' and 'D:' bound lines")
    if len(bounds["d"]) != k or len(bounds["D"]) != k:
        raise InstanceError(f"{args.strings}: need one d and one D per string")
    beta_vals = bounds.get("beta", [0])
    if len(beta_vals) != 1:
        raise InstanceError(f"{args.strings}: beta takes a single value")
    inst = MultiStringsInstance(
        strings=tuple(strings),
        lower=tuple(bounds["d"]),
        upper=tuple(bounds["D"]),
        distances=hamming_table(_alphabet_of(strings)),
        beta=beta_vals[0],
    )
    result = multistrings_solve(inst)
    if result is None:
        _emit({"answer": "no"})
        return EXIT_OK
    distances = [table_distance(inst, result.string, h) for h in range(k)]
    _emit(
        {
            "answer": "yes",
            "string": result.string,
            "objective": result.objective,
            "distances": distances,
        }
    )
    return EXIT_OK


def _parse_graph(path: str):
    vertices: dict[str, None] = {}
    edges = []
    for ln, raw in enumerate(_read_text(path).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            vertices.setdefault(parts[0], None)
        elif len(parts) == 2:
            vertices.setdefault(parts[0], None)
            vertices.setdefault(parts[1], None)
            edges.append((parts[0], parts[1]))
        else:
            raise InstanceError(f"{path}:{ln}: expected 'vertex' or 'u v', got {line!r}")
    return tuple(vertices), tuple(edges)


def cmd_eqcolor(args) -> int:
    vertices, edges = _parse_graph(args.graph)
    if args.cover is None:
        cover = minimum_vertex_cover(vertices, edges)
    else:
        cover = tuple(v for v in args.cover.split(",") if v)
    inst = EquitableColoringInstance(
        vertices=vertices, edges=edges, colors=args.colors, cover=cover
    )
    result = equitable_coloring_solve(inst)
    _emit(
        {
            "answer": "yes" if result.yes else "no",
            "colors": args.colors,
            "cover": sorted(cover),
            "coloring": None
            if result.coloring is None
            else {str(v): c for v, c in sorted(result.coloring.items())},
        }
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nfold",
        description="Exact solver for block-structured integer programs with unit local rows.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a JSON instance file")
    p.add_argument("instance")
    p.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    p.add_argument("--stats", action="store_true", help="include search counters")
    p.add_argument("--audit", action="store_true", help="include partial-sum audit")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="brute-force a JSON instance file")
    p.add_argument("instance")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("audit", help="solve and audit partial-sum bounds")
    p.add_argument("instance")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("lobbying", help="fewest row flips for all-column majority")
    p.add_argument("matrix", help="text file, one 0/1 row per line")
    p.add_argument("--k", type=int, required=True, help="flip budget")
    p.set_defaults(func=cmd_lobbying)

    p = sub.add_parser("closest-string", help="string within Hamming distance d of all inputs")
    p.add_argument("strings", help="text file, one string per line")
    p.add_argument("--d", type=int, required=True, help="distance bound")
    p.set_defaults(func=cmd_closest_string)

    p = sub.add_parser("multistrings", help="string meeting per-input distance bounds")
    p.add_argument("strings", help="text file: strings, then 'd:', 'D:', optional 'beta:'")
    p.set_defaults(func=cmd_multistrings)

    p = sub.add_parser("eqcolor", help="equitable coloring with a vertex cover")
    p.add_argument("graph", help="text file: 'u v' per edge, bare name per isolated vertex")
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--cover", help="comma-separated cover vertices (default: search)")
    p.set_defaults(func=cmd_eqcolor)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ArithmeticOverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except NFoldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

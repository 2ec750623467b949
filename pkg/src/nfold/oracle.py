"""Exhaustive reference solvers.

Deliberately independent of the layered solver: enumeration works brick by
brick over explicit candidate vectors, accumulates row sums in Python
integers, and never touches the scheduling or table code.  Intended for
small instances only; the candidate count is checked against a budget
before anything is materialized.

Ties on the objective break toward the lexicographically smallest flattened
assignment, because bricks are enumerated in lexicographic order and only a
strictly better objective replaces the incumbent.
"""

from __future__ import annotations

import math
import os
from typing import Optional

from .core import NFoldInstance, Relation, Solution, validate_instance
from .errors import InstanceError, SizeLimitError, UnsupportedRelationError

DEFAULT_ENUM_BUDGET = 10**7
_BUDGET_ENV = "NFOLD_ENUM_BUDGET"


def _budget(budget: Optional[int]) -> int:
    if budget is not None:
        return int(budget)
    raw = os.environ.get(_BUDGET_ENV, "").strip()
    if raw:
        try:
            return int(raw)
        except ValueError as exc:
            raise InstanceError(f"{_BUDGET_ENV} must be an integer, got {raw!r}") from exc
    return DEFAULT_ENUM_BUDGET


def _brick_count(t: int, b: int, exact: bool) -> int:
    """Number of non-negative integer t-vectors with sum == b (exact) or <= b."""
    if b < 0:
        return 0
    if exact:
        return math.comb(b + t - 1, t - 1)
    return math.comb(b + t, t)


def enumeration_size(inst: NFoldInstance) -> int:
    """Product over bricks of candidate-vector counts; 0 means trivially infeasible."""
    total = 1
    for i in range(inst.n):
        exact = inst.local_relations[i] is Relation.EQ
        total *= _brick_count(inst.t, int(inst.b_local[i]), exact)
    return total


def _brick_vectors(t: int, b: int, exact: bool) -> list[tuple[int, ...]]:
    """All candidate bricks in lexicographic order."""
    out: list[tuple[int, ...]] = []
    if b < 0:
        return out
    vec = [0] * t

    def rec(pos: int, left: int) -> None:
        if pos == t - 1:
            if exact:
                vec[pos] = left
                out.append(tuple(vec))
            else:
                for v in range(left + 1):
                    vec[pos] = v
                    out.append(tuple(vec))
            return
        for v in range(left + 1):
            vec[pos] = v
            rec(pos + 1, left - v)

    rec(0, b)
    return out


def _search(inst: NFoldInstance, budget: int) -> Optional[Solution]:
    report = validate_instance(inst)
    if not report.ok:
        raise InstanceError("; ".join(report.violations))
    size = enumeration_size(inst)
    if size > budget:
        raise SizeLimitError(f"enumeration would visit {size} assignments, budget is {budget}")

    n, t, r = inst.n, inst.t, inst.r
    delta = inst.max_abs_entry
    b_top = [int(v) for v in inst.b_top]
    rels = inst.global_relations

    candidates = []
    for i in range(n):
        exact = inst.local_relations[i] is Relation.EQ
        vecs = _brick_vectors(t, int(inst.b_local[i]), exact)
        block = inst.blocks[i]
        cost = inst.cost[i]
        rows = []
        for vec in vecs:
            contrib = tuple(
                sum(int(block[k, j]) * vec[j] for j in range(t)) for k in range(r)
            )
            price = sum(int(cost[j]) * vec[j] for j in range(t))
            rows.append((vec, contrib, price))
        if not rows:
            return None
        candidates.append(rows)

    # remaining_mass[i]: largest total count bricks i..n-1 can still add, used
    # by the row-sum pruning below
    remaining = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        remaining[i] = remaining[i + 1] + max(0, int(inst.b_local[i]))

    best_obj: Optional[int] = None
    best: Optional[list[tuple[int, ...]]] = None
    chosen: list[tuple[int, ...]] = [()] * n

    def prune(acc: list[int], rest: int) -> bool:
        reach = delta * rest
        for k in range(r):
            if rels[k] is Relation.EQ:
                if abs(b_top[k] - acc[k]) > reach:
                    return True
            elif rels[k] is Relation.LE:
                if acc[k] - reach > b_top[k]:
                    return True
            else:
                if acc[k] + reach < b_top[k]:
                    return True
        return False

    def rec(i: int, acc: list[int], obj: int) -> None:
        nonlocal best_obj, best
        if i == n:
            for k in range(r):
                if not rels[k].holds(acc[k], b_top[k]):
                    return
            if best_obj is None or obj < best_obj:
                best_obj = obj
                best = list(chosen)
            return
        if prune(acc, remaining[i]):
            return
        for vec, contrib, price in candidates[i]:
            chosen[i] = vec
            rec(i + 1, [a + c for a, c in zip(acc, contrib)], obj + price)

    rec(0, [0] * r, 0)
    if best is None:
        return None
    return Solution.build(inst, best)


def brute_force_solve(inst: NFoldInstance, budget: Optional[int] = None) -> Optional[Solution]:
    """Optimal solution of a pure-equality instance, or None if infeasible."""
    if not inst.is_pure_equality():
        raise UnsupportedRelationError("pure-equality oracle got mixed relations")
    return _search(inst, _budget(budget))


def brute_force_solve_mixed(
    inst: NFoldInstance, budget: Optional[int] = None
) -> Optional[Solution]:
    """Optimal solution under mixed relations (<=, =, >= global; <=, = local)."""
    return _search(inst, _budget(budget))

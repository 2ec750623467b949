"""Slack-variable rewriting of mixed-relation instances into pure equality form.

Every >= global row is negated to <=.  Each original block then gains one
zero top-column (absorbs local <= slack) and r identity columns; one extra
block of r+t+1 columns is appended whose identity columns absorb the global
<= slack and whose remaining zero columns soak up the unused part of its
local mass budget.  Slack columns that would relax an equality row carry a
big-M cost, so any optimum that uses one is more expensive than every
genuine solution; comparing the optimum against big_m/2 therefore decides
feasibility of the original instance exactly.

big_m = 2 + 2 * max|cost| * total_mass: a genuine solution costs at most
max|cost| * total_mass = big_m/2 - 1, while one penalized unit costs at
least big_m minus that same bound, i.e. big_m/2 + 1.  (Scaling by the
largest single local mass instead of the total is not enough once several
bricks contribute cost.)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import dag
from .core import NFoldInstance, Relation, Solution, check_feasible, validate_instance
from .errors import (
    ArithmeticOverflowError,
    DimensionMismatchError,
    InstanceError,
    UnsupportedRelationError,
)

_RANGE_LIMIT = 2**62


@dataclass(frozen=True)
class ReductionMap:
    """Bookkeeping needed to lift solutions of the constructed instance back."""

    big_m: int
    original: NFoldInstance
    negated_rows: frozenset[int]
    local_slack_col: int  # same column index in every original block
    filler_col: int  # in the appended block
    global_slack_cols: tuple[int, ...]  # in the appended block, one per row

    @property
    def original_dims(self) -> tuple[int, int, int]:
        return (self.original.n, self.original.t, self.original.r)


def reduce_to_equality(inst: NFoldInstance) -> tuple[NFoldInstance, ReductionMap]:
    """Build the equivalent pure-equality instance plus its lifting map.

    Precondition: a valid mixed instance with non-negative b_local (callers
    decide infeasibility of negative <= rows before reducing).
    """
    for rel in inst.local_relations:
        if rel is Relation.GE:
            raise UnsupportedRelationError("local >= rows are not supported")
    report = validate_instance(inst)
    if not report.ok:
        raise InstanceError("; ".join(report.violations))
    if inst.b_local.size and int(inst.b_local.min()) < 0:
        raise InstanceError("reduction needs non-negative local right sides")

    n, t, r = inst.n, inst.t, inst.r
    q = inst.total_mass
    delta = inst.max_abs_entry
    big_m = 2 + 2 * inst.max_abs_cost * q
    if big_m >= _RANGE_LIMIT:
        raise ArithmeticOverflowError("big-M cost exceeds the 64-bit budget")

    negated = frozenset(
        k for k, rel in enumerate(inst.global_relations) if rel is Relation.GE
    )
    sign = np.ones(r, dtype=np.int64)
    for k in negated:
        sign[k] = -1
    b_top = sign * inst.b_top
    # post-negation every global row means <= or =
    row_is_eq = [rel is Relation.EQ for rel in inst.global_relations]

    blocks = []
    costs = []
    eye = np.eye(r, dtype=np.int64)
    for i in range(n):
        top = sign[:, None] * inst.blocks[i]
        blocks.append(np.hstack([top, np.zeros((r, 1), dtype=np.int64), eye]))
        local_slack_cost = 0 if inst.local_relations[i] is Relation.LE else big_m
        costs.append(
            np.concatenate(
                [inst.cost[i], [local_slack_cost], np.full(r, big_m, dtype=np.int64)]
            )
        )
    blocks.append(np.hstack([np.zeros((r, t + 1), dtype=np.int64), eye]))
    appended_cost = np.zeros(t + 1 + r, dtype=np.int64)
    for k in range(r):
        if row_is_eq[k]:
            appended_cost[t + 1 + k] = big_m
    costs.append(appended_cost)

    slack_budget = sum(max(0, int(b_top[k]) + delta * q) for k in range(r))
    b_local = np.concatenate([inst.b_local, [slack_budget]])

    constructed = NFoldInstance(
        n=n + 1, t=t + r + 1, r=r, blocks=blocks, b_top=b_top, b_local=b_local, cost=costs
    )
    rmap = ReductionMap(
        big_m=big_m,
        original=inst,
        negated_rows=negated,
        local_slack_col=t,
        filler_col=t,
        global_slack_cols=tuple(range(t + 1, t + 1 + r)),
    )
    return constructed, rmap


def lift_solution(rmap: ReductionMap, sol: Solution) -> Optional[Solution]:
    """Project a constructed-instance solution back; None means the original
    instance is infeasible (the optimum had to buy a penalized slack)."""
    orig = rmap.original
    n, t, r = orig.n, orig.t, orig.r
    if sol.bricks.shape != (n + 1, t + r + 1):
        raise DimensionMismatchError(
            f"solution shape {sol.bricks.shape} does not match the map, "
            f"expected ({n + 1}, {t + r + 1})"
        )
    threshold = -(-rmap.big_m // 2)
    if sol.objective >= threshold:
        return None
    lifted = Solution.build(orig, [row[:t] for row in sol.bricks[:n]])
    assert lifted.objective == sol.objective, "internal: slack carried nonzero cost"
    return lifted


def embed_solution(rmap: ReductionMap, constructed: NFoldInstance, bricks) -> Solution:
    """Forward-map a feasible original assignment into the constructed instance.

    Used by tests to certify the round-trip property; the embedding has the
    same cost because it touches only zero-cost slack columns.
    """
    orig = rmap.original
    n, t, r = orig.n, orig.t, orig.r
    vals = [[int(v) for v in row] for row in bricks]
    sign = {k: -1 for k in rmap.negated_rows}
    out = [[0] * (t + r + 1) for _ in range(n + 1)]
    for i in range(n):
        out[i][:t] = vals[i]
        out[i][t] = int(orig.b_local[i]) - sum(vals[i])
    used = 0
    for k in range(r):
        s = sign.get(k, 1)
        lhs = sum(
            s * int(orig.blocks[i][k, j]) * vals[i][j] for i in range(n) for j in range(t)
        )
        slack = s * int(orig.b_top[k]) - lhs
        out[n][t + 1 + k] = slack
        used += slack
    out[n][t] = int(constructed.b_local[n]) - used
    return Solution.build(constructed, out)


def solve_mixed(inst: NFoldInstance) -> Optional[Solution]:
    """Minimize over a mixed-relation instance; None means infeasible.

    Pure-equality input goes straight to the layered solver.  A negative
    right side on a <= local row can never be met by non-negative variables,
    so that case short-circuits to infeasible before any construction.
    """
    report = validate_instance(inst)
    if not report.ok:
        raise InstanceError("; ".join(report.violations))
    if inst.b_local.size and int(inst.b_local.min()) < 0:
        return None
    if inst.is_pure_equality():
        return dag.solve(inst)
    constructed, rmap = reduce_to_equality(inst)
    inner = dag.solve(constructed)
    if inner is None:
        return None
    lifted = lift_solution(rmap, inner)
    if lifted is not None:
        assert check_feasible(inst, lifted.bricks), "internal: lifted solution infeasible"
    return lifted

"""Data model for block-structured integer programs with unit local rows.

An instance has n*t non-negative integer variables split into n bricks
x^(1), ..., x^(n) of length t.  Brick i is tied to a single local row

    x^(i)_1 + ... + x^(i)_t  <relation>  b_local[i]

and contributes blocks[i] @ x^(i) to the r global rows, whose stacked sum is
compared entrywise against b_top.  The objective sum_i cost[i] @ x^(i) is
minimized.  In the pure equality form every relation is "=", which is what
the layered solver consumes; mixed relations are rewritten first (see
reduction).

Conventions kept throughout the package:

* every matrix/vector entry must fit in signed 64 bits; construction fails
  otherwise,
* evaluation (objective, feasibility) runs in Python integers with an
  explicit range check on the result, so no intermediate ever wraps,
* bricks are indexed 0..n-1 in code even where user-facing text counts
  from 1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ArithmeticOverflowError, DimensionMismatchError, InstanceError

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class Relation(enum.Enum):
    """Comparison attached to one constraint row."""

    LE = "<="
    EQ = "="
    GE = ">="

    @classmethod
    def from_symbol(cls, symbol: "Relation | str") -> "Relation":
        if isinstance(symbol, Relation):
            return symbol
        for member in cls:
            if member.value == symbol:
                return member
        raise InstanceError(f"unknown relation symbol: {symbol!r}")

    def holds(self, lhs: int, rhs: int) -> bool:
        if self is Relation.LE:
            return lhs <= rhs
        if self is Relation.GE:
            return lhs >= rhs
        return lhs == rhs


def _to_int64(data, what: str) -> np.ndarray:
    """Coerce nested sequences to an int64 array, mapping failures to package errors."""
    try:
        arr = np.array(data, dtype=np.int64)
    except OverflowError as exc:
        raise ArithmeticOverflowError(f"{what}: entry outside signed 64-bit range") from exc
    except (TypeError, ValueError) as exc:
        raise InstanceError(f"{what}: not a rectangular integer array ({exc})") from exc
    arr.flags.writeable = False
    return arr


def _relations(values, count_hint: str) -> tuple[Relation, ...]:
    return tuple(Relation.from_symbol(v) for v in values)


@dataclass(frozen=True)
class NFoldInstance:
    """One program instance; arrays are coerced to read-only int64 on construction.

    blocks and cost are per-brick tuples so shape errors stay representable
    and reportable by validate_instance instead of failing at construction.
    """

    n: int
    t: int
    r: int
    blocks: tuple[np.ndarray, ...]
    b_top: np.ndarray
    b_local: np.ndarray
    cost: tuple[np.ndarray, ...]
    global_relations: tuple[Relation, ...]
    local_relations: tuple[Relation, ...]

    def __init__(
        self,
        n: int,
        t: int,
        r: int,
        blocks: Iterable,
        b_top,
        b_local,
        cost: Iterable,
        global_relations: Sequence | None = None,
        local_relations: Sequence | None = None,
    ):
        if not all(isinstance(v, int) for v in (n, t, r)):
            raise InstanceError("n, t, r must be Python integers")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "r", r)
        coerced = []
        for i, block in enumerate(blocks):
            arr = _to_int64(block, f"block {i}")
            if r == 0 and arr.size == 0 and arr.ndim == 1:
                arr = arr.reshape(0, t)
                arr.flags.writeable = False
            coerced.append(arr)
        object.__setattr__(self, "blocks", tuple(coerced))
        object.__setattr__(self, "b_top", _to_int64(b_top, "b_top"))
        object.__setattr__(self, "b_local", _to_int64(b_local, "b_local"))
        object.__setattr__(
            self, "cost", tuple(_to_int64(c, f"cost brick {i}") for i, c in enumerate(cost))
        )
        if global_relations is None:
            global_relations = (Relation.EQ,) * r
        if local_relations is None:
            local_relations = (Relation.EQ,) * n
        object.__setattr__(self, "global_relations", _relations(global_relations, "global"))
        object.__setattr__(self, "local_relations", _relations(local_relations, "local"))

    @property
    def max_abs_entry(self) -> int:
        """Largest |entry| over all blocks (0 when every block is empty)."""
        best = 0
        for block in self.blocks:
            if block.size:
                best = max(best, int(np.abs(block).max()))
        return best

    @property
    def total_mass(self) -> int:
        """Sum of the local right-hand sides; the layered solver's layer count."""
        return int(self.b_local.sum()) if self.b_local.size else 0

    @property
    def max_abs_cost(self) -> int:
        best = 0
        for c in self.cost:
            if c.size:
                best = max(best, int(np.abs(c).max()))
        return best

    def is_pure_equality(self) -> bool:
        return all(rel is Relation.EQ for rel in self.global_relations) and all(
            rel is Relation.EQ for rel in self.local_relations
        )


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]


def validate_instance(inst: NFoldInstance) -> ValidationReport:
    """Check structural consistency; returns all violations rather than the first.

    Shape errors, relation-set errors (local rows only support <= and =) and
    locally unsatisfiable rows (negative right side on an equality over
    non-negative variables) are reported.  A clean report is a precondition
    of every solver entry point.
    """
    bad: list[str] = []
    if inst.n < 1:
        bad.append(f"n must be >= 1, got {inst.n}")
    if inst.t < 1:
        bad.append(f"t must be >= 1, got {inst.t}")
    if inst.r < 0:
        bad.append(f"r must be >= 0, got {inst.r}")
    if len(inst.blocks) != inst.n:
        bad.append(f"expected {inst.n} blocks, got {len(inst.blocks)}")
    for i, block in enumerate(inst.blocks):
        if block.ndim != 2 or block.shape != (inst.r, inst.t):
            bad.append(f"block {i}: shape {block.shape}, expected ({inst.r}, {inst.t})")
    if inst.b_top.ndim != 1 or inst.b_top.shape != (inst.r,):
        bad.append(f"b_top: shape {inst.b_top.shape}, expected ({inst.r},)")
    if inst.b_local.ndim != 1 or inst.b_local.shape != (inst.n,):
        bad.append(f"b_local: shape {inst.b_local.shape}, expected ({inst.n},)")
    if len(inst.cost) != inst.n:
        bad.append(f"expected {inst.n} cost bricks, got {len(inst.cost)}")
    for i, c in enumerate(inst.cost):
        if c.ndim != 1 or c.shape != (inst.t,):
            bad.append(f"cost brick {i}: shape {c.shape}, expected ({inst.t},)")
    if len(inst.global_relations) != inst.r:
        bad.append(f"expected {inst.r} global relations, got {len(inst.global_relations)}")
    if len(inst.local_relations) != inst.n:
        bad.append(f"expected {inst.n} local relations, got {len(inst.local_relations)}")
    for i, rel in enumerate(inst.local_relations):
        if rel is Relation.GE:
            bad.append(f"local row {i}: relation >= is not supported")
    if inst.b_local.ndim == 1 and inst.b_local.shape == (inst.n,):
        for i, rel in enumerate(inst.local_relations):
            if rel is Relation.EQ and int(inst.b_local[i]) < 0:
                bad.append(f"local row {i}: equality with negative right side {int(inst.b_local[i])}")
    return ValidationReport(ok=not bad, violations=tuple(bad))


def _check_range(value: int, what: str) -> int:
    if not (INT64_MIN <= value <= INT64_MAX):
        raise ArithmeticOverflowError(f"{what} {value} outside signed 64-bit range")
    return value


def _coerce_bricks(inst: NFoldInstance, bricks) -> list[list[int]]:
    rows = list(bricks)
    if len(rows) != inst.n:
        raise DimensionMismatchError(f"expected {inst.n} bricks, got {len(rows)}")
    out = []
    for i, row in enumerate(rows):
        vals = [int(v) for v in row]
        if len(vals) != inst.t:
            raise DimensionMismatchError(f"brick {i}: length {len(vals)}, expected {inst.t}")
        out.append(vals)
    return out


def objective_value(inst: NFoldInstance, bricks) -> int:
    """Exact objective of an assignment, computed in Python integers.

    Raises ArithmeticOverflowError if the total leaves the signed 64-bit
    range; intermediates cannot wrap.
    """
    vals = _coerce_bricks(inst, bricks)
    total = 0
    for i in range(inst.n):
        c = inst.cost[i]
        for j in range(inst.t):
            total += int(c[j]) * vals[i][j]
    return _check_range(total, "objective value")


def check_feasible(inst: NFoldInstance, bricks) -> bool:
    """True iff the assignment is non-negative and satisfies every row."""
    vals = _coerce_bricks(inst, bricks)
    if any(v < 0 for row in vals for v in row):
        return False
    for i in range(inst.n):
        if not inst.local_relations[i].holds(sum(vals[i]), int(inst.b_local[i])):
            return False
    for k in range(inst.r):
        lhs = 0
        for i in range(inst.n):
            block = inst.blocks[i]
            for j in range(inst.t):
                lhs += int(block[k, j]) * vals[i][j]
        if not inst.global_relations[k].holds(lhs, int(inst.b_top[k])):
            return False
    return True


@dataclass(frozen=True)
class Solution:
    """An assignment together with its exact objective."""

    bricks: np.ndarray  # (n, t) int64, read-only
    objective: int

    @classmethod
    def build(cls, inst: NFoldInstance, bricks) -> "Solution":
        vals = _coerce_bricks(inst, bricks)
        arr = _to_int64(vals, "solution bricks")
        return cls(bricks=arr, objective=objective_value(inst, vals))

    def as_lists(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.bricks]

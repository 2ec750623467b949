"""Exact solver for block-structured integer programs with unit local rows.

The variable vector splits into n bricks of t non-negative integers; each
brick's entries sum to a prescribed local value and the bricks jointly
satisfy r global rows with small coefficients.  solve handles the pure
equality form by shortest path over layered tables of bounded partial sums;
solve_mixed rewrites <=/>= rows via penalized slack first.  Everything is
integer-exact and cross-checkable against the brute-force oracle.
"""

from .balancer import BalancedSchedule, balance_counts, imbalance, verify_balance
from .core import (
    NFoldInstance,
    Relation,
    Solution,
    ValidationReport,
    check_feasible,
    objective_value,
    validate_instance,
)
from .dag import SolveStats, solve, solve_with_path, solve_with_stats, window_bounds
from .errors import (
    ArithmeticOverflowError,
    DimensionMismatchError,
    EmptyScheduleError,
    InstanceError,
    NFoldError,
    SizeLimitError,
    UnsupportedCaseError,
    UnsupportedRelationError,
)
from .oracle import brute_force_solve, brute_force_solve_mixed, enumeration_size
from .rearrangement import (
    ColumnSequence,
    exists_blockwise_interleaving,
    exists_bounded_reordering,
    interleave_by_schedule,
    partial_sum_check,
)
from .reduction import ReductionMap, embed_solution, lift_solution, reduce_to_equality, solve_mixed

__version__ = "0.1.0"

__all__ = [
    "ArithmeticOverflowError",
    "BalancedSchedule",
    "ColumnSequence",
    "DimensionMismatchError",
    "EmptyScheduleError",
    "InstanceError",
    "NFoldError",
    "NFoldInstance",
    "Relation",
    "ReductionMap",
    "SizeLimitError",
    "Solution",
    "SolveStats",
    "UnsupportedCaseError",
    "UnsupportedRelationError",
    "ValidationReport",
    "balance_counts",
    "brute_force_solve",
    "brute_force_solve_mixed",
    "check_feasible",
    "embed_solution",
    "enumeration_size",
    "exists_blockwise_interleaving",
    "exists_bounded_reordering",
    "imbalance",
    "interleave_by_schedule",
    "lift_solution",
    "objective_value",
    "partial_sum_check",
    "reduce_to_equality",
    "solve",
    "solve_mixed",
    "solve_with_path",
    "solve_with_stats",
    "validate_instance",
    "verify_balance",
    "window_bounds",
    "__version__",
]

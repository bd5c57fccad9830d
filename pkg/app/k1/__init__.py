"""Generators and relations of pi1 of D*(C): pairs of weak triangles and their identities."""

from app.k1.relations import (
    ThreeByThree,
    WeakThreeByThree,
    degenerate_3x3,
    inversions,
    pair_sum_check,
    perm_class,
    rel_3x3,
    rel_weak_3x3,
    sum_formula_check,
    suspension_check,
)
from app.k1.weak import (
    CellSymbols,
    PairOfWeakTriangles,
    Realization,
    WeakTriangle,
    candidate_pairs,
    pair_class,
    pair_expression,
    pair_sum,
    realize_pi1,
    weak_triangle_class,
    weak_triangle_sum,
)

__all__ = [
    "ThreeByThree",
    "WeakThreeByThree",
    "degenerate_3x3",
    "inversions",
    "pair_sum_check",
    "perm_class",
    "rel_3x3",
    "rel_weak_3x3",
    "sum_formula_check",
    "suspension_check",
    "CellSymbols",
    "PairOfWeakTriangles",
    "Realization",
    "WeakTriangle",
    "candidate_pairs",
    "pair_class",
    "pair_expression",
    "pair_sum",
    "realize_pi1",
    "weak_triangle_class",
    "weak_triangle_sum",
]

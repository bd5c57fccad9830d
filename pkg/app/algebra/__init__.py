"""Exact integer linear algebra, abelian groups and nil-2 groups."""

from app.algebra.abelian import AbGroup, AbGroupHom, ab_from_relations
from app.algebra.center import AbelianSubgroup, Nil2Hom, nil2_center, nil2_central_kernel
from app.algebra.integer import EchelonLattice, LatticeKernel, snf, solve_integer
from app.algebra.nil2 import (
    FreeNil2Structure,
    Nil2Group,
    Nil2Structure,
    Nil2Word,
    free_structure,
    nil2_comm,
    nil2_consistent,
    nil2_inv,
    nil2_mul,
    nil2_word_problem,
)

__all__ = [
    "AbGroup",
    "AbGroupHom",
    "ab_from_relations",
    "AbelianSubgroup",
    "Nil2Hom",
    "nil2_center",
    "nil2_central_kernel",
    "EchelonLattice",
    "LatticeKernel",
    "snf",
    "solve_integer",
    "FreeNil2Structure",
    "Nil2Group",
    "Nil2Structure",
    "Nil2Word",
    "free_structure",
    "nil2_comm",
    "nil2_consistent",
    "nil2_inv",
    "nil2_mul",
    "nil2_word_problem",
]

"""Relations among the generators of pi1: 3x3 diagrams, permutations, sums and the suspension.

Every check builds both sides of an identity as degree-1 expressions and
compares them in C1 of the presentation. Failures are reported, not raised.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from app.exceptions import MissingStructure, MissingWitness, ModeMismatch, NotA3x3, UnknownCell
from app.k1.weak import (
    CellSymbols,
    PairOfWeakTriangles,
    WeakTriangle,
    pair_class,
    pair_sum,
    weak_triangle_class,
    weak_triangle_sum,
)
from app.schemas.reports import CheckReport
from app.simplicial.interface import Cell, Equivalence2, PresentationMode, SimpCatData
from app.sqm.free import Deg1Expr, sum_exprs
from app.trifr.complexes import Periodic3Complex
from app.trifr.octahedra import suspension_witness, translation

logger = logging.getLogger(__name__)


def _require_plus(cells: CellSymbols, what: str) -> None:
    if cells.mode != PresentationMode.PLUS.value:
        raise ModeMismatch(f"{what} needs a plus presentation, got {cells.mode}", witness=cells.mode)


def _compare(cells: CellSymbols, report: CheckReport, lhs: Deg1Expr, rhs: Deg1Expr,
             check: str, witness: str) -> bool:
    ok = cells.presentation.equal1(lhs, rhs)
    if not ok:
        logger.warning(f"{cells.presentation.name}: {check} fails at {witness}")
    return report.record(ok, check, f"{check} fails in C1", witness)


# 3x3 diagrams ------------------------------------------------------------------------


@dataclass(frozen=True)
class ThreeByThree:
    """Four 3-simplices glued along the faces of a 3x3 diagram."""

    thetas: tuple

    def face(self, cat: SimpCatData, n: int, i: int) -> Cell:
        """d_i of theta_n, numbered from 1."""
        return cat.face3(self.thetas[n - 1], i)

    def corner(self, cat: SimpCatData, n: int, i: int) -> Cell:
        """d0 d_i of theta_n."""
        return cat.face2(self.face(cat, n, i), 0)

    def mismatches(self, cat: SimpCatData) -> List[str]:
        if len(self.thetas) != 4:
            return [f"expected four 3-simplices, got {len(self.thetas)}"]
        F, c = self.face, self.corner
        out = []
        for (n, i), (m, j) in (((1, 2), (2, 2)), ((3, 1), (4, 1)), ((1, 1), (3, 3)), ((2, 1), (4, 3))):
            if F(cat, n, i) != F(cat, m, j):
                out.append(f"d{i} theta{n} != d{j} theta{m}")
        if c(cat, 1, 3) != c(cat, 2, 1):
            out.append("d0 d3 theta1 != d0 d1 theta2")
        if c(cat, 1, 1) != c(cat, 2, 3):
            out.append("d0 d1 theta1 != d0 d3 theta2")
        X, Y = c(cat, 1, 3), c(cat, 1, 1)
        split1 = cat.coproduct2(cat.degeneracy1(X, 1), cat.degeneracy1(Y, 0))
        split2 = cat.coproduct2(cat.degeneracy1(X, 0), cat.degeneracy1(Y, 1))
        if split1 is None or F(cat, 1, 0) != split1:
            out.append("d0 theta1 != s1 d0 d3 theta1 + s0 d0 d1 theta1")
        if split2 is None or F(cat, 2, 0) != split2:
            out.append("d0 theta2 != s0 d0 d1 theta2 + s1 d0 d3 theta2")
        return out

    def require(self, cat: SimpCatData) -> None:
        problems = self.mismatches(cat)
        if problems:
            raise NotA3x3("; ".join(problems), witness=problems)


def three_by_three_sides(cells: CellSymbols, grid: ThreeByThree) -> Tuple[Deg1Expr, Deg1Expr]:
    """<[d0d1 T1], [d0d3 T1]> = -[d3 T1] - [d0 T3]^{[d2d3 T3]} - [d2 T3] + [d2 T4] + [d0 T4]^{[d2d3 T4]} + [d3 T2]"""
    cat = cells.cat
    grid.require(cat)
    F = grid.face
    c3 = cells.ob(cat.face2(F(cat, 3, 3), 2))
    c4 = cells.ob(cat.face2(F(cat, 4, 3), 2))
    lhs = cells.bracket(cells.ob(grid.corner(cat, 1, 1)), cells.ob(grid.corner(cat, 1, 3)))
    rhs = sum_exprs([
        cells.simplex(F(cat, 1, 3), -1),
        cells.simplex(F(cat, 3, 0), -1, c3),
        cells.simplex(F(cat, 3, 2), -1),
        cells.simplex(F(cat, 4, 2)),
        cells.simplex(F(cat, 4, 0), 1, c4),
        cells.simplex(F(cat, 2, 3)),
    ])
    return lhs, rhs


def rel_3x3(cells: CellSymbols, grid: ThreeByThree) -> CheckReport:
    lhs, rhs = three_by_three_sides(cells, grid)
    cat = cells.cat
    report = CheckReport(name="3x3 relation")
    _compare(cells, report, lhs, rhs, "3x3", cat.label(grid.thetas[0]))
    return report


@dataclass(frozen=True)
class WeakThreeByThree:
    """A 3x3 diagram with weak equivalences w1: D1 -> d0 T3, w2: D2 -> d0 T4 and wC, w'' out of C''."""

    grid: ThreeByThree
    w1: Equivalence2
    w2: Equivalence2
    w_c: Cell
    w_pp: Cell

    def mismatches(self, cat: SimpCatData) -> List[str]:
        out = self.grid.mismatches(cat)
        if out:
            return out
        F = self.grid.face
        if self.w1.target != F(cat, 3, 0):
            out.append("w1 does not end at d0 theta3")
        if self.w2.target != F(cat, 4, 0):
            out.append("w2 does not end at d0 theta4")
        if cat.we_source(self.w_c) != cat.we_source(self.w_pp):
            out.append("wC and w'' have different sources")
        if cat.we_target(self.w_c) != cat.face2(self.w1.source, 0):
            out.append("wC does not end at d0 D1")
        if cat.we_target(self.w_pp) != cat.face2(self.w2.source, 0):
            out.append("w'' does not end at d0 D2")
        if not out and cat.compose(self.w1.faces[0], self.w_c) != cat.compose(self.w2.faces[0], self.w_pp):
            out.append("d0 w1 wC != d0 w2 w''")
        return out

    def require(self, cat: SimpCatData) -> None:
        problems = self.mismatches(cat)
        if problems:
            raise NotA3x3("; ".join(problems), witness=problems)


def rel_weak_3x3(cells: CellSymbols, data: WeakThreeByThree) -> CheckReport:
    """<[d2 D1], [d2 D2]> = -[d3 T1, d2 w2] - [D1, wC]^{[d2d3 T3]} - [d2 T3, d1 w1]
    + [d2 T4, d1 w2] + [D2, w'']^{[d2d3 T4]} + [d3 T2, d2 w1]"""
    cat = cells.cat
    data.require(cat)
    F = data.grid.face
    D1, D2 = data.w1.source, data.w2.source
    c3 = cells.ob(cat.face2(F(cat, 3, 3), 2))
    c4 = cells.ob(cat.face2(F(cat, 4, 3), 2))

    def wt(D: Cell, f: Cell) -> Deg1Expr:
        return weak_triangle_class(cells, WeakTriangle(D, f))

    lhs = cells.bracket(cells.ob(cat.face2(D1, 2)), cells.ob(cat.face2(D2, 2)))
    rhs = sum_exprs([
        -wt(F(cat, 1, 3), data.w2.faces[2]),
        -wt(D1, data.w_c).conjugated(c3),
        -wt(F(cat, 3, 2), data.w1.faces[1]),
        wt(F(cat, 4, 2), data.w2.faces[1]),
        wt(D2, data.w_pp).conjugated(c4),
        wt(F(cat, 2, 3), data.w1.faces[2]),
    ])
    report = CheckReport(name="weak 3x3 relation")
    _compare(cells, report, lhs, rhs, "weak 3x3", cat.label(data.grid.thetas[0]))
    return report


def degenerate_3x3(cat: SimpCatData, X: Cell, Y: Cell) -> Optional[ThreeByThree]:
    """The 3x3 diagram (s0 B, s0 A, s2 B, s2 A) over B = s1 X + s0 Y and A = s0 X + s1 Y."""
    B = cat.coproduct2(cat.degeneracy1(X, 1), cat.degeneracy1(Y, 0))
    A = cat.coproduct2(cat.degeneracy1(X, 0), cat.degeneracy1(Y, 1))
    if A is None or B is None:
        return None
    thetas = (cat.degeneracy2(B, 0), cat.degeneracy2(A, 0), cat.degeneracy2(B, 2), cat.degeneracy2(A, 2))
    if any(t is None for t in thetas):
        return None
    return ThreeByThree(thetas)


# permutations ------------------------------------------------------------------------


def inversions(sigma: Sequence[int]) -> List[tuple]:
    """Pairs (i, j) with i > j and sigma(i) < sigma(j)."""
    return [(i, j) for j, i in combinations(range(len(sigma)), 2) if sigma[i] < sigma[j]]


def perm_class(cells: CellSymbols, objects: Sequence[Cell], sigma: Sequence[int]) -> CheckReport:
    """[sigma] = sum over inversions i > j of <[X_sigma(i)], [X_sigma(j)]>"""
    _require_plus(cells, "the permutation formula")
    cat = cells.cat
    if sorted(sigma) != list(range(len(objects))):
        raise ValueError(f"{list(sigma)} is not a permutation of {len(objects)} summands")
    iso = cat.permutation_equivalence(objects, sigma)
    if iso is None:
        raise MissingStructure(f"{cat.name} has no permutation isomorphism on {list(objects)}")
    lhs = cells.we(iso)
    rhs = sum_exprs([
        cells.bracket(cells.ob(objects[sigma[i]]), cells.ob(objects[sigma[j]])) for i, j in inversions(sigma)
    ])
    report = CheckReport(name="permutation formula")
    _compare(cells, report, lhs, rhs, "permutation", f"{list(sigma)} on {[cat.label(X) for X in objects]}")
    return report


# sums --------------------------------------------------------------------------------


def sum_formula_check(cells: CellSymbols, first: WeakTriangle, second: WeakTriangle) -> CheckReport:
    """The three sum formulas for (D, f) and (D', f'):

    [D + D', f + f'] = [D, f]^{[d1 D']} + [D', f'] + <[d2 D], [C']>
    [D + D'] = [D]^{[d1 D']} + [D'] + <[d2 D], [d0 D']>
    [f + f'] = [f]^{[Y']} + [f']
    """
    _require_plus(cells, "the sum formulas")
    cat = cells.cat
    total = weak_triangle_sum(cat, first, second)
    if total is None:
        raise MissingStructure(f"{cat.name}: the sum leaves the enumerated range")
    D, Dp = first.simplex, second.simplex
    f, fp = first.equivalence, second.equivalence
    witness = f"{first.label(cat)} + {second.label(cat)}"
    report = CheckReport(name="sum formulas")

    lhs = weak_triangle_class(cells, total)
    rhs = (weak_triangle_class(cells, first).conjugated(cells.ob(cat.face2(Dp, 1)))
           + weak_triangle_class(cells, second)
           + cells.bracket(cells.ob(cat.face2(D, 2)), cells.ob(second.source(cat))))
    _compare(cells, report, lhs, rhs, "weak triangle sum", witness)

    lhs = cells.simplex(total.simplex)
    rhs = (cells.simplex(D, 1, cells.ob(cat.face2(Dp, 1)))
           + cells.simplex(Dp)
           + cells.bracket(cells.ob(cat.face2(D, 2)), cells.ob(cat.face2(Dp, 0))))
    _compare(cells, report, lhs, rhs, "triangle sum", witness)

    lhs = cells.we(total.equivalence)
    rhs = cells.we(f, 1, cells.ob(cat.we_target(fp))) + cells.we(fp)
    _compare(cells, report, lhs, rhs, "equivalence sum", witness)
    return report


def pair_sum_check(cells: CellSymbols, p: PairOfWeakTriangles, q: PairOfWeakTriangles) -> CheckReport:
    """The class of a block sum of pairs is the sum of the classes."""
    cat = cells.cat
    report = CheckReport(name="pair sums")
    total = pair_sum(cat, p, q)
    if total is None:
        raise MissingStructure(f"{cat.name}: the sum of the pairs leaves the enumerated range")
    group = cells.presentation.pi1()
    expected = group.add(pair_class(cells, p), pair_class(cells, q))
    got = pair_class(cells, total)
    report.record(got == expected, "pair sum", f"class {got} != {expected}", f"{p.label(cat)} + {q.label(cat)}")
    return report


# suspension --------------------------------------------------------------------------


def suspension_check(cells: CellSymbols, triangle: Periodic3Complex) -> CheckReport:
    """[Gamma_X] + <[C], [X]> = [T'] + [T] for T = (X -> Y -> C -> X) and its translation T'.

    The witnesses (theta, phi, phi', the degenerate octahedron) must be cells
    of the model. The note `self_bracket_vanishes` tells whether <[X], [X]> is
    zero, that is whether the form with <[C] + [X], [X]> holds as well.
    """
    cat = cells.cat
    report = CheckReport(name="suspension formula")
    W = suspension_witness(triangle)
    for ok, what in W.check():
        report.record(ok, "witness", what, cat.label(triangle))
    X, _, C = triangle.ranks
    try:
        cells.simplex(W.theta.face(2))
        for T in (W.gamma, translation(triangle), triangle):
            cells.simplex(T)
    except UnknownCell as e:
        raise MissingWitness(f"{cat.label(triangle)}: a witness triangle is not a 2-simplex of {cat.name}",
                             witness=str(e)) from e
    available = set(cat.three_simplices())
    if W.theta not in available or W.degenerate not in available:
        raise MissingWitness(f"{cat.label(triangle)}: theta or its degenerate companion is not a 3-simplex of {cat.name}",
                             witness=cat.label(triangle))
    lhs = cells.simplex(W.gamma) + cells.bracket(cells.ob(C), cells.ob(X))
    rhs = cells.simplex(translation(triangle)) + cells.simplex(triangle)
    _compare(cells, report, lhs, rhs, "suspension", cat.label(triangle))
    self_bracket = cells.bracket(cells.ob(X), cells.ob(X))
    report.notes["self_bracket_vanishes"] = cells.presentation.is_zero1(self_bracket)
    return report

"""Weak triangles, pairs of weak triangles and the search realizing pi1 by pairs.

A weak triangle (D, f) is a 2-simplex D with a weak equivalence f: C -> d0 D,
and [D, f] = [D] + [f]^{[d2 D]}. A pair of weak triangles shares d1, d2 and
the source of f; its class -[D1, f1] + [D2, f2] is a cycle.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from app.algebra.abelian import Coords
from app.algebra.nil2 import Nil2Word
from app.config import settings
from app.exceptions import MismatchedPair, SearchExhausted, UnknownCell
from app.simplicial.builder import ob_key, simplex_key, we_key
from app.simplicial.interface import Cell, SimpCatData
from app.sqm.free import Deg1Expr
from app.sqm.presentation import SqmPresentation

logger = logging.getLogger(__name__)


class CellSymbols:
    """Generators of a presentation built from `cat`, addressed by cell."""

    def __init__(self, cat: SimpCatData, presentation: SqmPresentation):
        if "table" not in presentation.meta:
            raise ValueError(f"{presentation.name} was not built from a simplicial category")
        self.cat = cat
        self.presentation = presentation
        self.table = presentation.meta["table"]

    @property
    def mode(self) -> str:
        return self.presentation.meta.get("mode", "full")

    def ob(self, X: Cell) -> Nil2Word:
        return Nil2Word.gen(self.table.lookup(ob_key(X)).index)

    def obs(self, *objects: Cell) -> Nil2Word:
        """[X_1] + ... + [X_n] in C0."""
        out: Dict[int, int] = {}
        for X in objects:
            i = self.table.lookup(ob_key(X)).index
            out[i] = out.get(i, 0) + 1
        return Nil2Word(out)

    def simplex(self, D: Cell, sign: int = 1, conj: Optional[Nil2Word] = None) -> Deg1Expr:
        return Deg1Expr.gen(self.table.lookup(simplex_key(D)).index, sign, conj)

    def we(self, f: Cell, sign: int = 1, conj: Optional[Nil2Word] = None) -> Deg1Expr:
        key = we_key(f)
        if key not in self.table:
            # reduced presentations have no symbols for weak equivalences; identities are trivial anyway
            X = self.cat.we_source(f)
            if X == self.cat.we_target(f) and f == self.cat.identity(X):
                return Deg1Expr.zero()
            raise UnknownCell(f"{self.cat.label(f)} is not a generator of {self.presentation.name}",
                              witness=self.cat.label(f))
        return Deg1Expr.gen(self.table.lookup(key).index, sign, conj)

    def bracket(self, u: Nil2Word, v: Nil2Word) -> Deg1Expr:
        return Deg1Expr.bracket(u, v)

    def face(self, D: Cell, i: int) -> Cell:
        return self.cat.face2(D, i)


@dataclass(frozen=True)
class WeakTriangle:
    simplex: Cell
    equivalence: Cell

    def source(self, cat: SimpCatData) -> Cell:
        return cat.we_source(self.equivalence)

    def is_valid(self, cat: SimpCatData) -> bool:
        return cat.we_target(self.equivalence) == cat.face2(self.simplex, 0)

    def label(self, cat: SimpCatData) -> str:
        return f"({cat.label(self.simplex)}, {cat.label(self.equivalence)})"


@dataclass(frozen=True)
class PairOfWeakTriangles:
    first: WeakTriangle
    second: WeakTriangle

    def mismatches(self, cat: SimpCatData) -> List[str]:
        """The matching conditions that fail, empty for a well-formed pair."""
        D1, D2 = self.first.simplex, self.second.simplex
        out = []
        if not self.first.is_valid(cat):
            out.append("f1 does not end at d0 D1")
        if not self.second.is_valid(cat):
            out.append("f2 does not end at d0 D2")
        if cat.face2(D1, 1) != cat.face2(D2, 1):
            out.append("d1 D1 != d1 D2")
        if cat.face2(D1, 2) != cat.face2(D2, 2):
            out.append("d2 D1 != d2 D2")
        if self.first.source(cat) != self.second.source(cat):
            out.append("f1 and f2 have different sources")
        return out

    def is_trivial(self) -> bool:
        return self.first == self.second

    def label(self, cat: SimpCatData) -> str:
        return f"[{self.first.label(cat)}; {self.second.label(cat)}]"


def weak_triangle_class(cells: CellSymbols, wt: WeakTriangle) -> Deg1Expr:
    """[D, f] = [D] + [f]^{[d2 D]}"""
    D = wt.simplex
    return cells.simplex(D) + cells.we(wt.equivalence, 1, cells.ob(cells.face(D, 2)))


def pair_expression(cells: CellSymbols, pair: PairOfWeakTriangles) -> Deg1Expr:
    problems = pair.mismatches(cells.cat)
    if problems:
        raise MismatchedPair("; ".join(problems), witness=pair.label(cells.cat))
    return -weak_triangle_class(cells, pair.first) + weak_triangle_class(cells, pair.second)


def pair_class(cells: CellSymbols, pair: PairOfWeakTriangles) -> Coords:
    """Coordinates in pi1 of -[D1, f1] + [D2, f2]."""
    return cells.presentation.class_in_pi1(pair_expression(cells, pair))


# block sums ------------------------------------------------------------------------


def weak_triangle_sum(cat: SimpCatData, a: WeakTriangle, b: WeakTriangle) -> Optional[WeakTriangle]:
    D = cat.coproduct2(a.simplex, b.simplex)
    f = cat.coproduct_we(a.equivalence, b.equivalence)
    if D is None or f is None:
        return None
    return WeakTriangle(D, f)


def pair_sum(cat: SimpCatData, p: PairOfWeakTriangles, q: PairOfWeakTriangles) -> Optional[PairOfWeakTriangles]:
    """The pair of weak triangles p + q, or None outside the enumerated range."""
    first = weak_triangle_sum(cat, p.first, q.first)
    second = weak_triangle_sum(cat, p.second, q.second)
    if first is None or second is None:
        return None
    return PairOfWeakTriangles(first, second)


# realization ----------------------------------------------------------------------


@dataclass
class Realization:
    """pi1 elements with a certified pair of weak triangles each."""

    found: Dict[Coords, PairOfWeakTriangles] = field(default_factory=dict)
    missing: List[Coords] = field(default_factory=list)
    searched: int = 0

    @property
    def complete(self) -> bool:
        return not self.missing


def _size(order: Dict[Cell, int], *objects: Cell) -> int:
    return sum(order.get(X, 0) for X in objects)


def candidate_pairs(cat: SimpCatData) -> Iterator[PairOfWeakTriangles]:
    """Pairs of weak triangles, by total object size then cell order; f1 = 1 is tried first."""
    order = {X: n for n, X in enumerate(cat.objects())}
    simplices = list(cat.two_simplices())
    by_edges: Dict[Tuple[Cell, Cell], List[int]] = defaultdict(list)
    for n, D in enumerate(simplices):
        by_edges[(cat.face2(D, 1), cat.face2(D, 2))].append(n)
    into: Dict[Cell, List[Cell]] = defaultdict(list)
    for f in cat.weak_equivalences():
        into[cat.we_target(f)].append(f)
    groups = sorted(by_edges.items(), key=lambda kv: (_size(order, *kv[0]), min(kv[1])))
    for _, members in groups:
        pairs = sorted(
            ((a, b) for a in members for b in members),
            key=lambda ab: (_size(order, cat.face2(simplices[ab[0]], 0), cat.face2(simplices[ab[1]], 0)), ab),
        )
        for a, b in pairs:
            D1, D2 = simplices[a], simplices[b]
            C1 = cat.face2(D1, 0)
            firsts = [cat.identity(C1)] + [f for f in into[C1] if f != cat.identity(C1)]
            for f1 in firsts:
                C = cat.we_source(f1)
                for f2 in into[cat.face2(D2, 0)]:
                    if cat.we_source(f2) == C:
                        yield PairOfWeakTriangles(WeakTriangle(D1, f1), WeakTriangle(D2, f2))


def realize_pi1(cells: CellSymbols, budget: Optional[int] = None, strict: bool = False) -> Realization:
    """Search pairs of weak triangles until every element of pi1 is hit or the budget runs out."""
    P = cells.presentation
    group = P.pi1()
    if not group.is_finite:
        raise SearchExhausted(f"pi1 of {P.name} is infinite ({group}); nothing to enumerate", witness=str(group))
    targets = set(group.elements())
    budget = settings.search_budget if budget is None else budget
    out = Realization()
    for pair in candidate_pairs(cells.cat):
        if len(out.found) == len(targets) or out.searched >= budget:
            break
        out.searched += 1
        try:
            coords = pair_class(cells, pair)
        except UnknownCell:
            continue
        if coords not in out.found:
            out.found[coords] = pair
            logger.debug(f"{P.name}: {coords} realized by {pair.label(cells.cat)}")
    out.missing = sorted(t for t in targets if t not in out.found)
    logger.info(f"{P.name}: realized {len(out.found)} of {len(targets)} pi1 elements after {out.searched} pairs")
    if out.missing:
        logger.warning(f"{P.name}: {len(out.missing)} pi1 elements not realized within budget {budget}")
        if strict:
            raise SearchExhausted(f"{len(out.missing)} pi1 elements not realized within {budget} pairs",
                                  witness=[list(t) for t in out.missing])
    return out

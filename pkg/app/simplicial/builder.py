"""Presentations of D*(C) from a truncated simplicial category with weak equivalences.

Generators: one degree-0 symbol [X] per object, one degree-1 symbol [f] per
weak equivalence f: X -> X' with d[f] = -[X'] + [X], and one degree-1 symbol
[D] per 2-simplex with d[D] = -[d1 D] + [d0 D] + [d2 D].
"""

import logging
from collections import defaultdict
from typing import Callable, Dict, Hashable, List, Tuple, Union

from app.algebra.nil2 import Nil2Word, free_structure
from app.exceptions import MissingStructure, SimplicialIdentityViolation
from app.simplicial.interface import (
    Cell,
    PresentationMode,
    RelationPolicy,
    SimpCatData,
    check_simplicial_identities,
)
from app.sqm.free import Deg1Expr
from app.sqm.generators import OBJECT, TWO_SIMPLEX, WEAK_EQUIVALENCE, GeneratorTable
from app.sqm.morphism import SqMorphism
from app.sqm.presentation import SqmPresentation

logger = logging.getLogger(__name__)


def ob_key(X: Cell) -> Tuple[str, Cell]:
    return ("ob", X)


def we_key(f: Cell) -> Tuple[str, Cell]:
    return ("we", f)


def simplex_key(D: Cell) -> Tuple[str, Cell]:
    return ("s2", D)


class _Emitter:
    """Collects degree-1 relators together with the rule and cell they came from."""

    def __init__(self, cat: SimpCatData, table: GeneratorTable):
        self.cat = cat
        self.table = table
        self.relators: List[Deg1Expr] = []
        self.provenance: List[Tuple[str, str]] = []
        self.counts: Dict[str, int] = defaultdict(int)

    def ob(self, X: Cell) -> Nil2Word:
        return Nil2Word.gen(self.table.lookup(ob_key(X)).index)

    def we(self, f: Cell, sign: int = 1, conj: Nil2Word = None) -> Deg1Expr:
        return Deg1Expr.gen(self.table.lookup(we_key(f)).index, sign, conj)

    def simplex(self, D: Cell, sign: int = 1, conj: Nil2Word = None) -> Deg1Expr:
        return Deg1Expr.gen(self.table.lookup(simplex_key(D)).index, sign, conj)

    def emit(self, rule: str, cell: Cell, relator: Deg1Expr) -> None:
        self.relators.append(relator)
        self.provenance.append((rule, self.cat.label(cell)))
        self.counts[rule] += 1


def _check_mode(cat: SimpCatData, mode: PresentationMode) -> None:
    if mode == PresentationMode.REDUCED:
        if not cat.we_are_isos:
            raise MissingStructure(f"{cat.name}: reduced presentations need weak equivalences to be isomorphisms")
        if type(cat).lift_iso is SimpCatData.lift_iso:
            raise MissingStructure(f"{cat.name}: reduced presentations need isomorphism lifting")
    if mode == PresentationMode.PLUS and not cat.free_monoid:
        raise MissingStructure(f"{cat.name}: the plus presentation needs a free monoid of objects")


def build_presentation(cat: SimpCatData, mode: Union[str, PresentationMode] = PresentationMode.FULL,
                       relations: Union[str, RelationPolicy] = RelationPolicy.GENERATORS,
                       check: bool = True) -> SqmPresentation:
    mode = PresentationMode(mode)
    relations = RelationPolicy(relations)
    _check_mode(cat, mode)
    if check:
        report = check_simplicial_identities(cat)
        if not report.passed:
            raise SimplicialIdentityViolation(
                f"{cat.name}: {len(report.failures)} simplicial identities fail", witness=report.summary()
            )

    table = GeneratorTable()
    objects = list(cat.objects())
    for X in objects:
        table.intern(ob_key(X), 0, OBJECT, cat.label(X))
    k = len(objects)
    f0 = free_structure(k)
    out = _Emitter(cat, table)

    boundaries: List[Nil2Word] = []
    tags: List[str] = []
    with_we = mode != PresentationMode.REDUCED
    equivalences = list(cat.weak_equivalences()) if with_we else []
    for f in equivalences:
        table.intern(we_key(f), 1, WEAK_EQUIVALENCE, cat.label(f))
        boundaries.append(f0.mul(f0.inv(out.ob(cat.we_target(f))), out.ob(cat.we_source(f))))
        tags.append(WEAK_EQUIVALENCE)
    simplices = list(cat.two_simplices())
    for D in simplices:
        table.intern(simplex_key(D), 1, TWO_SIMPLEX, cat.label(D))
        d0, d1, d2 = (out.ob(cat.face2(D, i)) for i in range(3))
        boundaries.append(f0.product([f0.inv(d1), d0, d2]))
        tags.append(TWO_SIMPLEX)
    logger.info(f"{cat.name}: {k} objects, {len(equivalences)} weak equivalences, {len(simplices)} 2-simplices")

    r0 = [out.ob(cat.zero())]

    if with_we:
        for X in objects:
            out.emit("identity", X, out.we(cat.identity(X)))
            out.emit("degeneracy", X, out.simplex(cat.degeneracy1(X, 0)))
            out.emit("degeneracy", X, out.simplex(cat.degeneracy1(X, 1)))
        _emit_composition(cat, out, equivalences, relations)
        _emit_simplex_equivalences(cat, out, simplices, relations)
    else:
        out.emit("base point", cat.zero(), out.simplex(cat.base_degeneracy()))

    n3 = 0
    for T in cat.three_simplices():
        n3 += 1
        d0, d1, d2, d3 = (cat.face3(T, i) for i in range(4))
        c = out.ob(cat.face2(d3, 2))
        out.emit("3-simplex", T, out.simplex(d1) + out.simplex(d3) + out.simplex(d0, -1, c) + out.simplex(d2, -1))
    logger.info(f"{cat.name}: {n3} 3-simplices")

    skipped = 0
    for X in objects:
        for Y in objects:
            A = cat.coproduct2(cat.degeneracy1(X, 0), cat.degeneracy1(Y, 1))
            B = cat.coproduct2(cat.degeneracy1(X, 1), cat.degeneracy1(Y, 0))
            if A is None or B is None:
                skipped += 1
                continue
            out.emit("bracket", (X, Y), Deg1Expr.bracket(out.ob(X), out.ob(Y)) - out.simplex(B) + out.simplex(A))
            if mode == PresentationMode.PLUS:
                out.emit("sum", (X, Y), out.simplex(A))
    if skipped:
        logger.warning(f"{cat.name}: {skipped} brackets left free, coproduct outside the enumerated range")

    meta = {
        "table": table,
        "provenance": out.provenance,
        "relator_counts": dict(out.counts),
        "mode": mode.value,
        "relations": relations.value,
        "model": cat.name,
        "free_brackets": skipped,
    }
    presentation = SqmPresentation(
        table.labels(0), table.labels(1), boundaries, r0, out.relators,
        name=f"D({cat.name}, {mode.value})",
        truncated=cat.truncated or cat.sampled or skipped > 0,
        tags1=tags,
        meta=meta,
    )
    logger.info(f"{presentation.name}: {presentation.counts()} relators by rule {dict(out.counts)}")
    return presentation


def _emit_composition(cat: SimpCatData, out: _Emitter, equivalences: List[Cell],
                      relations: RelationPolicy) -> None:
    """[g f] = [g] + [f]"""
    by_source: Dict[Cell, List[Cell]] = defaultdict(list)
    for g in equivalences:
        by_source[cat.we_source(g)].append(g)
    for f in equivalences:
        Y = cat.we_target(f)
        after = by_source[Y] if relations == RelationPolicy.EXHAUSTIVE else cat.automorphism_generators(Y)
        for g in after:
            out.emit("composition", (g, f), out.we(g) + out.we(f) - out.we(cat.compose(g, f)))


def _emit_simplex_equivalences(cat: SimpCatData, out: _Emitter, simplices: List[Cell],
                               relations: RelationPolicy) -> None:
    """[d2 F] + [d0 F]^{[d2 D]} = -[D'] + [d1 F] + [D] for F: D -> D'."""
    exhaustive = relations == RelationPolicy.EXHAUSTIVE
    for D in simplices:
        c = out.ob(cat.face2(D, 2))
        for E in cat.two_simplex_equivalences(D, exhaustive=exhaustive):
            f0, f1, f2 = E.faces
            rel = (out.we(f2) + out.we(f0, 1, c) - out.simplex(E.source)
                   - out.we(f1) + out.simplex(E.target))
            out.emit("2-simplex equivalence", D, rel)


def presentation_keys(P: SqmPresentation) -> Tuple[List[Hashable], List[Hashable]]:
    table: GeneratorTable = P.meta["table"]
    return table.keys(0), table.keys(1)


def morphism_by_cells(P: SqmPresentation, Q: SqmPresentation, on_cell: Callable[[Cell], Cell],
                      name: str = "") -> SqMorphism:
    """The morphism sending the generator of each cell c of P to the generator of on_cell(c) in Q."""
    target: GeneratorTable = Q.meta["table"]
    keys0, keys1 = presentation_keys(P)
    on0 = [Nil2Word.gen(target.lookup((kind, on_cell(c))).index) for kind, c in keys0]
    on1 = [Nil2Word.gen(target.lookup((kind, on_cell(c))).index) for kind, c in keys1]
    return SqMorphism(P, Q, on0, on1, name=name)


def inclusion_by_keys(P: SqmPresentation, Q: SqmPresentation, name: str = "inclusion") -> SqMorphism:
    """The morphism sending every generator of P to the generator of Q with the same cell."""
    return morphism_by_cells(P, Q, lambda c: c, name=name)


def stabilization_map(make_model: Callable[[int], SimpCatData], N: int,
                      mode: Union[str, PresentationMode] = PresentationMode.FULL,
                      relations: Union[str, RelationPolicy] = RelationPolicy.GENERATORS) -> SqMorphism:
    """The identity-on-generators morphism from level N into level N + 1."""
    small = build_presentation(make_model(N), mode, relations)
    large = build_presentation(make_model(N + 1), mode, relations)
    return inclusion_by_keys(small, large, name=f"stabilization {N}->{N + 1}")

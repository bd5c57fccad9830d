"""Determinant functors on a simplicial category and their factorization through D*(C)."""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Union

from app.algebra.nil2 import Nil2Word
from app.exceptions import AxiomFailure
from app.schemas.reports import CheckReport
from app.simplicial.builder import build_presentation
from app.simplicial.interface import Cell, PresentationMode, RelationPolicy, SimpCatData
from app.sqm.generators import GeneratorTable
from app.sqm.morphism import SqMorphism, check_morphism
from app.sqm.presentation import Deg1Like, SqmPresentation

logger = logging.getLogger(__name__)


@dataclass
class DetFunctorData:
    """Values of a determinant functor on objects, weak equivalences and 2-simplices."""

    target: SqmPresentation
    on_object: Callable[[Cell], Nil2Word]
    on_we: Callable[[Cell], Deg1Like]
    on_simplex: Callable[[Cell], Deg1Like]
    name: str = "det"


def _images(P: SqmPresentation, det: DetFunctorData):
    table: GeneratorTable = P.meta["table"]
    on0 = [det.on_object(key[1]) for key in table.keys(0)]
    on1 = []
    for key in table.keys(1):
        kind, cell = key
        on1.append(det.on_we(cell) if kind == "we" else det.on_simplex(cell))
    return on0, on1


def det_morphism(P: SqmPresentation, det: DetFunctorData) -> SqMorphism:
    """The generator-wise map D*(C) -> target defined by det, unchecked."""
    on0, on1 = _images(P, det)
    return SqMorphism(P, det.target, on0, on1, name=det.name)


def verify_det_functor(cat: SimpCatData, det: DetFunctorData,
                       presentation: Optional[SqmPresentation] = None,
                       mode: Union[str, PresentationMode] = PresentationMode.FULL,
                       relations: Union[str, RelationPolicy] = RelationPolicy.GENERATORS) -> CheckReport:
    """Every axiom instance as an equation in the target; failures name their cell."""
    P = presentation if presentation is not None else build_presentation(cat, mode, relations)
    report = check_morphism(det_morphism(P, det))
    report.name = f"determinant functor {det.name} on {cat.name}"
    provenance = P.meta.get("provenance", [])
    for failure in report.failures:
        if failure.check == "R1" and isinstance(failure.witness, int) and failure.witness < len(provenance):
            rule, cell = provenance[failure.witness]
            failure.detail = f"{rule} axiom fails at {cell}"
    report.notes["relator_counts"] = P.meta.get("relator_counts", {})
    logger.info(f"{report.name}: checked {report.checked}, failures {len(report.failures)}")
    return report


def factor_det_functor(cat: SimpCatData, det: DetFunctorData,
                       presentation: Optional[SqmPresentation] = None,
                       mode: Union[str, PresentationMode] = PresentationMode.FULL,
                       relations: Union[str, RelationPolicy] = RelationPolicy.GENERATORS) -> SqMorphism:
    """The morphism D*(C) -> target through which det factors."""
    P = presentation if presentation is not None else build_presentation(cat, mode, relations)
    report = verify_det_functor(cat, det, P)
    if not report.passed:
        raise AxiomFailure(f"{det.name} is not a determinant functor on {cat.name}", witness=report.summary())
    return det_morphism(P, det)


def universal_det_data(P: SqmPresentation) -> DetFunctorData:
    """Every cell goes to its own generator."""
    table: GeneratorTable = P.meta["table"]

    def on_object(X: Cell) -> Nil2Word:
        return Nil2Word.gen(table.lookup(("ob", X)).index)

    def on_we(f: Cell) -> Nil2Word:
        return Nil2Word.gen(table.lookup(("we", f)).index)

    def on_simplex(D: Cell) -> Nil2Word:
        return Nil2Word.gen(table.lookup(("s2", D)).index)

    return DetFunctorData(P, on_object, on_we, on_simplex, name="universal")


def zero_det_data(target: SqmPresentation) -> DetFunctorData:
    return DetFunctorData(target, lambda X: Nil2Word(), lambda f: Nil2Word(), lambda D: Nil2Word(), name="zero")

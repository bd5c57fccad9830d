"""Service for presenting models and computing their homotopy groups."""

import logging
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from app.algebra.abelian import AbGroup
from app.config import settings
from app.exceptions import MissingStructure, SearchExhausted, SqmkError
from app.k1.weak import CellSymbols, realize_pi1
from app.models import (
    FieldUnitsOracle,
    dualnum_model,
    extension_of_scalars,
    field_model_sqm,
    ftr_model,
    vect_model,
)
from app.schemas.kgroups import (
    AbelianRequest,
    AbGroupSchema,
    KGroupsReport,
    KGroupsRequest,
    ModelSpec,
    RealizeReport,
    SixTermReport,
)
from app.simplicial.builder import build_presentation, inclusion_by_keys, morphism_by_cells, stabilization_map
from app.simplicial.interface import SimpCatData
from app.sqm.cofiber import six_term
from app.sqm.morphism import SqMorphism, multiplication_morphism, random_free_morphism
from app.sqm.presentation import SqmPresentation

logger = logging.getLogger(__name__)

ModelFactory = Callable[[int], SimpCatData]


def model_factory(spec: ModelSpec) -> ModelFactory:
    """Level N of the model named by spec, as a function of N."""
    if spec.model == "vect":
        return lambda N: vect_model(spec.q, N)
    if spec.model == "dualnum":
        return lambda N: dualnum_model(spec.base, N)
    if spec.model == "ftr":
        return lambda N: ftr_model(spec.base, N, spec.flavor)
    raise MissingStructure(f"{spec.model} is not a simplicial model")


def coords_key(coords: Sequence[int]) -> str:
    return "[" + ",".join(str(x) for x in coords) + "]"


def build_morphisms(kind: str, spec: ModelSpec, mode: str, count: int,
                    rng: np.random.Generator) -> List[SqMorphism]:
    """Morphisms whose cofibers are examined: the x2 toy map, scalar extension, stabilization or random ones."""
    if kind == "toy":
        return [multiplication_morphism(2)]
    if kind == "random":
        return [random_free_morphism(rng) for _ in range(count)]
    if kind == "stabilization":
        return [stabilization_map(model_factory(spec), spec.maxdim, mode)]
    if kind == "scalar":
        if spec.model != "vect":
            raise MissingStructure("scalar extension is defined for the vect model")
        small, large = vect_model(spec.q, spec.maxdim), vect_model(spec.q ** 2, spec.maxdim)
        P = build_presentation(small, mode)
        Q = build_presentation(large, mode)
        name = f"{small.name} -> {large.name}"
        return [morphism_by_cells(P, Q, extension_of_scalars(small, large), name=name)]
    raise ValueError(f"unknown morphism kind {kind!r}")


class KGroupService:
    """Service class for presentation and homotopy-group operations."""

    def present(
        self,
        spec: ModelSpec,
        mode: str = "full",
        relations: str = "generators",
    ) -> Tuple[Optional[SqmPresentation], Optional[str]]:
        """
        Build the presentation of D*(C) for the model in spec.

        The field model has no simplicial category; its presentation is the
        units model itself.
        """
        try:
            if not spec.leveled:
                P = field_model_sqm(spec.base)
                if isinstance(P, FieldUnitsOracle):
                    return None, f"{spec.base} has no finite presentation, only a units oracle"
                return P, None
            cat = model_factory(spec)(spec.maxdim)
            return build_presentation(cat, mode, relations), None
        except SqmkError as exc:
            logger.warning(f"presentation of {spec.model} failed: {exc}")
            return None, str(exc)

    def is_stable(
        self,
        spec: ModelSpec,
        P: SqmPresentation,
        mode: str = "full",
        relations: str = "generators",
    ) -> Tuple[Optional[bool], Optional[str]]:
        """Whether the map from level maxdim - 1 into P induces isomorphisms on pi0 and pi1."""
        if not spec.leveled or spec.maxdim == 0:
            return None, "stability needs a simplicial model at level 1 or higher"
        try:
            small = build_presentation(model_factory(spec)(spec.maxdim - 1), mode, relations)
            f = inclusion_by_keys(small, P, name=f"stabilization {spec.maxdim - 1}->{spec.maxdim}")
            return f.induced_pi0().is_isomorphism() and f.induced_pi1().is_isomorphism(), None
        except SqmkError as exc:
            return None, str(exc)

    def kgroups(self, request: KGroupsRequest) -> Tuple[Optional[KGroupsReport], Optional[str]]:
        """pi0, pi1, eta and generator counts of a model presentation."""
        P, error = self.present(request, request.mode, request.relations)
        if error:
            return None, error

        pi0, pi1 = P.pi0(), P.pi1()
        eta = P.k_invariant()
        stable = None
        if request.stable:
            stable, error = self.is_stable(request, P, request.mode, request.relations)
            if error:
                return None, error

        logger.info(f"{P.name}: pi0 = {pi0}, pi1 = {pi1}")
        report = KGroupsReport(
            model=P.meta.get("model", P.name),
            mode=P.meta.get("mode", "field"),
            pi0=list(pi0.invariant_factors),
            pi1=list(pi1.invariant_factors),
            pi0_text=str(pi0),
            pi1_text=str(pi1),
            eta=[list(eta(pi0.generator(j))) for j in range(pi0.ncoords)],
            generator_counts=P.counts(),
            relator_counts=P.meta.get("relator_counts", {}),
            truncated=bool(P.truncated),
            stable=stable,
        )
        return report, None

    def realize(
        self,
        spec: ModelSpec,
        mode: str = "full",
        budget: Optional[int] = None,
        target: Optional[Sequence[int]] = None,
    ) -> Tuple[Optional[RealizeReport], Optional[str]]:
        """Pairs of weak triangles for every pi1 element, or for the target class only."""
        try:
            cat = model_factory(spec)(spec.maxdim)
            P = build_presentation(cat, mode)
            cells = CellSymbols(cat, P)
            group = P.pi1()
            if target is not None and len(target) != group.ncoords:
                return None, f"target class {list(target)} does not have {group.ncoords} coordinates of {group}"
            result = realize_pi1(cells, budget if budget is not None else settings.search_budget)
        except SearchExhausted as exc:
            return None, str(exc)
        except SqmkError as exc:
            logger.warning(f"realization on {spec.model} failed: {exc}")
            return None, str(exc)

        found = {coords_key(c): pair.label(cat) for c, pair in sorted(result.found.items())}
        missing = [list(c) for c in result.missing]
        if target is not None:
            wanted = group.reduce(target)
            found = {k: v for k, v in found.items() if k == coords_key(wanted)}
            missing = [] if found else [list(wanted)]
        report = RealizeReport(
            model=cat.name,
            pi1=list(group.invariant_factors),
            found=found,
            missing=missing,
            searched=result.searched,
            complete=not missing,
        )
        return report, None

    def cofiber(
        self,
        kind: str,
        spec: ModelSpec,
        mode: str = "full",
        count: int = 1,
        seed: Optional[int] = None,
    ) -> Tuple[Optional[List[SixTermReport]], Optional[str]]:
        """Six-term sequences of the cofibers of the requested morphisms."""
        rng = np.random.default_rng(settings.seed if seed is None else seed)
        try:
            morphisms = build_morphisms(kind, spec, mode, count, rng)
            reports = []
            for f in morphisms:
                sequence = six_term(f)
                reports.append(SixTermReport(
                    morphism=f.name,
                    groups={k: list(g.invariant_factors) for k, g in sequence.groups.items()},
                    exactness=sequence.exactness,
                    exact=sequence.exact,
                ))
        except (SqmkError, ValueError) as exc:
            logger.warning(f"cofiber of {kind} morphism failed: {exc}")
            return None, str(exc)
        return reports, None

    def abelian(self, request: AbelianRequest) -> Tuple[Optional[AbGroupSchema], Optional[str]]:
        """The abelian group on ngens generators modulo the relator rows."""
        try:
            group = AbGroup(request.ngens, request.relators)
        except (SqmkError, ValueError) as exc:
            return None, str(exc)
        return AbGroupSchema.from_group(group), None


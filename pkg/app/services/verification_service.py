"""Service running the relation and identity suites on a model."""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from app.config import settings
from app.exceptions import MissingStructure, MissingWitness, SqmkError
from app.k1.families import (
    automorphism_pairs,
    decorated_grids,
    degenerate_grids,
    degenerate_sum_instances,
    find_3x3s,
    permutations_of,
    pick,
    random_pairs,
    ses_grids,
    sum_instances,
)
from app.k1.relations import (
    pair_sum_check,
    perm_class,
    rel_3x3,
    rel_weak_3x3,
    sum_formula_check,
    suspension_check,
)
from app.k1.weak import CellSymbols
from app.models import FreeModuleModel, TriangulatedModel, determinant_data, ftr_model
from app.rings.fields import DualNumbers, ring_from_descriptor
from app.schemas.kgroups import ModelSpec
from app.schemas.reports import CheckReport
from app.services.kgroup_service import build_morphisms, model_factory
from app.simplicial.builder import build_presentation, inclusion_by_keys
from app.simplicial.det import det_morphism, verify_det_functor
from app.simplicial.interface import SimpCatData
from app.sqm.cofiber import six_term
from app.sqm.morphism import check_morphism
from app.trifr.checks import (
    contraction_check,
    det3_invariance_check,
    extension_det_check,
    octahedron_det_check,
)
from app.trifr.complexes import det3, is_distinguished

logger = logging.getLogger(__name__)


@dataclass
class SuiteRun:
    """Inputs shared by every suite."""
    spec: ModelSpec
    mode: str
    relations: str
    count: int
    seed: int
    rng: np.random.Generator = field(init=False)

    def __post_init__(self):
        self.rng = np.random.default_rng(self.seed)

    def model(self) -> SimpCatData:
        return model_factory(self.spec)(self.spec.maxdim)

    def cells(self) -> CellSymbols:
        cat = self.model()
        return CellSymbols(cat, build_presentation(cat, self.mode, self.relations))


def _dual_ring(spec: ModelSpec) -> DualNumbers:
    R = ring_from_descriptor(spec.base)
    return R if isinstance(R, DualNumbers) else DualNumbers(R)


class VerificationService:
    """Service class for relation-family and identity suites."""

    def __init__(self):
        self.suites: Dict[str, Callable[[SuiteRun], CheckReport]] = {
            "3x3": self.three_by_three,
            "weak3x3": self.weak_three_by_three,
            "perm": self.permutations,
            "sum": self.sums,
            "pairs": self.pair_sums,
            "susp": self.suspension,
            "det": self.determinant,
            "det3": self.det3,
            "octahedra": self.octahedra,
            "contraction": self.contraction,
            "sixterm": self.six_term,
            "modes": self.modes,
        }

    def run(
        self,
        family: str,
        spec: ModelSpec,
        mode: str = "full",
        count: int = 20,
        seed: Optional[int] = None,
        relations: str = "generators",
    ) -> Tuple[Optional[CheckReport], Optional[str]]:
        """
        Run one suite and return its report.

        Failed equations are data in the report; an error string means the
        suite could not run at all on this model.
        """
        suite = self.suites.get(family)
        if suite is None:
            return None, f"unknown family {family!r}"
        run = SuiteRun(spec, mode, relations, count, settings.seed if seed is None else seed)
        try:
            report = suite(run)
        except (SqmkError, ValueError) as exc:
            logger.warning(f"{family} on {spec.model} could not run: {exc}")
            return None, f"{family}: {exc}"
        report.notes.setdefault("family", family)
        logger.info(f"{family}: {report.checked} checks, {len(report.failures)} failures")
        return report, None

    # relation families ----------------------------------------------------------

    def three_by_three(self, run: SuiteRun) -> CheckReport:
        cells = run.cells()
        grids = degenerate_grids(cells.cat) + find_3x3s(cells.cat, run.count)
        if isinstance(cells.cat, FreeModuleModel) and run.mode != "reduced":
            grids += ses_grids(cells.cat, run.count, run.rng)
        report = CheckReport(name="3x3 relations")
        chosen = pick(grids, run.count, run.rng)
        for grid in chosen:
            report.merge(rel_3x3(cells, grid))
        report.notes["instances"] = len(chosen)
        return report

    def weak_three_by_three(self, run: SuiteRun) -> CheckReport:
        cells = run.cells()
        report = CheckReport(name="weak 3x3 relations")
        data = decorated_grids(cells.cat, run.count, run.rng)
        for item in data:
            report.merge(rel_weak_3x3(cells, item))
        report.notes["instances"] = len(data)
        return report

    def permutations(self, run: SuiteRun) -> CheckReport:
        cells = run.cells()
        cat = cells.cat
        objects = list(cat.objects())
        report = CheckReport(name="permutation formula")
        tuples = []
        for n in (2, 3):
            for xs in itertools.product(objects, repeat=n):
                if cat.permutation_equivalence(xs, tuple(range(n))) is not None:
                    tuples.append(xs)
        chosen = pick(tuples, run.count, run.rng)
        for xs in chosen:
            for sigma in permutations_of(len(xs)):
                report.merge(perm_class(cells, xs, sigma))
        report.notes["instances"] = len(chosen)
        return report

    def sums(self, run: SuiteRun) -> CheckReport:
        cells = run.cells()
        report = CheckReport(name="sum formulas")
        instances = pick(degenerate_sum_instances(cells.cat), run.count, run.rng)
        instances += sum_instances(cells.cat, run.count, run.rng)
        for first, second in instances:
            report.merge(sum_formula_check(cells, first, second))
        report.notes["instances"] = len(instances)
        return report

    def pair_sums(self, run: SuiteRun) -> CheckReport:
        cells = run.cells()
        cat = cells.cat
        report = CheckReport(name="pair sums")
        pairs = automorphism_pairs(cat) + random_pairs(cat, 2 * run.count, run.rng)
        skipped = 0
        for p, q in itertools.islice(zip(pairs, pairs[1:]), run.count):
            try:
                report.merge(pair_sum_check(cells, p, q))
            except MissingStructure:
                skipped += 1
        report.notes["skipped"] = skipped
        return report

    def suspension(self, run: SuiteRun) -> CheckReport:
        cells = run.cells()
        cat = cells.cat
        if not isinstance(cat, TriangulatedModel):
            raise MissingStructure(f"{cat.name} has no suspension functor")
        report = CheckReport(name="suspension formula")
        missing = 0
        vanishing = True
        for T in cat.two_simplices():
            if max(T.ranks) > 1:
                continue
            try:
                part = suspension_check(cells, T)
            except MissingWitness as exc:
                logger.debug(f"suspension: {exc}")
                missing += 1
                continue
            vanishing = vanishing and part.notes.get("self_bracket_vanishes", True)
            report.merge(part)
        report.notes.update({"missing_witness": missing, "self_bracket_vanishes": vanishing})
        return report

    # determinants ---------------------------------------------------------------

    def determinant(self, run: SuiteRun) -> CheckReport:
        cat = run.model()
        if not isinstance(cat, FreeModuleModel):
            raise MissingStructure(f"{cat.name} has no determinant into a units model")
        det = determinant_data(cat)
        P = build_presentation(cat, "full", run.relations)
        report = verify_det_functor(cat, det, P)
        if report.passed:
            f = det_morphism(P, det)
            report.notes["pi0_iso"] = f.induced_pi0().is_isomorphism()
            report.notes["pi1_iso"] = f.induced_pi1().is_isomorphism()
        return report

    def det3(self, run: SuiteRun) -> CheckReport:
        R = _dual_ring(run.spec)
        report = det3_invariance_check(R, count=run.count, seed=run.seed)
        report.merge(extension_det_check(R, count=run.count, seed=run.seed))
        report.name = f"det3 over {R.descriptor}"
        if R.base.order is not None:
            for T in ftr_model(R.base.descriptor, run.spec.maxdim, "d").two_simplices():
                report.record(is_distinguished(T) and det3(T) == R.base.one, "distinguished",
                              "distinguished triangle with det3 != 1", str(T))
        return report

    def octahedra(self, run: SuiteRun) -> CheckReport:
        model = ftr_model(run.spec.base, run.spec.maxdim, "v")
        return octahedron_det_check(model, limit=run.count or None)

    def contraction(self, run: SuiteRun) -> CheckReport:
        return contraction_check(run.spec.base, run.spec.maxdim)

    # cofibers and presentation modes -------------------------------------------

    def six_term(self, run: SuiteRun) -> CheckReport:
        report = CheckReport(name="six-term exactness")
        kinds = ["toy", "random"]
        if run.spec.model == "vect" and run.spec.q == 2:
            kinds.append("scalar")
        for kind in kinds:
            for f in build_morphisms(kind, run.spec, run.mode, run.count, run.rng):
                part = six_term(f).report()
                for failure in part.failures:
                    failure.witness = f.name
                report.merge(part)
        return report

    def modes(self, run: SuiteRun) -> CheckReport:
        """Full against Reduced and Plus through the identity-on-generators morphisms."""
        cat = run.model()
        report = CheckReport(name=f"presentation modes on {cat.name}")
        full = build_presentation(cat, "full", run.relations)
        maps = []
        if cat.we_are_isos:
            maps.append(inclusion_by_keys(build_presentation(cat, "reduced"), full, name="reduced->full"))
        if cat.free_monoid:
            maps.append(inclusion_by_keys(full, build_presentation(cat, "plus", run.relations), name="full->plus"))
        for f in maps:
            report.merge(check_morphism(f))
            report.record(f.induced_pi0().is_isomorphism(), "pi0", f"{f.name} is not an isomorphism on pi0")
            report.record(f.induced_pi1().is_isomorphism(), "pi1", f"{f.name} is not an isomorphism on pi1")
        report.notes["maps"] = [f.name for f in maps]
        return report

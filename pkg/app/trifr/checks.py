"""Determinant identities, Jordan peeling and the contraction of the distinguished model."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from app.algebra.nil2 import Nil2Word
from app.config import settings
from app.exceptions import MissingWitness, NotInvertible, NotTriangular, UnsupportedField
from app.k1.relations import ThreeByThree, three_by_three_sides
from app.k1.weak import CellSymbols
from app.models.triangulated import TriangulatedModel, ftr_model
from app.rings.fields import DualNumbers, Elem
from app.rings.linalg import det, square_class
from app.rings.matrix import Mat
from app.schemas.reports import CheckReport
from app.simplicial.builder import build_presentation, ob_key, simplex_key
from app.simplicial.interface import PresentationMode, RelationPolicy
from app.sqm.homotopy import extend_homotopy
from app.sqm.morphism import zero_morphism
from app.trifr.complexes import (
    Periodic3Complex,
    det3,
    extension,
    random_acyclic,
    random_iso,
    standard_triangle,
)
from app.trifr.octahedra import Octahedron, jordan_octahedra, octahedron_det_holds

logger = logging.getLogger(__name__)


def _same_class(k, a: Elem, b: Elem) -> bool:
    return square_class(k, k.div(a, b)) == k.one


# determinant properties ----------------------------------------------------------


def det3_invariance_check(R: DualNumbers, count: int = 300, seed: Optional[int] = None,
                          max_rank: int = 3) -> CheckReport:
    """det3 is unchanged by isomorphisms of complexes and by rotation."""
    rng = np.random.default_rng(settings.seed if seed is None else seed)
    report = CheckReport(name=f"det3 invariance over {R.descriptor}")
    for _ in range(count):
        d = int(rng.integers(0, max_rank + 1))
        pieces = [int(x) for x in rng.integers(0, 3, size=int(rng.integers(0, 3)))]
        T = random_acyclic(R, rng, d=d, pieces=pieces)
        a, b, c = (random_iso(R, n, rng) for n in T.ranks)
        value = det3(T)
        report.record(det3(T.transport(a, b, c)) == value, "isomorphism", "det3 changed under an isomorphism", str(T))
        report.record(det3(T.shift()) == value, "shift", "det3 changed under rotation", str(T))
    return report


def extension_det_check(R: DualNumbers, count: int = 200, seed: Optional[int] = None,
                        max_rank: int = 2) -> CheckReport:
    """det(T) = det(T') det(T'') mod squares for levelwise split extensions T' >-> T ->> T''."""
    rng = np.random.default_rng(settings.seed if seed is None else seed)
    k = R.base
    report = CheckReport(name=f"determinants of extensions over {R.descriptor}")
    for _ in range(count):
        T1 = random_acyclic(R, rng, d=int(rng.integers(0, max_rank + 1)), pieces=[int(rng.integers(0, 3))])
        T2 = random_acyclic(R, rng, d=int(rng.integers(0, max_rank + 1)))
        T = extension(T1, T2, rng)
        ok = _same_class(k, det3(T), k.mul(det3(T1), det3(T2)))
        report.record(ok, "extension", "det3 not multiplicative mod squares", str(T))
    return report


def octahedron_det_check(model: TriangulatedModel, limit: Optional[int] = None) -> CheckReport:
    """det(T_g) det(T_f) = det(T_gf) det(T_C) mod squares on every octahedron of the model."""
    report = CheckReport(name=f"octahedron determinants in {model.name}")
    for n, O in enumerate(model.three_simplices()):
        if limit is not None and n >= limit:
            break
        report.record(octahedron_det_holds(O), "octahedron", "determinant identity fails", str(O))
    return report


# Jordan peeling -------------------------------------------------------------------


@dataclass(frozen=True)
class JordanStep:
    """T_a >-> T_A ->> T_A' for the first diagonal entry a of an upper-triangular A."""

    sub: Periodic3Complex
    whole: Periodic3Complex
    quotient: Periodic3Complex
    inclusion: Mat
    projection: Mat
    octahedra: Tuple[Octahedron, ...] = ()

    def checks(self) -> List[Tuple[bool, str]]:
        j, r = self.inclusion, self.projection
        out = []
        for n in range(3):
            out.append((self.whole.d(n) @ j == j @ self.sub.d(n), f"inclusion commutes with d{n}"))
            out.append((self.quotient.d(n) @ r == r @ self.whole.d(n), f"projection commutes with d{n}"))
        out.append(((r @ j).is_zero(), "projection kills the inclusion"))
        out.append((j.rows == j.cols + r.rows, "ranks add up"))
        for n, O in enumerate(self.octahedra, start=1):
            out.append((O.is_virtual(), f"theta{n} is a virtual octahedron"))
        return out


@dataclass
class JordanSplit:
    diagonal: List[Elem]
    steps: List[JordanStep] = field(default_factory=list)
    triangle: Optional[Periodic3Complex] = None

    def report(self) -> CheckReport:
        report = CheckReport(name="jordan split")
        for n, step in enumerate(self.steps):
            for ok, what in step.checks():
                report.record(ok, "3x3", what, n)
        if self.triangle is not None:
            k = self.triangle.ring.base
            product = k.one
            for a in self.diagonal:
                product = k.mul(product, a)
            report.record(_same_class(k, det3(self.triangle), product), "det3", "det3 is not the product of the diagonal")
        return report


def jordan_split(A: Mat) -> JordanSplit:
    """Peel R -eps-> R -eps-> R -eps a-> R off R^n -eps-> R^n -eps-> R^n -eps A-> R^n, one diagonal entry at a time."""
    R = A.ring
    if not isinstance(R, DualNumbers):
        raise UnsupportedField(f"{R.descriptor} is not a ring of dual numbers")
    if not A.is_upper_triangular():
        raise NotTriangular("matrix is not upper triangular", witness=A.to_json())
    if not A.is_square or not R.is_unit(det(A)):
        raise NotInvertible("matrix is not invertible", witness=A.to_json())
    k = R.base
    out = JordanSplit(diagonal=[R.residue(A[i, i]) for i in range(A.rows)],
                      triangle=standard_triangle(R, A))
    current = A
    while current.rows > 1:
        m = current.rows
        head = current.submatrix(range(1), range(1))
        rest = current.submatrix(range(1, m), range(1, m))
        j = Mat.from_columns(R, [tuple(R.one if i == 0 else R.zero for i in range(m))], m)
        r = Mat.zero(R, m - 1, 1).hstack(Mat.identity(R, m - 1))
        out.steps.append(JordanStep(
            sub=standard_triangle(R, head),
            whole=standard_triangle(R, current),
            quotient=standard_triangle(R, rest),
            inclusion=j,
            projection=r,
            octahedra=jordan_octahedra(current),
        ))
        current = rest
    logger.debug(f"jordan split of a rank-{A.rows} matrix over {k.descriptor}: {len(out.steps)} steps")
    return out


def jordan_class_check(A: Mat, model: Optional[TriangulatedModel] = None) -> CheckReport:
    """[T_A] = sum_i [T_{a_ii}] in pi1 of the plus presentation, one peeling step at a time.

    Each step is a 3x3 diagram of virtual octahedra; the cycle it leaves must
    have zero class. The default model is the virtual one of rank n holding
    exactly these octahedra as witnesses. MissingWitness if the model lacks one.
    """
    split = jordan_split(A)
    R = A.ring
    if model is None:
        witnesses = [O for step in split.steps for O in step.octahedra]
        model = ftr_model(R.base.descriptor, A.rows, "v", witnesses=witnesses, sample_count=0)
    available = set(model.three_simplices())
    for n, step in enumerate(split.steps):
        if not all(O in available for O in step.octahedra):
            raise MissingWitness(f"{model.name}: the octahedra of peeling step {n} are not 3-simplices",
                                 witness=n)
    P = build_presentation(model, PresentationMode.PLUS)
    cells = CellSymbols(model, P)
    zero = P.pi1().zero()
    report = CheckReport(name=f"jordan classes in {model.name}")
    for n, step in enumerate(split.steps):
        lhs, rhs = three_by_three_sides(cells, ThreeByThree(step.octahedra))
        z = rhs - lhs
        if not P.is_cycle(z):
            report.record(False, "cycle", "the peeling step does not close up in C0", n)
            continue
        report.record(P.class_in_pi1(z) == zero, "pi1", "the peeling step has a nonzero class", n)
    report.notes.update({
        "model": model.name,
        "diagonal": [R.base.format(a) for a in split.diagonal],
        "sampled": bool(model.sampled),
    })
    logger.info(f"jordan classes of a rank-{A.rows} matrix: {len(report.failures)} of {report.checked} checks fail")
    return report


# contraction ------------------------------------------------------------------------


def contraction_check(kdesc: str, N: int, relations: RelationPolicy = RelationPolicy.GENERATORS,
                      model: Optional[TriangulatedModel] = None) -> CheckReport:
    """Extend alpha[X] = [X -eps-> X -eps-> X -eps-> X] from the zero morphism and compare with the identity."""
    cat = model if model is not None else ftr_model(kdesc, N, "d")
    P = build_presentation(cat, PresentationMode.PLUS, relations)
    table = P.meta["table"]
    S, index = P.simplify()
    R = cat.ring
    basis: List[Nil2Word] = [Nil2Word() for _ in range(S.k)]
    for X in cat.objects():
        new = index[table.lookup(ob_key(X)).index]
        if new is not None:
            T = standard_triangle(R, Mat.identity(R, X))
            basis[new] = Nil2Word.gen(table.lookup(simplex_key(T)).index)
    f, _ = extend_homotopy(zero_morphism(S, S), basis)
    report = CheckReport(name=f"contraction of {cat.name}")
    for a in range(S.k):
        report.record(S.equal0(f.on_deg0[a], Nil2Word.gen(a)), "degree 0", "alpha does not contract", S.e0[a])
    for i in range(S.m):
        report.record(S.equal1(f.on_deg1[i], Nil2Word.gen(i)), "degree 1", "alpha does not contract", S.e1[i])
    report.notes.update({
        "model": cat.name,
        "truncated": bool(P.truncated or cat.truncated),
        "sampled": bool(cat.sampled),
        "generators": {"E0": S.k, "E1": S.m},
    })
    logger.info(f"contraction of {cat.name}: {len(report.failures)} of {report.checked} checks fail")
    return report

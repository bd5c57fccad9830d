"""The stable quadratic module Z (x) Z -> R^x -0-> Z of a finite commutative ring.

One degree-0 generator x, one degree-1 generator per generator of the unit
group, zero boundary and <x, x> = [-1]. For a finite field this is the field
model with pi0 = Z, pi1 = k^x and eta(1) = [-1]. The Deligne determinant of
free modules takes values in it.
"""

import logging
from dataclasses import dataclass
from typing import Union

from app.algebra.abelian import AbGroup
from app.algebra.nil2 import Nil2Word, free_structure
from app.exceptions import UnsupportedField
from app.models.free_modules import FreeModuleModel, SesCell, vect_model
from app.rings.fields import Elem, F2RationalFunctions, Ring, ring_from_descriptor
from app.rings.linalg import det, is_square, right_inverse, square_class
from app.rings.matrix import Mat
from app.simplicial.det import DetFunctorData
from app.sqm.presentation import SqmPresentation

logger = logging.getLogger(__name__)


def unit_word(P: SqmPresentation, ring: Ring, u: Elem) -> Nil2Word:
    """The degree-1 element of a units model representing u."""
    out = Nil2Word()
    s1 = P.structure1
    for i, e in enumerate(ring.unit_log(u)):
        if e:
            out = s1.mul(out, Nil2Word.gen(i, e))
    return out


def units_model_sqm(ring: Ring) -> SqmPresentation:
    gens = ring.unit_generators()
    orders = ring.unit_orders()
    e1 = [f"[{ring.format(g)}]" for g in gens]
    relators = [Nil2Word.gen(i, n) for i, n in enumerate(orders)]
    P = SqmPresentation(["x"], e1, [Nil2Word() for _ in gens], name=f"units({ring.descriptor})")
    minus_one = unit_word(P, ring, ring.neg(ring.one))
    twist = P.structure1.mul(Nil2Word.central({(0, 0): 1}), P.structure1.inv(minus_one))
    relators.append(twist)
    out = SqmPresentation(
        ["x"], e1, [Nil2Word() for _ in gens], r1=relators,
        name=f"units({ring.descriptor})", meta={"ring": ring},
    )
    logger.info(f"{out.name}: unit group orders {orders}")
    return out


@dataclass
class FieldUnitsOracle:
    """k^x for an infinite field, exposed through equality and square tests."""

    field: Ring

    def pi0(self) -> AbGroup:
        return AbGroup(1)

    def equal(self, a: Elem, b: Elem) -> bool:
        return a == b

    def is_square(self, a: Elem) -> bool:
        return is_square(self.field, a)[0]

    def mod_squares(self, a: Elem) -> Elem:
        return square_class(self.field, a)

    def eta(self, n: int) -> Elem:
        """eta(n) = (-1)^n"""
        return self.field.power(self.field.neg(self.field.one), n % 2)

    def __str__(self) -> str:
        return f"{self.field.descriptor}^x"


def field_model_sqm(kdesc: str) -> Union[SqmPresentation, FieldUnitsOracle]:
    """The field model of K-theory in degrees 0 and 1.

    A finite field gives the presentation Z in degree 0 over its unit group in
    degree 1. F2(t) has no finite presentation and gives a FieldUnitsOracle.
    """
    k = ring_from_descriptor(kdesc)
    if isinstance(k, F2RationalFunctions):
        return FieldUnitsOracle(k)
    if not k.is_field:
        raise UnsupportedField(f"{kdesc} is not a field")
    return units_model_sqm(k)


def determinant_data(model: FreeModuleModel) -> DetFunctorData:
    """det: R^n -> n x, g -> [det g], (j, r) -> [det(j | s)] for any section s of r."""
    ring = model.ring
    target = units_model_sqm(ring)

    def on_object(n: int) -> Nil2Word:
        return free_structure(1).power(Nil2Word.gen(0), n)

    def on_we(g: Mat) -> Nil2Word:
        return unit_word(target, ring, det(g))

    def on_simplex(D: SesCell) -> Nil2Word:
        return unit_word(target, ring, ses_determinant(D))

    return DetFunctorData(target, on_object, on_we, on_simplex, name=f"deligne({ring.descriptor})")


def ses_determinant(D: SesCell, section: Mat = None) -> Elem:
    s = section if section is not None else right_inverse(D.r)
    return det(D.j.hstack(s))


def deligne_det_data(q: int, N: int) -> DetFunctorData:
    """The Deligne determinant on Vect(F_q) in dimensions <= N."""
    return determinant_data(vect_model(q, N))

"""The strict Picard groupoid of a stable quadratic module.

Objects are elements of C0. A morphism (c0, c1) goes from c0 + d c1 to c0;
composition adds the degree-1 parts, the tensor product is
(c0, c1) + (d0, d1) = (c0 + d0, c1^{d0} + d1) and the braiding at (x, y) is
(y + x, <y, x>).
"""

from dataclasses import dataclass

from app.algebra.nil2 import Nil2Word, free_structure
from app.schemas.reports import CheckReport
from app.sqm.presentation import SqmPresentation


@dataclass(frozen=True)
class PicardArrow:
    target: Nil2Word
    twist: Nil2Word


class StrictPicardGroupoid:
    """Lazy groupoid over the normal forms of a presentation."""

    def __init__(self, presentation: SqmPresentation):
        self.P = presentation
        self.f0 = free_structure(presentation.k)
        self.s1 = presentation.structure1

    def source(self, a: PicardArrow) -> Nil2Word:
        return self.f0.mul(a.target, self.P.d(a.twist))

    def identity(self, x: Nil2Word) -> PicardArrow:
        return PicardArrow(x, Nil2Word())

    def arrow(self, c0: Nil2Word, c1: Nil2Word) -> PicardArrow:
        return PicardArrow(c0, c1)

    def composable(self, after: PicardArrow, before: PicardArrow) -> bool:
        return self.P.equal0(self.source(after), before.target)

    def compose(self, after: PicardArrow, before: PicardArrow) -> PicardArrow:
        """after . before, for before: x -> y and after: y -> z."""
        if not self.composable(after, before):
            raise ValueError("arrows are not composable")
        return PicardArrow(after.target, self.s1.mul(after.twist, before.twist))

    def inverse(self, a: PicardArrow) -> PicardArrow:
        return PicardArrow(self.source(a), self.s1.inv(a.twist))

    def tensor(self, a: PicardArrow, b: PicardArrow) -> PicardArrow:
        return PicardArrow(self.f0.mul(a.target, b.target),
                           self.s1.mul(self.P.act(a.twist, b.target), b.twist))

    def tensor_objects(self, x: Nil2Word, y: Nil2Word) -> Nil2Word:
        return self.f0.mul(x, y)

    def braiding(self, x: Nil2Word, y: Nil2Word) -> PicardArrow:
        """x + y -> y + x"""
        return PicardArrow(self.f0.mul(y, x), self.P.bracket(y, x))

    def equal(self, a: PicardArrow, b: PicardArrow) -> bool:
        return self.P.equal0(a.target, b.target) and self.P.equal1(a.twist, b.twist)

    def same_object(self, x: Nil2Word, y: Nil2Word) -> bool:
        return self.P.equal0(x, y)

    def hom_set_label(self, x: Nil2Word, y: Nil2Word) -> str:
        """Hom(x, y) is empty or a torsor under pi1."""
        if not self.P.pi0_class(x) == self.P.pi0_class(y):
            return "empty"
        return f"pi1-torsor ({self.P.pi1()})"


def strict_picard_from_sqm(P: SqmPresentation) -> StrictPicardGroupoid:
    return StrictPicardGroupoid(P)


def round_trip_check(G: StrictPicardGroupoid) -> CheckReport:
    """Recover the presentation from arrows into the unit object."""
    P = G.P
    report = CheckReport(name="picard round trip")
    zero = Nil2Word()
    for i in range(P.m):
        a = G.arrow(zero, Nil2Word.gen(i))
        report.record(P.equal0(G.source(a), P.boundaries[i]), "boundary", f"source of e{i}", i)
    for a in range(P.k):
        for b in range(P.k):
            x, y = Nil2Word.gen(a), Nil2Word.gen(b)
            c = G.braiding(y, x)
            report.record(P.equal1(c.twist, P.bracket(x, y)), "bracket", f"braiding at ({a},{b})", (a, b))
    return report

"""Cofibers of morphisms and the six-term exact sequence of homotopy groups."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence

from app.algebra.abelian import AbGroup, AbGroupHom
from app.algebra.nil2 import Nil2Word
from app.exceptions import InvalidHom
from app.schemas.reports import CheckReport
from app.sqm.morphism import SqMorphism, check_morphism
from app.sqm.presentation import C1Structure, Deg1Like, SqmPresentation

logger = logging.getLogger(__name__)


def _cone_word(s1: C1Structure, offset: int, w: Nil2Word) -> Nil2Word:
    out = Nil2Word()
    for x in sorted(w.ab):
        out = s1.mul(out, s1.power(Nil2Word.gen(offset + x), w.ab[x]))
    for (x, y), c in w.comm.items():
        out = s1.mul(out, s1.power(s1.comm(Nil2Word.gen(offset + x), Nil2Word.gen(offset + y)), c))
    return out


@dataclass
class Cofiber:
    """cof(f) with the inclusion i: D -> cof(f) and the cone homotopy alpha: i f => 0."""

    f: SqMorphism
    presentation: SqmPresentation
    inclusion: SqMorphism
    cone_offset: int

    def cone(self, x: int) -> Nil2Word:
        """Degree-1 generator cone_x for the degree-0 generator x of the source."""
        return Nil2Word.gen(self.cone_offset + x)

    def alpha(self, w: Nil2Word) -> Nil2Word:
        """Additive extension of x -> cone_x to words over the source E0."""
        return _cone_word(self.presentation.structure1, self.cone_offset, w)


def cofiber(f: SqMorphism, check: bool = True) -> Cofiber:
    """Degree 0 is D0; degree 1 is D1 pushed out along d: C1 -> C0."""
    C, D = f.source, f.target
    if check:
        report = check_morphism(f)
        if not report.passed:
            raise InvalidHom("cofiber of a map that is not a morphism", witness=report.summary())
    offset = D.m
    e1 = list(D.e1) + [f"cone({x})" for x in C.e0]
    boundaries = list(D.boundaries) + [f.on_deg0[x] for x in range(C.k)]
    tags = list(D.tags1) + ["cone"] * C.k
    s1 = C1Structure(D.k, [w.ab for w in boundaries])
    r1: List[Nil2Word] = list(D.r1)
    for i in range(C.m):
        r1.append(s1.mul(s1.inv(f.on_deg1[i]), _cone_word(s1, offset, C.boundaries[i])))
    for r in C.r0:
        r1.append(_cone_word(s1, offset, r))
    presentation = SqmPresentation(
        D.e0, e1, boundaries, D.r0, r1,
        name=f"cof({f.name})", truncated=C.truncated or D.truncated, tags1=tags,
    )
    inclusion = SqMorphism(
        D, presentation,
        [Nil2Word.gen(a) for a in range(D.k)],
        [Nil2Word.gen(i) for i in range(D.m)],
        name="i",
    )
    logger.info(f"cofiber of {f.name}: {presentation.counts()}")
    return Cofiber(f, presentation, inclusion, offset)


def factor_through_cofiber(cof: Cofiber, j: SqMorphism, beta: Sequence[Deg1Like]) -> SqMorphism:
    """The morphism l: cof(f) -> Q with l i = j and l alpha = beta.

    beta is a homotopy j f => 0 given on the degree-0 generators of the source of f.
    """
    C = cof.f.source
    Q = j.target
    if len(beta) != C.k:
        raise ValueError("beta must be given on every degree-0 generator of the source")
    on_deg1 = list(j.on_deg1) + [Q.to_c1(b) for b in beta]
    return SqMorphism(cof.presentation, Q, list(j.on_deg0), on_deg1, name="l")


@dataclass
class SixTerm:
    """pi1 C -> pi1 D -> pi1 cof -> pi0 C -> pi0 D -> pi0 cof -> 0"""

    groups: Dict[str, AbGroup]
    maps: Dict[str, AbGroupHom]
    exactness: Dict[str, bool] = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return all(self.exactness.values())

    def report(self) -> CheckReport:
        out = CheckReport(name="six-term")
        for spot, ok in self.exactness.items():
            out.record(ok, spot, f"not exact at {spot}")
        return out


def _exact_at(incoming: AbGroupHom, outgoing: AbGroupHom) -> bool:
    if not incoming.compose(outgoing).is_zero():
        return False
    return all(incoming.image_contains(v) for v in outgoing.kernel_generators())


def six_term(f: SqMorphism) -> SixTerm:
    cof = cofiber(f)
    C, D, E = f.source, f.target, cof.presentation
    i = cof.inclusion
    groups = {
        "pi1_C": C.pi1(), "pi1_D": D.pi1(), "pi1_cof": E.pi1(),
        "pi0_C": C.pi0(), "pi0_D": D.pi0(), "pi0_cof": E.pi0(),
    }
    # delta: cone_x -> [x], everything else -> 0
    delta_images = []
    p1 = groups["pi1_cof"]
    for n in range(p1.ncoords):
        z = E.kernel.section(p1.generator(n))
        ab = {x: z.ab.get(cof.cone_offset + x, 0) for x in range(C.k)}
        delta_images.append(C.pi0_class(Nil2Word(ab)))
    maps = {
        "pi1_f": f.induced_pi1(),
        "pi1_i": i.induced_pi1(),
        "delta": AbGroupHom(p1, groups["pi0_C"], delta_images),
        "pi0_f": f.induced_pi0(),
        "pi0_i": i.induced_pi0(),
    }
    zero_end = AbGroupHom(groups["pi0_cof"], AbGroup(0), [() for _ in range(groups["pi0_cof"].ncoords)])
    out = SixTerm(groups, maps)
    out.exactness = {
        "pi1_D": _exact_at(maps["pi1_f"], maps["pi1_i"]),
        "pi1_cof": _exact_at(maps["pi1_i"], maps["delta"]),
        "pi0_C": _exact_at(maps["delta"], maps["pi0_f"]),
        "pi0_D": _exact_at(maps["pi0_f"], maps["pi0_i"]),
        "pi0_cof": _exact_at(maps["pi0_i"], zero_end),
    }
    logger.info(f"six-term sequence for {f.name}: exact={out.exact}")
    return out

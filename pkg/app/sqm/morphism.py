"""Strict morphisms of presented stable quadratic modules."""

import logging
from typing import List, Optional, Sequence

import numpy as np

from app.algebra.abelian import AbGroupHom
from app.algebra.nil2 import Nil2Word, free_structure
from app.schemas.reports import CheckReport
from app.sqm.free import tensor
from app.sqm.presentation import Deg1Like, SqmPresentation, free_presentation

logger = logging.getLogger(__name__)


class SqMorphism:
    """Morphism P -> Q given on generators.

    on_deg0[a] is a word over Q's E0, on_deg1[i] a degree-1 element of Q. The
    tensor symbols go to brackets of the degree-0 images.
    """

    def __init__(self, source: SqmPresentation, target: SqmPresentation,
                 on_deg0: Sequence[Nil2Word], on_deg1: Sequence[Deg1Like], name: str = ""):
        if len(on_deg0) != source.k or len(on_deg1) != source.m:
            raise ValueError("morphism must be given on every generator")
        self.source = source
        self.target = target
        self.name = name
        for w in on_deg0:
            target._check0(w)
        self.on_deg0: List[Nil2Word] = list(on_deg0)
        self.on_deg1: List[Nil2Word] = [target.to_c1(x) for x in on_deg1]

    def apply0(self, w: Nil2Word) -> Nil2Word:
        f0 = free_structure(self.target.k)
        out = Nil2Word()
        for i in sorted(w.ab):
            out = f0.mul(out, f0.power(self.on_deg0[i], w.ab[i]))
        for (i, j), c in w.comm.items():
            out = f0.mul(out, f0.power(f0.comm(self.on_deg0[i], self.on_deg0[j]), c))
        return out

    def apply1(self, x: Deg1Like) -> Nil2Word:
        x = self.source.to_c1(x)
        s1 = self.target.structure1
        out = Nil2Word()
        for i in sorted(x.ab):
            out = s1.mul(out, s1.power(self.on_deg1[i], x.ab[i]))
        for (a, b), c in x.comm.items():
            t = tensor(self.on_deg0[a].ab, self.on_deg0[b].ab)
            if t:
                out = s1.mul(out, Nil2Word.central({key: c * v for key, v in t.items()}))
        return out

    def compose(self, after: "SqMorphism") -> "SqMorphism":
        """after . self"""
        return SqMorphism(
            self.source,
            after.target,
            [after.apply0(w) for w in self.on_deg0],
            [after.apply1(x) for x in self.on_deg1],
            name=f"{after.name}.{self.name}",
        )

    def induced_pi0(self) -> AbGroupHom:
        P, Q = self.source, self.target
        p0 = P.pi0()
        images = [Q.pi0_class(self.apply0(P.pi0_lift(p0.generator(j)))) for j in range(p0.ncoords)]
        return AbGroupHom(p0, Q.pi0(), images)

    def induced_pi1(self) -> AbGroupHom:
        P, Q = self.source, self.target
        p1 = P.pi1()
        images = [Q.class_in_pi1(self.apply1(P.kernel.section(p1.generator(j)))) for j in range(p1.ncoords)]
        return AbGroupHom(p1, Q.pi1(), images)

    def agrees_with(self, other: "SqMorphism") -> bool:
        """Equal on generators, compared in the target groups."""
        Q = self.target
        return all(Q.equal0(a, b) for a, b in zip(self.on_deg0, other.on_deg0)) and all(
            Q.equal1(a, b) for a, b in zip(self.on_deg1, other.on_deg1)
        )

    def __repr__(self) -> str:
        return f"SqMorphism({self.name!r}: {self.source.name!r} -> {self.target.name!r})"


def identity_morphism(P: SqmPresentation) -> SqMorphism:
    return SqMorphism(P, P, [Nil2Word.gen(a) for a in range(P.k)],
                      [Nil2Word.gen(i) for i in range(P.m)], name="id")


def zero_morphism(P: SqmPresentation, Q: SqmPresentation) -> SqMorphism:
    return SqMorphism(P, Q, [Nil2Word() for _ in range(P.k)], [Nil2Word() for _ in range(P.m)], name="0")


def check_morphism(f: SqMorphism, P: Optional[SqmPresentation] = None,
                   Q: Optional[SqmPresentation] = None) -> CheckReport:
    """Relators die, boundaries commute and brackets are preserved."""
    P = P or f.source
    Q = Q or f.target
    report = CheckReport(name=f"morphism {f.name}")
    for n, r in enumerate(P.r0):
        report.record(Q.c0.is_identity(f.apply0(r)), "R0", f"degree-0 relator {n} survives", n)
    for n, r in enumerate(P.r1):
        report.record(Q.c1.is_identity(f.apply1(r)), "R1", f"degree-1 relator {n} survives", n)
    for vec in P.c1.central_lattice():
        w = Nil2Word.central(P.structure1.central_from_vector(vec))
        report.record(Q.c1.is_identity(f.apply1(w)), "central", "central relation survives", w.comm)
    for i in range(P.m):
        ok = Q.c0.equal(Q.d(f.on_deg1[i]), f.apply0(P.boundaries[i]))
        report.record(ok, "boundary", f"d f(e{i}) != f(d e{i})", P.e1[i])
    for a in range(P.k):
        for b in range(a, P.k):
            lhs = f.apply1(P.bracket(Nil2Word.gen(a), Nil2Word.gen(b)))
            rhs = Q.bracket(f.on_deg0[a], f.on_deg0[b])
            report.record(Q.c1.equal(lhs, rhs), "bracket", f"<{a},{b}> not preserved", (a, b))
    if not report.passed:
        logger.warning(f"morphism check {f.name}: {len(report.failures)} failures")
    return report


def multiplication_morphism(n: int) -> SqMorphism:
    """x -> n x on the free stable quadratic module on one degree-0 generator."""
    P = free_presentation(["x"], name="Z")
    return SqMorphism(P, P, [Nil2Word.gen(0, n)], [], name=f"x{n}")


def _random_word(k: int, rng: np.random.Generator) -> Nil2Word:
    return Nil2Word({a: int(rng.integers(-2, 3)) for a in range(k)})


def random_free_morphism(rng: np.random.Generator, max_gens: int = 2) -> SqMorphism:
    """A morphism of free presentations: random boundaries and degree-0 images, degree 1 sent to fresh generators."""
    k0, k1 = (int(x) for x in rng.integers(1, max_gens + 1, size=2))
    m, extra = int(rng.integers(0, max_gens + 1)), int(rng.integers(0, 2))
    C = free_presentation([f"a{i}" for i in range(k0)], [f"u{i}" for i in range(m)],
                          [_random_word(k0, rng) for _ in range(m)], name="C")
    on0 = [_random_word(k1, rng) for _ in range(k0)]
    bare = SqMorphism(C, free_presentation([f"b{i}" for i in range(k1)]), on0, [Nil2Word() for _ in range(m)])
    boundaries = [bare.apply0(w) for w in C.boundaries] + [_random_word(k1, rng) for _ in range(extra)]
    D = free_presentation([f"b{i}" for i in range(k1)], [f"v{i}" for i in range(m + extra)], boundaries, name="D")
    return SqMorphism(C, D, on0, [Nil2Word.gen(i) for i in range(m)], name="random")

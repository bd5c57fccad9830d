"""Homotopies of stable quadratic module morphisms.

A homotopy alpha: f => g is a map C0 -> D1 with

    alpha(x + y) = alpha(x)^{g0(y)} + alpha(y),
    f0(x) = g0(x) + d alpha(x),
    f1(c) = g1(c) + alpha(d c).
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from app.algebra.nil2 import Nil2Word, free_structure
from app.exceptions import NotFree
from app.schemas.reports import CheckReport
from app.sqm.morphism import SqMorphism
from app.sqm.presentation import Deg1Like, SqmPresentation

logger = logging.getLogger(__name__)


def word_letters(w: Nil2Word) -> List[Tuple[int, int]]:
    """Spell a collected word as (generator, +-1) letters, left to right."""
    letters: List[Tuple[int, int]] = []
    for i in sorted(w.ab):
        e = w.ab[i]
        letters.extend([(i, 1 if e > 0 else -1)] * abs(e))
    for (i, j), c in sorted(w.comm.items()):
        a, b = (i, j) if c > 0 else (j, i)
        for _ in range(abs(c)):
            letters.extend([(a, -1), (b, -1), (a, 1), (b, 1)])
    return letters


class SqmHomotopy:
    """Derivation C0 -> D1 determined by its values on the degree-0 generators."""

    def __init__(self, g: SqMorphism, on_basis: Sequence[Deg1Like]):
        self.g = g
        self.source = g.source
        self.target = g.target
        if len(on_basis) != self.source.k:
            raise ValueError("homotopy must be given on every degree-0 generator")
        self.on_basis: List[Nil2Word] = [self.target.to_c1(x) for x in on_basis]

    def __call__(self, w: Nil2Word) -> Nil2Word:
        Q = self.target
        f0 = free_structure(Q.k)
        s1 = Q.structure1
        acc = Nil2Word()
        rest = Nil2Word()
        for i, sign in reversed(word_letters(w)):
            g_letter = self.g.on_deg0[i] if sign > 0 else f0.inv(self.g.on_deg0[i])
            if sign > 0:
                val = self.on_basis[i]
            else:
                val = s1.inv(Q.act(self.on_basis[i], f0.inv(self.g.on_deg0[i])))
            acc = s1.mul(Q.act(val, rest), acc)
            rest = f0.mul(g_letter, rest)
        return acc


def extend_homotopy(g: SqMorphism, basis_map: Sequence[Deg1Like]) -> Tuple[SqMorphism, SqmHomotopy]:
    """The unique morphism f = g + alpha with alpha given on the degree-0 basis."""
    P, Q = g.source, g.target
    if not P.is_free0():
        raise NotFree(f"{P.name or 'source'} has degree-0 relators")
    alpha = SqmHomotopy(g, basis_map)
    f0 = free_structure(Q.k)
    on_deg0 = [f0.mul(g.on_deg0[a], Q.d(alpha.on_basis[a])) for a in range(P.k)]
    on_deg1 = [Q.structure1.mul(g.on_deg1[i], alpha(P.boundaries[i])) for i in range(P.m)]
    f = SqMorphism(P, Q, on_deg0, on_deg1, name=f"{g.name}+alpha")
    logger.debug(f"extended homotopy over {P.k} degree-0 generators")
    return f, alpha


def random_word(k: int, rng: np.random.Generator, length: int = 4) -> Nil2Word:
    f0 = free_structure(k)
    out = Nil2Word()
    if not k:
        return out
    for _ in range(length):
        i = int(rng.integers(k))
        out = f0.mul(out, Nil2Word.gen(i, 1 if rng.random() < 0.5 else -1))
    return out


def verify_homotopy(alpha: SqmHomotopy, f: SqMorphism, samples: int = 100,
                    rng: Optional[np.random.Generator] = None) -> CheckReport:
    """The three homotopy equations on generators and on random products."""
    P, Q, g = alpha.source, alpha.target, alpha.g
    rng = rng if rng is not None else np.random.default_rng(0)
    f0 = free_structure(Q.k)
    report = CheckReport(name="homotopy")
    for a in range(P.k):
        x = Nil2Word.gen(a)
        ok = Q.c0.equal(f.apply0(x), f0.mul(g.apply0(x), Q.d(alpha(x))))
        report.record(ok, "degree-0", f"f0 != g0 + d alpha on {P.e0[a]}", a)
    for i in range(P.m):
        ok = Q.c1.equal(f.on_deg1[i], Q.structure1.mul(g.on_deg1[i], alpha(P.boundaries[i])))
        report.record(ok, "degree-1", f"f1 != g1 + alpha d on {P.e1[i]}", i)
    for _ in range(samples if P.k else 0):
        x = random_word(P.k, rng)
        y = random_word(P.k, rng)
        xy = free_structure(P.k).mul(x, y)
        lhs = alpha(xy)
        rhs = Q.structure1.mul(Q.act(alpha(x), g.apply0(y)), alpha(y))
        report.record(Q.c1.equal(lhs, rhs), "derivation", "alpha(x+y) law fails", (x.ab, y.ab))
        ok = Q.c0.equal(f.apply0(xy), f0.mul(g.apply0(xy), Q.d(alpha(xy))))
        report.record(ok, "degree-0 product", "f0 != g0 + d alpha on a product", xy.ab)
    return report

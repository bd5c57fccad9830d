"""Instances of the relation families, drawn from a model with a seeded generator."""

import itertools
import logging
from collections import defaultdict
from functools import partial
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np

from app.exceptions import MissingStructure, NotA3x3
from app.k1.relations import ThreeByThree, WeakThreeByThree, degenerate_3x3
from app.k1.weak import PairOfWeakTriangles, WeakTriangle
from app.models.free_modules import FreeModuleModel, S3Cell, is_exact
from app.rings.fields import Ring
from app.rings.linalg import inverse, is_split_mono
from app.rings.matrix import Mat
from app.simplicial.interface import Cell, SimpCatData

logger = logging.getLogger(__name__)


def _pairs_of_objects(cat: SimpCatData) -> Iterator[Tuple[Cell, Cell]]:
    objects = list(cat.objects())
    for X, Y in itertools.product(objects, repeat=2):
        if cat.coproduct1(X, Y) is not None:
            yield X, Y


def degenerate_grids(cat: SimpCatData) -> List[ThreeByThree]:
    out = []
    for X, Y in _pairs_of_objects(cat):
        grid = degenerate_3x3(cat, X, Y)
        if grid is not None:
            out.append(grid)
    return out


def find_3x3s(cat: SimpCatData, limit: int) -> List[ThreeByThree]:
    """3x3 diagrams with theta1, theta2 among the enumerated 3-simplices and theta3, theta4 = s2 d1 of them."""
    by_top: Dict[Cell, List[Cell]] = defaultdict(list)
    heads: List[Tuple[Cell, Cell, Cell]] = []
    split1 = {}
    split2 = {}
    for X, Y in _pairs_of_objects(cat):
        B = cat.coproduct2(cat.degeneracy1(X, 1), cat.degeneracy1(Y, 0))
        A = cat.coproduct2(cat.degeneracy1(X, 0), cat.degeneracy1(Y, 1))
        if A is not None and B is not None:
            split1[B] = (X, Y)
            split2[A] = (X, Y)
    for T in cat.three_simplices():
        d0 = cat.face3(T, 0)
        if d0 in split2:
            by_top[(cat.face3(T, 2), split2[d0])].append(T)
        if d0 in split1:
            heads.append((T, cat.face3(T, 2), split1[d0]))
    out: List[ThreeByThree] = []
    for T1, d2, xy in heads:
        for T2 in by_top.get((d2, xy), []):
            T3 = cat.degeneracy2(cat.face3(T1, 1), 2)
            T4 = cat.degeneracy2(cat.face3(T2, 1), 2)
            if T3 is None or T4 is None:
                continue
            grid = ThreeByThree((T1, T2, T3, T4))
            if not grid.mismatches(cat):
                out.append(grid)
                if len(out) >= limit:
                    return out
    logger.debug(f"{cat.name}: {len(out)} 3x3 diagrams from {len(heads)} candidate tops")
    return out


def _embedding(R: Ring, size: int, rows: Sequence[int]) -> Mat:
    """The matrix with a 1 at (rows[k], k)."""
    return Mat.from_rows(R, [[R.one if rows[k] == r else R.zero for k in range(len(rows))]
                             for r in range(size)], len(rows))


def _selection(R: Ring, size: int, rows: Sequence[int]) -> Mat:
    return _embedding(R, size, rows).T


def ses_grid(cat: FreeModuleModel, dims: Tuple[int, int, int, int], autos: Tuple[Mat, Mat, Mat, Mat]) -> ThreeByThree:
    """The 3x3 diagram of A' >-> A >-> W >-> B with W = A + B' and B' = A' + C'.

    dims are the ranks of A', A'', C' and E = B/W; autos act on A, B', W and B
    and move the diagram off the standard coordinates. W ↪ B must be a split
    injection and every face exact, else NotA3x3.
    """
    a1, a2, c1, e = dims
    A, Bp, W = a1 + a2, a1 + c1, a1 + a2 + c1
    n = W + e
    if min(dims) < 0 or n > cat.N:
        raise NotA3x3(f"{cat.name}: ranks {dims} leave the enumerated range", witness=list(dims))
    R = cat.ring
    alpha, beta, omega, gamma = autos
    ai, bi, wi, gi = (inverse(g) for g in autos)
    emb, sel = partial(_embedding, R), partial(_selection, R)
    outer = list(range(a1)) + list(range(A, W))

    i_a = alpha @ emb(A, range(a1))
    i_aw = omega @ emb(W, range(A)) @ ai
    i_b = beta @ emb(Bp, range(a1))
    i_bw = omega @ emb(W, outer) @ bi
    i_wb = gamma @ emb(n, range(W)) @ wi
    if not is_split_mono(i_wb):
        raise NotA3x3(f"{cat.name}: W -> B is not a cofibration", witness=str(i_wb))

    r_a = sel(A, range(a1, A)) @ ai
    r13 = sel(W, range(a1, W)) @ wi
    r_aw = sel(W, range(A, W)) @ wi
    r_b = sel(Bp, range(a1, Bp)) @ bi
    r_bw = sel(W, range(a1, A)) @ wi
    r_wb = sel(n, range(W, n)) @ gi
    thetas = (
        S3Cell(i_a, i_aw, r_a, r13, r_aw),
        S3Cell(i_b, i_bw, r_b, r13, r_bw),
        S3Cell(i_aw, i_wb, r_aw, sel(n, range(A, n)) @ gi, r_wb),
        S3Cell(i_bw, i_wb, r_bw, sel(n, list(range(a1, A)) + list(range(W, n))) @ gi, r_wb),
    )
    for T in thetas:
        for k in range(4):
            if not is_exact(T.face(k)):
                raise NotA3x3(f"{cat.name}: face {k} of {T} is not exact", witness=str(T))
    grid = ThreeByThree(thetas)
    grid.require(cat)
    return grid


def ses_grids(cat: SimpCatData, count: int, rng: np.random.Generator) -> List[ThreeByThree]:
    """3x3 diagrams from random flags A' >-> A >-> W >-> B with B/W nonzero.

    theta3 and theta4 are not degenerate, unlike those of find_3x3s.
    """
    if not isinstance(cat, FreeModuleModel):
        raise MissingStructure(f"{cat.name} has no short exact sequences of free modules")
    shapes = [d for d in itertools.product(range(cat.N + 1), repeat=4) if d[3] >= 1 and sum(d) <= cat.N]
    if not shapes:
        return []

    def draw(size: int) -> Mat:
        autos = cat.automorphisms(size)
        return autos[int(rng.integers(len(autos)))]

    out = []
    for _ in range(count):
        a1, a2, c1, e = shapes[int(rng.integers(len(shapes)))]
        autos = (draw(a1 + a2), draw(a1 + c1), draw(a1 + a2 + c1), draw(a1 + a2 + c1 + e))
        out.append(ses_grid(cat, (a1, a2, c1, e), autos))
    logger.debug(f"{cat.name}: {len(out)} 3x3 diagrams of short exact sequences")
    return out


def decorated_grids(cat: SimpCatData, count: int, rng: np.random.Generator) -> List[WeakThreeByThree]:
    """Degenerate 3x3 diagrams decorated by automorphisms g of Y and h of X on s1 Y and s1 X."""
    out: List[WeakThreeByThree] = []
    pairs = list(_pairs_of_objects(cat))
    if not pairs:
        return out
    zero = cat.zero()
    for _ in range(count):
        X, Y = pairs[int(rng.integers(len(pairs)))]
        grid = degenerate_3x3(cat, X, Y)
        if grid is None:
            continue
        gens_x, gens_y = cat.automorphism_generators(X), cat.automorphism_generators(Y)
        h = gens_x[int(rng.integers(len(gens_x)))] if gens_x else cat.identity(X)
        g = gens_y[int(rng.integers(len(gens_y)))] if gens_y else cat.identity(Y)
        w1 = cat.lift_iso(cat.degeneracy1(Y, 1), (cat.identity(zero), g, g))
        w2 = cat.lift_iso(cat.degeneracy1(X, 1), (cat.identity(zero), h, h))
        out.append(WeakThreeByThree(grid, w1, w2, cat.identity(zero), cat.identity(zero)))
    return out


def random_weak_triangle(cat: SimpCatData, simplices: Sequence[Cell], rng: np.random.Generator) -> WeakTriangle:
    D = simplices[int(rng.integers(len(simplices)))]
    C = cat.face2(D, 0)
    autos = cat.automorphism_generators(C) or [cat.identity(C)]
    return WeakTriangle(D, autos[int(rng.integers(len(autos)))])


def sum_instances(cat: SimpCatData, count: int, rng: np.random.Generator,
                  tries: int = 20) -> List[Tuple[WeakTriangle, WeakTriangle]]:
    """Pairs of weak triangles whose block sum stays in range."""
    simplices = list(cat.two_simplices())
    out = []
    for _ in range(count * tries):
        if len(out) >= count:
            break
        a = random_weak_triangle(cat, simplices, rng)
        b = random_weak_triangle(cat, simplices, rng)
        if cat.coproduct2(a.simplex, b.simplex) is not None and cat.coproduct_we(a.equivalence, b.equivalence) is not None:
            out.append((a, b))
    return out


def degenerate_sum_instances(cat: SimpCatData) -> List[Tuple[WeakTriangle, WeakTriangle]]:
    """Sums of degenerate weak triangles s_i X + s_j Y decorated by identities."""
    out = []
    for X, Y in _pairs_of_objects(cat):
        for i, j in itertools.product((0, 1), repeat=2):
            a, b = cat.degeneracy1(X, i), cat.degeneracy1(Y, j)
            out.append((WeakTriangle(a, cat.identity(cat.face2(a, 0))), WeakTriangle(b, cat.identity(cat.face2(b, 0)))))
    return out


def permutations_of(n: int) -> List[Tuple[int, ...]]:
    return list(itertools.permutations(range(n)))


def random_pairs(cat: SimpCatData, count: int, rng: np.random.Generator) -> List[PairOfWeakTriangles]:
    """Pairs of weak triangles on simplices sharing d1 and d2, with f1 = 1."""
    groups: Dict[Tuple[Cell, Cell], List[Cell]] = defaultdict(list)
    for D in cat.two_simplices():
        groups[(cat.face2(D, 1), cat.face2(D, 2))].append(D)
    keys = list(groups)
    out: List[PairOfWeakTriangles] = []
    if not keys:
        return out
    for _ in range(count):
        members = groups[keys[int(rng.integers(len(keys)))]]
        D1 = members[int(rng.integers(len(members)))]
        D2 = members[int(rng.integers(len(members)))]
        C1, C2 = cat.face2(D1, 0), cat.face2(D2, 0)
        if C1 != C2:
            continue
        autos = cat.automorphism_generators(C2) or [cat.identity(C2)]
        f2 = autos[int(rng.integers(len(autos)))]
        out.append(PairOfWeakTriangles(WeakTriangle(D1, cat.identity(C1)), WeakTriangle(D2, f2)))
    return out


def pick(items: Sequence, count: int, rng: np.random.Generator) -> List:
    if len(items) <= count:
        return list(items)
    return [items[int(i)] for i in sorted(rng.choice(len(items), size=count, replace=False))]


def automorphism_pair(cat: SimpCatData, u: Cell) -> PairOfWeakTriangles:
    """(s0 X, 1) against (s0 X, u) for an automorphism u of X; its class is [u]."""
    X = cat.we_source(u)
    D = cat.degeneracy1(X, 0)
    return PairOfWeakTriangles(WeakTriangle(D, cat.identity(X)), WeakTriangle(D, u))


def automorphism_pairs(cat: SimpCatData) -> List[PairOfWeakTriangles]:
    return [automorphism_pair(cat, u) for X in cat.objects() for u in cat.automorphism_generators(X)]

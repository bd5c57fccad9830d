"""The triangulated category of free k[eps]-modules with Sigma = 1, as a simplicial category.

Objects are ranks 0..N, weak equivalences invertible matrices over k[eps],
2-simplices distinguished (flavor "d") or virtual (flavor "v") triangles and
3-simplices special or virtual octahedra. Every level is exhaustive in rank
<= 1. Past rank 1 the cells come from constructive families (degeneracies,
block sums, suspension witnesses, cone completions, Jordan peeling diagrams
and random complexes) and the model is flagged sampled and truncated.
"""

import itertools
import logging
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from app.config import settings
from app.exceptions import EnumerationBudgetExceeded, SimplicialIdentityViolation, UnsupportedField
from app.rings.fields import DualNumbers, Ring, ring_from_descriptor
from app.rings.linalg import general_linear, gl_generators
from app.rings.matrix import Mat, block_permutation
from app.simplicial.interface import Equivalence2, SimpCatData
from app.trifr.complexes import (
    Periodic3Complex,
    is_acyclic,
    is_distinguished,
    random_acyclic,
    standard_triangle,
)
from app.trifr.octahedra import (
    Octahedron,
    completion_space,
    cone,
    degeneracy,
    gamma,
    jordan_octahedra,
    octahedral_completion,
    s0_object,
    s1_object,
    split_solution,
    suspension_witness,
)

logger = logging.getLogger(__name__)

FLAVORS = ("d", "v")


def _matrices(R: Ring, rows: int, cols: int) -> Iterator[Mat]:
    for entries in itertools.product(list(R.elements()), repeat=rows * cols):
        it = iter(entries)
        yield Mat.from_rows(R, [[next(it) for _ in range(cols)] for _ in range(rows)], cols)


def _random_upper_triangular(R: DualNumbers, n: int, rng: np.random.Generator) -> Mat:
    M = Mat.random(R, n, n, rng)
    rows = [[R.zero if r > c else M[r, c] for c in range(n)] for r in range(n)]
    for i in range(n):
        if not R.is_unit(rows[i][i]):
            rows[i][i] = R.add(rows[i][i], R.one)
    return Mat.from_rows(R, rows, n)


class TriangulatedModel(SimpCatData):
    we_are_isos = True
    free_monoid = True

    def __init__(self, ring: DualNumbers, N: int, flavor: str = "d",
                 max_cells: Optional[int] = None, seed: Optional[int] = None,
                 sample_count: Optional[int] = None,
                 witnesses: Sequence[Octahedron] = ()):
        if flavor not in FLAVORS:
            raise ValueError(f"flavor must be one of {FLAVORS}, got {flavor!r}")
        if N < 0:
            raise ValueError("maximal rank must be non-negative")
        self.ring = ring
        self.N = N
        self.flavor = flavor
        self.max_cells = max_cells if max_cells is not None else settings.max_cells
        self.seed = settings.seed if seed is None else seed
        self.sample_count = settings.sample_count if sample_count is None else sample_count
        self.sampled = self.truncated = N >= 2
        self.dropped_equivalences = 0
        self.witnesses = list(witnesses)
        self.name = f"F{flavor}({ring.descriptor}, {N})"

    def accepts(self, T: Periodic3Complex) -> bool:
        return is_distinguished(T) if self.flavor == "d" else is_acyclic(T)

    def fits(self, T: Periodic3Complex) -> bool:
        return max(T.ranks) <= self.N

    def require_octahedron(self, O: Octahedron) -> None:
        """Raise unless every face of O is a triangle of this flavor."""
        for n, T in enumerate(O.faces()):
            if not self.accepts(T):
                raise SimplicialIdentityViolation(
                    f"{self.name}: face {n} of an octahedron is not a triangle of flavor {self.flavor}", witness=str(T))

    def _budget(self, n: int, what: str) -> None:
        if n > self.max_cells:
            raise EnumerationBudgetExceeded(f"{self.name}: more than {self.max_cells} {what}", witness=n)

    # level 1 -------------------------------------------------------------------

    def zero(self) -> int:
        return 0

    def objects(self) -> Iterator[int]:
        return iter(range(self.N + 1))

    @cached_property
    def _gl(self) -> Dict[int, List[Mat]]:
        out: Dict[int, List[Mat]] = {}
        total = 0
        for n in range(self.N + 1):
            out[n] = []
            for g in general_linear(self.ring, n):
                out[n].append(g)
                total += 1
                self._budget(total, "invertible matrices")
        return out

    def weak_equivalences(self) -> Iterator[Mat]:
        for n in range(self.N + 1):
            yield from self._gl[n]

    def we_source(self, f: Mat) -> int:
        return f.cols

    def we_target(self, f: Mat) -> int:
        return f.rows

    def identity(self, X: int) -> Mat:
        return Mat.identity(self.ring, X)

    def compose(self, g: Mat, f: Mat) -> Mat:
        return g @ f

    def automorphism_generators(self, X: int) -> List[Mat]:
        return gl_generators(self.ring, X)

    def coproduct1(self, X: int, Y: int) -> Optional[int]:
        return X + Y if X + Y <= self.N else None

    def coproduct_we(self, f: Mat, g: Mat) -> Optional[Mat]:
        return f.block_sum(g) if f.rows + g.rows <= self.N else None

    def permutation_equivalence(self, objects: Sequence[int], sigma: Sequence[int]) -> Optional[Mat]:
        if sum(objects) > self.N:
            return None
        return block_permutation(self.ring, list(objects), sigma)

    # level 2 -------------------------------------------------------------------

    def _rank_one_triangles(self) -> Iterator[Periodic3Complex]:
        R = self.ring
        top = min(self.N, 1)
        for X, Y, Z in itertools.product(range(top + 1), repeat=3):
            for f in _matrices(R, Y, X):
                for i in _matrices(R, Z, Y):
                    for q in _matrices(R, X, Z):
                        T = Periodic3Complex(f, i, q)
                        if self.accepts(T):
                            yield T

    @cached_property
    def _cells(self) -> Tuple[List[Periodic3Complex], List[Octahedron]]:
        """Two- and three-simplices, built together so that every face of an octahedron is a triangle."""
        c2: List[Periodic3Complex] = []
        seen2: Set[Periodic3Complex] = set()
        c3: List[Octahedron] = []
        seen3: Set[Octahedron] = set()

        def add2(T: Periodic3Complex) -> bool:
            if not self.fits(T) or T in seen2:
                return T in seen2
            if not self.accepts(T):
                return False
            seen2.add(T)
            c2.append(T)
            self._budget(len(c2), "triangles")
            return True

        def add3(O: Octahedron) -> None:
            if O in seen3 or not all(self.fits(T) for T in O.faces()):
                return
            self.require_octahedron(O)
            for T in O.faces():
                if T not in seen2:
                    seen2.add(T)
                    c2.append(T)
            seen3.add(O)
            c3.append(O)
            self._budget(len(c3), "octahedra")

        for T in self._rank_one_triangles():
            add2(T)
        base = list(c2)
        for O in self._rank_one_octahedra(base):
            add3(O)
        base_octahedra = list(c3)
        for O in self.witnesses:
            add3(O)
        if self.N >= 2:
            self._sample(base, base_octahedra, add2, add3)
        for T in list(c2):
            for j in range(3):
                add3(degeneracy(T, j))
        logger.info(f"{self.name}: {len(c2)} triangles, {len(c3)} octahedra")
        return c2, c3

    def _sample(self, base: List[Periodic3Complex], base_octahedra: List[Octahedron], add2, add3) -> None:
        """Cells past rank 1 from constructive families and seeded random draws."""
        R, k = self.ring, self.ring.base
        rng = np.random.default_rng(self.seed)
        for n in range(self.N + 1):
            add2(s0_object(R, n))
            add2(s1_object(R, n))
            add2(gamma(R, n))
            add2(standard_triangle(R, Mat.identity(R, n)))
            if self.flavor == "v":
                for u in k.unit_generators():
                    rho = Mat.identity(R, n)
                    if n:
                        rho = Mat.diag(R, [R.lift(u)] + [R.one] * (n - 1))
                    add2(standard_triangle(R, rho))
        for S in base:
            for T in base:
                add2(S.block_sum(T))
        for T in base:
            if T.ranks[0] + T.ranks[2] <= self.N:
                theta = suspension_witness(T).theta
                if all(self.accepts(F) for F in theta.faces()):
                    add3(theta)
        pairs = [(a, b) for a in range(len(base_octahedra)) for b in range(len(base_octahedra))]
        if pairs:
            for idx in rng.choice(len(pairs), size=min(len(pairs), self.sample_count), replace=False):
                a, b = pairs[int(idx)]
                add3(base_octahedra[a].block_sum(base_octahedra[b]))
        for _ in range(self.sample_count):
            dims = [int(x) for x in rng.integers(0, self.N + 1, size=3)]
            f = Mat.random(R, dims[1], dims[0], rng)
            g = Mat.random(R, dims[2], dims[1], rng)
            O = self.complete(cone(f), cone(g), cone(g @ f), rng)
            if O is not None:
                add3(O)
        if self.flavor == "v":
            for n in range(2, self.N + 1):
                for O in jordan_octahedra(_random_upper_triangular(R, n, rng)):
                    add3(O)
        for _ in range(self.sample_count):
            d = int(rng.integers(0, self.N + 1))
            pieces = [int(x) for x in rng.integers(0, 3, size=int(rng.integers(0, 2)))]
            add2(random_acyclic(R, rng, d=d, pieces=pieces, distinguished=self.flavor == "d"))

    def complete(self, Tf: Periodic3Complex, Tg: Periodic3Complex, Tgf: Periodic3Complex,
                 rng: np.random.Generator, tries: int = 32) -> Optional[Octahedron]:
        if not all(self.fits(T) for T in (Tf, Tg, Tgf)):
            return None
        return octahedral_completion(Tf, Tg, Tgf, self.flavor, rng, tries)

    def _rank_one_octahedra(self, base: List[Periodic3Complex]) -> Iterator[Octahedron]:
        """Every octahedron whose triangles have rank <= 1."""
        k = self.ring.base
        scalars = list(k.elements())
        by_source: Dict[int, List[Periodic3Complex]] = {}
        for T in base:
            by_source.setdefault(T.ranks[0], []).append(T)
        for Tf in base:
            for Tg in by_source.get(Tf.ranks[1], []):
                gf = Tg.f @ Tf.f
                for Tgf in by_source.get(Tf.ranks[0], []):
                    if Tgf.f != gf:
                        continue
                    x, basis, shape = completion_space(Tf, Tg, Tgf)
                    if x is None:
                        continue
                    for coeffs in itertools.product(scalars, repeat=len(basis)):
                        v = list(x)
                        for c, b in zip(coeffs, basis):
                            v = [k.add(a, k.mul(c, y)) for a, y in zip(v, b)]
                        gbar, fbar = split_solution(self.ring, v, shape)
                        O = Octahedron(Tf, Tg, Tgf, gbar, fbar)
                        if self.fits(O.Tc) and O.accepts(self.flavor):
                            yield O

    def two_simplices(self) -> Iterator[Periodic3Complex]:
        return iter(self._cells[0])

    def face2(self, D: Periodic3Complex, i: int) -> int:
        return D.ranks[2 - i]

    def degeneracy1(self, X: int, i: int) -> Periodic3Complex:
        return s0_object(self.ring, X) if i == 0 else s1_object(self.ring, X)

    def transport(self, D: Periodic3Complex, c: Mat, b: Mat, a: Mat) -> Equivalence2:
        return Equivalence2(D, D.transport(a, b, c), (c, b, a))

    def two_simplex_equivalences(self, D: Periodic3Complex, exhaustive: bool = False) -> Iterator[Equivalence2]:
        X, Y, Z = D.ranks
        I = self.identity
        if exhaustive:
            candidates = (
                self.transport(D, c, b, a)
                for a in self._gl[X] for b in self._gl[Y] for c in self._gl[Z]
            )
        else:
            candidates = itertools.chain(
                (self.transport(D, I(Z), I(Y), s) for s in gl_generators(self.ring, X)),
                (self.transport(D, I(Z), s, I(X)) for s in gl_generators(self.ring, Y)),
                (self.transport(D, s, I(Y), I(X)) for s in gl_generators(self.ring, Z)),
            )
        known = set(self._cells[0])
        dropped = 0
        for E in candidates:
            if E.target in known:
                yield E
            else:
                dropped += 1
        if not dropped:
            return
        if not self.sampled:
            raise SimplicialIdentityViolation(
                f"{self.name}: {dropped} equivalences out of {D} end at triangles that were not enumerated",
                witness=str(D))
        self.dropped_equivalences += dropped
        logger.warning(f"{self.name}: dropped {dropped} equivalences out of {D}, their targets were not sampled")

    def lift_iso(self, D: Periodic3Complex, faces: Tuple[Mat, Mat, Mat]) -> Equivalence2:
        c, b, a = faces
        return self.transport(D, c, b, a)

    def coproduct2(self, D: Periodic3Complex, E: Periodic3Complex) -> Optional[Periodic3Complex]:
        S = D.block_sum(E)
        return S if self.fits(S) else None

    # level 3 -------------------------------------------------------------------

    def three_simplices(self) -> Iterator[Octahedron]:
        return iter(self._cells[1])

    def face3(self, T: Octahedron, i: int) -> Periodic3Complex:
        return T.face(i)

    def degeneracy2(self, D: Periodic3Complex, i: int) -> Octahedron:
        return degeneracy(D, i)

    # text ------------------------------------------------------------------------

    def label(self, cell) -> str:
        if isinstance(cell, int):
            return f"R^{cell}"
        return str(cell)

    def cell_counts(self) -> Dict[str, int]:
        c2, c3 = self._cells
        return {
            "objects": self.N + 1,
            "weak_equivalences": sum(len(v) for v in self._gl.values()),
            "two_simplices": len(c2),
            "three_simplices": len(c3),
        }


def ftr_model(kdesc: str, N: int, flavor: str = "d", **kwargs) -> TriangulatedModel:
    """Free k[eps]-modules of rank <= N with distinguished or virtual triangles, for a finite k of characteristic 2."""
    k = ring_from_descriptor(kdesc)
    if isinstance(k, DualNumbers):
        k = k.base
    if not k.is_field or k.order is None:
        raise UnsupportedField(f"{kdesc}: cell enumeration needs a finite field")
    if k.from_int(2) != k.zero:
        raise UnsupportedField(f"{kdesc}: Sigma = 1 needs characteristic 2")
    return TriangulatedModel(DualNumbers(k), N, flavor, **kwargs)

"""Skeletal exact categories of free modules of rank <= N over a finite local ring.

Objects are ranks 0..N, weak equivalences invertible matrices, 2-simplices
split short exact sequences A >-j-> B -r->> C, and 3-simplices flags
A1 >-> A2 >-> A3 together with the canonical quotient of each of the three
inclusions. Over a field this is Vect(F_q); over k[eps] the admissible monos
are the split injections.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from app.config import settings
from app.exceptions import EnumerationBudgetExceeded, UnsupportedField
from app.rings.fields import DualNumbers, PrimeField, Ring, field_of_order, ring_from_descriptor
from app.rings.linalg import (
    general_linear,
    gl_generators,
    inverse,
    is_split_epi,
    is_split_mono,
    local_normal_form,
    right_inverse,
)
from app.rings.matrix import Mat, block_permutation
from app.simplicial.interface import Cell, Equivalence2, SimpCatData

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SesCell:
    """A >-j-> B -r->> C with im j = ker r."""

    j: Mat
    r: Mat

    @property
    def dims(self) -> Tuple[int, int, int]:
        return (self.j.cols, self.j.rows, self.r.rows)

    def __str__(self) -> str:
        a, b, c = self.dims
        return f"ses{a}{b}{c}({self.j}|{self.r})"


@dataclass(frozen=True)
class S3Cell:
    """A1 >-i-> A2 >-i2-> A3 with quotients r12 of i, r13 of i2 i and r23 of i2."""

    i: Mat
    i2: Mat
    r12: Mat
    r13: Mat
    r23: Mat

    def face(self, n: int) -> SesCell:
        if n == 3:
            return SesCell(self.i, self.r12)
        if n == 2:
            return SesCell(self.i2 @ self.i, self.r13)
        if n == 1:
            return SesCell(self.i2, self.r23)
        if n == 0:
            # A2/A1 >-> A3/A1 ->> A3/A2, independent of the chosen sections
            j0 = self.r13 @ self.i2 @ right_inverse(self.r12)
            r0 = self.r23 @ right_inverse(self.r13)
            return SesCell(j0, r0)
        raise IndexError(f"3-simplices have faces 0..3, not {n}")

    def __str__(self) -> str:
        return f"s3({self.i}|{self.i2}|{self.r12}|{self.r13}|{self.r23})"


def canonical_quotient(j: Mat) -> Mat:
    """A split surjection r with ker r = im j."""
    P, _, _ = local_normal_form(j)
    R, b, a = j.ring, j.rows, j.cols
    select = Mat.from_rows(R, [[R.one if col == a + row else R.zero for col in range(b)]
                               for row in range(b - a)], b)
    return select @ P


def is_exact(ses: SesCell) -> bool:
    """r j = 0, j split injective, r split surjective and ranks add up."""
    a, b, c = ses.dims
    if ses.r.cols != b or a + c != b:
        return False
    return (ses.r @ ses.j).is_zero() and is_split_mono(ses.j) and is_split_epi(ses.r)


class FreeModuleModel(SimpCatData):
    we_are_isos = True
    free_monoid = True

    def __init__(self, ring: Ring, N: int, max_cells: Optional[int] = None):
        if ring.order is None:
            raise UnsupportedField(f"{ring.descriptor} is infinite; free-module models need a finite ring")
        if N < 0:
            raise ValueError("maximal rank must be non-negative")
        self.ring = ring
        self.N = N
        self.max_cells = max_cells if max_cells is not None else settings.max_cells
        self._canonical: Dict[Mat, Mat] = {}
        self._monos: Dict[Tuple[int, int], List[Mat]] = {}
        kind = "Vect" if ring.is_field else "Free"
        self.name = f"{kind}({ring.descriptor}, {N})"

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
        logger.info(f"{self.name}: {total} invertible matrices")
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

    def automorphisms(self, X: int) -> List[Mat]:
        return self._gl[X]

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

    def quotients(self, j: Mat) -> List[Mat]:
        """Every r with ker r = im j: the orbit of one quotient under GL."""
        r0 = self.quotient(j)
        return [g @ r0 for g in self._gl[r0.rows]]

    def monos(self, b: int, a: int) -> Iterator[Mat]:
        """Split injections R^a -> R^b, as the GL(b)-orbit of the standard one."""
        key = (b, a)
        if key not in self._monos:
            seen = set()
            std = Mat.from_rows(self.ring, [[self.ring.one if r == c else self.ring.zero for c in range(a)]
                                            for r in range(b)], a)
            out = []
            for g in self._gl[b]:
                j = g @ std
                if j not in seen:
                    seen.add(j)
                    out.append(j)
            self._monos[key] = out
        return iter(self._monos[key])

    @cached_property
    def _ses(self) -> List[SesCell]:
        out: List[SesCell] = []
        for b in range(self.N + 1):
            for a in range(b + 1):
                for j in self.monos(b, a):
                    for r in self.quotients(j):
                        out.append(SesCell(j, r))
                        self._budget(len(out), "short exact sequences")
        logger.info(f"{self.name}: {len(out)} short exact sequences")
        return out

    def two_simplices(self) -> Iterator[SesCell]:
        return iter(self._ses)

    def face2(self, D: SesCell, i: int) -> int:
        return D.dims[2 - i]

    def degeneracy1(self, X: int, i: int) -> SesCell:
        R = self.ring
        if i == 0:
            return SesCell(Mat.zero(R, X, 0), Mat.identity(R, X))
        return SesCell(Mat.identity(R, X), Mat.zero(R, 0, X))

    def transport(self, D: SesCell, gamma: Mat, beta: Mat, alpha: Mat) -> Equivalence2:
        """The equivalence with faces (gamma, beta, alpha) on (C, B, A)."""
        target = SesCell(beta @ D.j @ inverse(alpha), gamma @ D.r @ inverse(beta))
        return Equivalence2(D, target, (gamma, beta, alpha))

    def two_simplex_equivalences(self, D: SesCell, exhaustive: bool = False) -> Iterator[Equivalence2]:
        a, b, c = D.dims
        I = self.identity
        if exhaustive:
            for alpha in self._gl[a]:
                for beta in self._gl[b]:
                    for gamma in self._gl[c]:
                        yield self.transport(D, gamma, beta, alpha)
            return
        for s in gl_generators(self.ring, a):
            yield self.transport(D, I(c), I(b), s)
        for s in gl_generators(self.ring, b):
            yield self.transport(D, I(c), s, I(a))
        for s in gl_generators(self.ring, c):
            yield self.transport(D, s, I(b), I(a))

    def lift_iso(self, D: SesCell, faces: Tuple[Mat, Mat, Mat]) -> Equivalence2:
        gamma, beta, alpha = faces
        return self.transport(D, gamma, beta, alpha)

    def coproduct2(self, D: SesCell, E: SesCell) -> Optional[SesCell]:
        if D.dims[1] + E.dims[1] > self.N:
            return None
        return SesCell(D.j.block_sum(E.j), D.r.block_sum(E.r))

    # level 3 -------------------------------------------------------------------

    def quotient(self, j: Mat) -> Mat:
        """The canonical quotient of j, cached."""
        r = self._canonical.get(j)
        if r is None:
            r = self._canonical[j] = canonical_quotient(j)
        return r

    def three_simplices(self) -> Iterator[S3Cell]:
        """Flags A1 >-i-> A2 >-i2-> A3 with canonical quotients.

        A flag whose second mono is an identity carries every quotient of i,
        so automorphisms of cokernels reach the 3-simplex relations.
        """
        count = 0
        for n3 in range(self.N + 1):
            for n2 in range(n3 + 1):
                outer = list(self.monos(n3, n2))
                for n1 in range(n2 + 1):
                    for i in self.monos(n2, n1):
                        r12 = self.quotient(i)
                        for i2 in outer:
                            r13, r23 = self.quotient(i2 @ i), self.quotient(i2)
                            r12s = self.quotients(i) if i2.is_identity() else [r12]
                            for r in r12s:
                                count += 1
                                self._budget(count, "3-simplices")
                                yield S3Cell(i, i2, r, r13, r23)

    def face3(self, T: S3Cell, i: int) -> SesCell:
        return T.face(i)

    def degeneracy2(self, D: SesCell, i: int) -> S3Cell:
        R = self.ring
        a, b, c = D.dims
        if i == 0:
            return S3Cell(Mat.zero(R, a, 0), D.j, Mat.identity(R, a), Mat.identity(R, b), D.r)
        if i == 1:
            return S3Cell(Mat.identity(R, a), D.j, Mat.zero(R, 0, a), D.r, D.r)
        return S3Cell(D.j, Mat.identity(R, b), D.r, D.r, Mat.zero(R, 0, b))

    # text ------------------------------------------------------------------------

    def label(self, cell) -> str:
        if isinstance(cell, int):
            return f"R^{cell}"
        return str(cell)

    def cell_counts(self) -> Dict[str, int]:
        return {
            "objects": self.N + 1,
            "weak_equivalences": sum(len(v) for v in self._gl.values()),
            "two_simplices": len(self._ses),
        }


def vect_model(q: int, N: int, max_cells: Optional[int] = None) -> FreeModuleModel:
    """Vect(F_q) restricted to dimensions <= N."""
    return FreeModuleModel(field_of_order(q), N, max_cells)


def dualnum_model(base: str, N: int, max_cells: Optional[int] = None) -> FreeModuleModel:
    """Free k[eps]-modules of rank <= N over a finite field k."""
    k = ring_from_descriptor(base)
    if not k.is_field or k.order is None:
        raise UnsupportedField(f"dual numbers need a finite base field, got {base}")
    return FreeModuleModel(DualNumbers(k), N, max_cells)


def extension_of_scalars(source: FreeModuleModel, target: FreeModuleModel) -> Callable[[Cell], Cell]:
    """The cell map of - (x) target ring on free modules over a prime field."""
    R, S = source.ring, target.ring
    if not isinstance(R, PrimeField) or S.characteristic != R.characteristic:
        raise UnsupportedField(f"no scalar extension from {R.descriptor} to {S.descriptor}")
    if target.N < source.N:
        raise ValueError(f"{target.name} is smaller than {source.name}")

    def mat(M: Mat) -> Mat:
        return M.map(lambda x: S.from_int(int(x)), ring=S)

    def on_cell(cell: Cell) -> Cell:
        if isinstance(cell, int):
            return cell
        if isinstance(cell, Mat):
            return mat(cell)
        if isinstance(cell, SesCell):
            return SesCell(mat(cell.j), mat(cell.r))
        raise TypeError(f"not a cell of {source.name}: {cell!r}")

    return on_cell

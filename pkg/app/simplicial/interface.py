"""The 3-truncated simplicial category with weak equivalences a model must provide.

Cells are opaque hashable values. Level 0 is the single base point; level 1
holds objects and weak equivalences, level 2 the 2-simplices (cofiber
sequences or triangles) with their weak equivalences, level 3 the 3-simplices.
Enumerators are restartable generators without side effects.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Iterable, List, Optional, Sequence, Tuple

from app.exceptions import MissingStructure
from app.schemas.reports import CheckReport

logger = logging.getLogger(__name__)

Cell = Hashable


class PresentationMode(str, Enum):
    FULL = "full"
    REDUCED = "reduced"
    PLUS = "plus"


class RelationPolicy(str, Enum):
    GENERATORS = "generators"
    EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True)
class Equivalence2:
    """A weak equivalence of 2-simplices; faces[i] is its i-th face, a weak equivalence of level 1."""

    source: Cell
    target: Cell
    faces: Tuple[Cell, Cell, Cell]


class SimpCatData(ABC):
    name: str = "model"
    # every weak equivalence is an isomorphism and lift_iso is available
    we_are_isos: bool = False
    # coproducts are functorial and strictly associative on a free object monoid
    free_monoid: bool = False
    # some coproducts or cells fall outside the enumerated range
    truncated: bool = False
    # level 3 is sampled rather than exhaustive
    sampled: bool = False

    # level 1 -------------------------------------------------------------------

    @abstractmethod
    def zero(self) -> Cell:
        """The base point s0(*) seen as an object."""

    @abstractmethod
    def objects(self) -> Iterable[Cell]: ...

    @abstractmethod
    def weak_equivalences(self) -> Iterable[Cell]: ...

    @abstractmethod
    def we_source(self, f: Cell) -> Cell: ...

    @abstractmethod
    def we_target(self, f: Cell) -> Cell: ...

    @abstractmethod
    def identity(self, X: Cell) -> Cell: ...

    @abstractmethod
    def compose(self, g: Cell, f: Cell) -> Cell:
        """g after f."""

    def automorphism_generators(self, X: Cell) -> List[Cell]:
        """A generating set of the weak self-equivalences of X."""
        return [f for f in self.weak_equivalences() if self.we_source(f) == X and self.we_target(f) == X]

    def coproduct1(self, X: Cell, Y: Cell) -> Optional[Cell]:
        """X + Y, or None when it leaves the enumerated range."""
        return None

    def coproduct_we(self, f: Cell, g: Cell) -> Optional[Cell]:
        """f + g on weak equivalences, or None."""
        return None

    def permutation_equivalence(self, objects: Sequence[Cell], sigma: Sequence[int]) -> Optional[Cell]:
        """X_sigma(0) + ... + X_sigma(n-1) -> X_0 + ... + X_(n-1) permuting the summands, or None."""
        return None

    # level 2 -------------------------------------------------------------------

    @abstractmethod
    def two_simplices(self) -> Iterable[Cell]: ...

    @abstractmethod
    def face2(self, D: Cell, i: int) -> Cell: ...

    @abstractmethod
    def degeneracy1(self, X: Cell, i: int) -> Cell:
        """s0 X or s1 X."""

    @abstractmethod
    def two_simplex_equivalences(self, D: Cell, exhaustive: bool = False) -> Iterable[Equivalence2]:
        """Weak equivalences out of D: all of them, or enough to generate them."""

    def coproduct2(self, D: Cell, E: Cell) -> Optional[Cell]:
        return None

    def lift_iso(self, D: Cell, faces: Tuple[Cell, Cell, Cell]) -> Equivalence2:
        """An equivalence out of D whose faces are the given isomorphisms."""
        raise MissingStructure(f"{self.name} has no isomorphism lifting")

    # level 3 -------------------------------------------------------------------

    @abstractmethod
    def three_simplices(self) -> Iterable[Cell]: ...

    @abstractmethod
    def face3(self, T: Cell, i: int) -> Cell: ...

    def degeneracy2(self, D: Cell, i: int) -> Optional[Cell]:
        """s_i D for i = 0, 1, 2, when the model builds it."""
        return None

    # text ------------------------------------------------------------------------

    def label(self, cell: Cell) -> str:
        return str(cell)

    def base_degeneracy(self) -> Cell:
        """s0 s0 (*)"""
        return self.degeneracy1(self.zero(), 0)


def check_simplicial_identities(cat: SimpCatData, limit: Optional[int] = None) -> CheckReport:
    """Face and degeneracy identities on every enumerated cell (or the first `limit` per level)."""
    report = CheckReport(name=f"simplicial identities of {cat.name}")
    z = cat.zero()
    for n, X in enumerate(cat.objects()):
        if limit is not None and n >= limit:
            break
        s0, s1 = cat.degeneracy1(X, 0), cat.degeneracy1(X, 1)
        report.record(cat.face2(s0, 0) == X and cat.face2(s0, 1) == X, "d s0", "d0 s0 = d1 s0 = id", cat.label(X))
        report.record(cat.face2(s0, 2) == z, "d2 s0", "d2 s0 X = 0", cat.label(X))
        report.record(cat.face2(s1, 1) == X and cat.face2(s1, 2) == X, "d s1", "d1 s1 = d2 s1 = id", cat.label(X))
        report.record(cat.face2(s1, 0) == z, "d0 s1", "d0 s1 X = 0", cat.label(X))
    for n, f in enumerate(cat.weak_equivalences()):
        if limit is not None and n >= limit:
            break
        X = cat.we_source(f)
        report.record(cat.compose(cat.identity(cat.we_target(f)), f) == f
                      and cat.compose(f, cat.identity(X)) == f, "unit", "identity law", cat.label(f))
    for n, T in enumerate(cat.three_simplices()):
        if limit is not None and n >= limit:
            break
        faces = [cat.face3(T, i) for i in range(4)]
        for j in range(4):
            for i in range(j):
                ok = cat.face2(faces[j], i) == cat.face2(faces[i], j - 1)
                report.record(ok, "d d", f"d{i} d{j} = d{j - 1} d{i}", cat.label(T))
    for n, D in enumerate(cat.two_simplices()):
        if limit is not None and n >= limit:
            break
        faces = [cat.face2(D, i) for i in range(3)]
        for j in range(3):
            T = cat.degeneracy2(D, j)
            if T is None:
                continue
            for i in range(4):
                got = cat.face3(T, i)
                if i in (j, j + 1):
                    want = D
                elif i < j:
                    want = cat.degeneracy1(faces[i], j - 1)
                else:
                    want = cat.degeneracy1(faces[i - 1], j)
                report.record(got == want, "d s", f"d{i} s{j}", cat.label(D))
        for E in cat.two_simplex_equivalences(D, exhaustive=False):
            for i in range(3):
                f = E.faces[i]
                ok = cat.we_source(f) == cat.face2(E.source, i) and cat.we_target(f) == cat.face2(E.target, i)
                report.record(ok, "equivalence faces", f"face {i} of an equivalence", cat.label(D))
    if not report.passed:
        logger.warning(f"{cat.name}: {len(report.failures)} simplicial identity failures")
    return report

"""Finitely generated abelian groups in invariant-factor form."""

import itertools
import logging
from collections import defaultdict
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from app.algebra.integer import EchelonLattice, LatticeKernel, SparseVec, _Smith

logger = logging.getLogger(__name__)

Coords = Tuple[int, ...]
VecLike = Union[Mapping[int, int], Sequence[int]]


def _as_sparse(vec: VecLike) -> SparseVec:
    if isinstance(vec, Mapping):
        return {k: v for k, v in vec.items() if v}
    return {k: v for k, v in enumerate(vec) if v}


class AbGroup:
    """Cokernel of an integer relation matrix, with canonical coordinates.

    Presentation generators are 0..ngens-1. Canonical coordinates are one
    integer per invariant factor; a factor d > 0 means the coordinate lives in
    Z/d, a factor 0 means Z.
    """

    def __init__(self, ngens: int, relators: Sequence[VecLike] = ()):
        self.ngens = ngens
        rows = [_as_sparse(r) for r in relators]
        rows = [r for r in rows if r]
        self._steps: List[Tuple[int, SparseVec]] = []
        remaining = self._eliminate_units(rows)
        eliminated = {p for p, _ in self._steps}
        self._surviving = [c for c in range(ngens) if c not in eliminated]
        position = {c: i for i, c in enumerate(self._surviving)}
        reduced = EchelonLattice(len(self._surviving))
        for r in remaining:
            reduced.insert({position[c]: v for c, v in r.items()})
        dense = []
        for r in reduced.basis():
            row = [0] * len(self._surviving)
            for c, v in r.items():
                row[c] = v
            dense.append(row)
        red = _Smith(dense, ncols=len(self._surviving), track_u=False, track_v=True)
        diag = red.diagonal()
        factors_all = diag + [0] * (len(self._surviving) - len(diag))
        self._v = red.v
        self._v_inv = red.v_inv
        self._kept = [i for i, d in enumerate(factors_all) if d != 1]
        self.invariant_factors: List[int] = [factors_all[i] for i in self._kept]

    @staticmethod
    def _unit_entry(row: SparseVec) -> Optional[int]:
        for c, v in row.items():
            if v == 1 or v == -1:
                return c
        return None

    def _eliminate_units(self, rows: List[SparseVec]) -> List[SparseVec]:
        active: Dict[int, SparseVec] = dict(enumerate(rows))
        by_col: Dict[int, set] = defaultdict(set)
        for rid, row in active.items():
            for c in row:
                by_col[c].add(rid)
        progress = True
        while progress:
            progress = False
            for rid in sorted(active, key=lambda r: len(active[r])):
                row = active.get(rid)
                if row is None:
                    continue
                p = self._unit_entry(row)
                if p is None:
                    continue
                if row[p] == -1:
                    row = {c: -v for c, v in row.items()}
                del active[rid]
                for c in row:
                    by_col[c].discard(rid)
                for other in list(by_col[p]):
                    target = active[other]
                    coef = target[p]
                    before = set(target)
                    for c, v in row.items():
                        x = target.get(c, 0) - coef * v
                        if x:
                            target[c] = x
                        else:
                            target.pop(c, None)
                    after = set(target)
                    for c in before - after:
                        by_col[c].discard(other)
                    for c in after - before:
                        by_col[c].add(other)
                    if not target:
                        del active[other]
                self._steps.append((p, row))
                progress = True
        return list(active.values())

    # coordinates -----------------------------------------------------------

    def to_coords(self, vec: VecLike) -> Coords:
        """Canonical coordinates of a vector over the presentation generators."""
        v = _as_sparse(vec)
        for p, row in self._steps:
            c = v.get(p)
            if c:
                for k, a in row.items():
                    x = v.get(k, 0) - c * a
                    if x:
                        v[k] = x
                    else:
                        v.pop(k, None)
        n = len(self._surviving)
        s = [v.get(col, 0) for col in self._surviving]
        out = []
        for idx, d in zip(self._kept, self.invariant_factors):
            x = sum(s[i] * self._v[i][idx] for i in range(n) if s[i])
            out.append(x % d if d else x)
        return tuple(out)

    def from_coords(self, coords: Sequence[int]) -> SparseVec:
        """Representative vector over the presentation generators."""
        n = len(self._surviving)
        full = [0] * n
        for idx, x in zip(self._kept, coords):
            full[idx] = x
        out: SparseVec = {}
        for j in range(n):
            x = sum(full[i] * self._v_inv[i][j] for i in range(n) if full[i])
            if x:
                out[self._surviving[j]] = x
        return out

    def reduce(self, coords: Sequence[int]) -> Coords:
        return tuple(x % d if d else x for x, d in zip(coords, self.invariant_factors))

    # group structure -------------------------------------------------------

    @property
    def ncoords(self) -> int:
        return len(self.invariant_factors)

    def zero(self) -> Coords:
        return tuple(0 for _ in self.invariant_factors)

    def add(self, x: Sequence[int], y: Sequence[int]) -> Coords:
        return self.reduce([a + b for a, b in zip(x, y)])

    def scale(self, x: Sequence[int], n: int) -> Coords:
        return self.reduce([n * a for a in x])

    def neg(self, x: Sequence[int]) -> Coords:
        return self.scale(x, -1)

    def generator(self, i: int) -> Coords:
        return self.reduce([1 if j == i else 0 for j in range(self.ncoords)])

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    def order(self) -> Optional[int]:
        if not self.is_finite:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def elements(self) -> Iterator[Coords]:
        if not self.is_finite:
            raise ValueError("infinite group has no element list")
        return itertools.product(*[range(d) for d in self.invariant_factors])

    def is_isomorphic(self, other: "AbGroup") -> bool:
        return self.invariant_factors == other.invariant_factors

    def __str__(self) -> str:
        if self.is_trivial:
            return "0"
        return " + ".join("Z" if d == 0 else f"Z/{d}" for d in self.invariant_factors)

    def __repr__(self) -> str:
        return f"AbGroup({self.invariant_factors})"


def ab_from_relations(ngens: int, relators: Sequence[VecLike]) -> AbGroup:
    """Cokernel of the relator matrix in invariant-factor form."""
    return AbGroup(ngens, relators)


class AbGroupHom:
    """Homomorphism between AbGroups given on canonical generators."""

    def __init__(self, source: AbGroup, target: AbGroup, images: Sequence[Sequence[int]]):
        if len(images) != source.ncoords:
            raise ValueError("one image per source invariant factor required")
        self.source = source
        self.target = target
        self.images = [target.reduce(im) for im in images]

    def __call__(self, x: Sequence[int]) -> Coords:
        acc = [0] * self.target.ncoords
        for c, im in zip(x, self.images):
            if c:
                for j, v in enumerate(im):
                    acc[j] += c * v
        return self.target.reduce(acc)

    def is_well_defined(self) -> bool:
        return all(
            not any(self(self.source.scale(self.source.generator(i), d)))
            for i, d in enumerate(self.source.invariant_factors)
            if d
        )

    def _kernel_lattice(self) -> LatticeKernel:
        columns = [list(im) for im in self.images]
        if not columns:
            return LatticeKernel([], self.target.invariant_factors)
        return LatticeKernel(columns, self.target.invariant_factors)

    def kernel_generators(self) -> List[Coords]:
        """Lattice basis of ker, as source coordinates (not reduced)."""
        return [tuple(b) for b in self._kernel_lattice().basis]

    def kernel(self) -> AbGroup:
        lat = self._kernel_lattice()
        rels = []
        for i, d in enumerate(self.source.invariant_factors):
            if d:
                vec = [0] * self.source.ncoords
                vec[i] = d
                rels.append(lat.solve(vec))
        return AbGroup(lat.rank, rels)

    def cokernel(self) -> AbGroup:
        rels: List[List[int]] = [list(im) for im in self.images]
        for j, d in enumerate(self.target.invariant_factors):
            if d:
                vec = [0] * self.target.ncoords
                vec[j] = d
                rels.append(vec)
        return AbGroup(self.target.ncoords, rels)

    def image_contains(self, y: Sequence[int]) -> bool:
        coker = self.cokernel()
        return not any(coker.to_coords(list(y)))

    def is_injective(self) -> bool:
        return self.kernel().is_trivial

    def is_surjective(self) -> bool:
        return self.cokernel().is_trivial

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def compose(self, after: "AbGroupHom") -> "AbGroupHom":
        """after ∘ self"""
        return AbGroupHom(self.source, after.target, [after(im) for im in self.images])

    def is_zero(self) -> bool:
        return not any(any(im) for im in self.images)

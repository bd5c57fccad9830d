"""Dense matrices over a Ring, stored row-major as tuples of canonical elements."""

from dataclasses import dataclass
from typing import Callable, Iterable, List, Sequence, Tuple

import numpy as np

from app.rings.fields import Elem, Ring


@dataclass(frozen=True)
class Mat:
    ring: Ring
    rows: int
    cols: int
    entries: Tuple[Tuple[Elem, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entries do not match shape {self.rows}x{self.cols}")

    # construction ------------------------------------------------------------

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence[Elem]], cols: int = None) -> "Mat":
        rows = [tuple(r) for r in rows]
        ncols = len(rows[0]) if rows else (cols or 0)
        return cls(ring, len(rows), ncols, tuple(rows))

    @classmethod
    def from_ints(cls, ring: Ring, rows: Sequence[Sequence[int]]) -> "Mat":
        return cls.from_rows(ring, [[ring.from_int(x) for x in r] for r in rows])

    @classmethod
    def zero(cls, ring: Ring, rows: int, cols: int) -> "Mat":
        return cls(ring, rows, cols, tuple(tuple(ring.zero for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Mat":
        return cls.scalar(ring, n, ring.one)

    @classmethod
    def scalar(cls, ring: Ring, n: int, c: Elem) -> "Mat":
        return cls(ring, n, n, tuple(tuple(c if i == j else ring.zero for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, ring: Ring, values: Sequence[Elem]) -> "Mat":
        n = len(values)
        return cls(ring, n, n, tuple(tuple(values[i] if i == j else ring.zero for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, ring: Ring, columns: Sequence[Sequence[Elem]], rows: int) -> "Mat":
        return cls(ring, rows, len(columns), tuple(tuple(c[i] for c in columns) for i in range(rows)))

    @classmethod
    def elementary(cls, ring: Ring, n: int, i: int, j: int, c: Elem) -> "Mat":
        """Identity plus c in position (i, j), i != j."""
        rows = [list(r) for r in cls.identity(ring, n).entries]
        rows[i][j] = c
        return cls.from_rows(ring, rows, n)

    @classmethod
    def random(cls, ring: Ring, rows: int, cols: int, rng: np.random.Generator) -> "Mat":
        return cls(ring, rows, cols, tuple(tuple(ring.random(rng) for _ in range(cols)) for _ in range(rows)))

    # access ------------------------------------------------------------------

    def __getitem__(self, ij: Tuple[int, int]) -> Elem:
        return self.entries[ij[0]][ij[1]]

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def row(self, i: int) -> Tuple[Elem, ...]:
        return self.entries[i]

    def column(self, j: int) -> Tuple[Elem, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> List[Tuple[Elem, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Mat":
        rows, cols = list(rows), list(cols)
        return Mat(self.ring, len(rows), len(cols), tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def is_zero(self) -> bool:
        z = self.ring.zero
        return all(x == z for r in self.entries for x in r)

    def is_identity(self) -> bool:
        return self.is_square and self == Mat.identity(self.ring, self.rows)

    def is_upper_triangular(self) -> bool:
        z = self.ring.zero
        return all(self.entries[i][j] == z for i in range(self.rows) for j in range(min(i, self.cols)))

    # arithmetic ----------------------------------------------------------------

    def map(self, fn: Callable[[Elem], Elem], ring: Ring = None) -> "Mat":
        return Mat(ring or self.ring, self.rows, self.cols, tuple(tuple(fn(x) for x in r) for r in self.entries))

    def __add__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        R = self.ring
        return Mat(R, self.rows, self.cols,
                   tuple(tuple(R.add(a, b) for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> "Mat":
        return self.map(self.ring.neg)

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def scale(self, c: Elem) -> "Mat":
        return self.map(lambda x: self.ring.mul(c, x))

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        R = self.ring
        cols = other.columns()
        out = []
        for r in self.entries:
            out.append(tuple(R.sum([R.mul(a, b) for a, b in zip(r, c) if a != R.zero and b != R.zero])
                             for c in cols))
        return Mat(R, self.rows, other.cols, tuple(out))

    def apply(self, vec: Sequence[Elem]) -> Tuple[Elem, ...]:
        R = self.ring
        return tuple(R.sum([R.mul(a, b) for a, b in zip(r, vec)]) for r in self.entries)

    @property
    def T(self) -> "Mat":
        return Mat(self.ring, self.cols, self.rows, tuple(self.columns()))

    def _same_shape(self, other: "Mat") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    # assembly ------------------------------------------------------------------

    def hstack(self, other: "Mat") -> "Mat":
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        return Mat(self.ring, self.rows, self.cols + other.cols,
                   tuple(a + b for a, b in zip(self.entries, other.entries)))

    def vstack(self, other: "Mat") -> "Mat":
        if self.cols != other.cols:
            raise ValueError("vstack needs equal column counts")
        return Mat(self.ring, self.rows + other.rows, self.cols, self.entries + other.entries)

    def block_sum(self, other: "Mat") -> "Mat":
        """[[self, 0], [0, other]]"""
        R = self.ring
        top = self.hstack(Mat.zero(R, self.rows, other.cols))
        bottom = Mat.zero(R, other.rows, self.cols).hstack(other)
        return top.vstack(bottom)

    # text ------------------------------------------------------------------------

    def to_json(self) -> List[List[str]]:
        return [[self.ring.format(x) for x in r] for r in self.entries]

    @classmethod
    def from_json(cls, ring: Ring, data: Sequence[Sequence[str]], cols: int = 0) -> "Mat":
        return cls.from_rows(ring, [[ring.parse(str(x)) for x in r] for r in data], cols)

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(self.ring.format(x) for x in r) for r in self.entries) + "]"


def block_sum(*mats: Mat) -> Mat:
    out = mats[0]
    for m in mats[1:]:
        out = out.block_sum(m)
    return out


def block_permutation(ring: Ring, sizes: Sequence[int], sigma: Sequence[int]) -> Mat:
    """The isomorphism R^{n_sigma(0)} + ... -> R^{n_0} + ... sending block t to block sigma(t)."""
    offsets = [sum(sizes[:t]) for t in range(len(sizes))]
    total = sum(sizes)
    columns = []
    for t in range(len(sigma)):
        block = sigma[t]
        for c in range(sizes[block]):
            target = offsets[block] + c
            columns.append(tuple(ring.one if row == target else ring.zero for row in range(total)))
    return Mat.from_columns(ring, columns, total)

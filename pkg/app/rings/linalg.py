"""Exact linear algebra over fields and over the local ring of dual numbers."""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from sympy import Poly, symbols
from sympy.ntheory import sqrt_mod

from app.exceptions import NonSquare, NotInvertible, UnsupportedField, ZeroInput
from app.rings.fields import (
    BinaryField,
    DualNumbers,
    Elem,
    F2RationalFunctions,
    PrimeField,
    Ring,
    even_part_sqrt,
    pmul,
)
from app.rings.matrix import Mat

logger = logging.getLogger(__name__)

Vec = Tuple[Elem, ...]


def _require_field(R: Ring) -> None:
    if not R.is_field:
        raise UnsupportedField(f"{R.descriptor} is not a field")


# gaussian elimination over a field -------------------------------------------


def rref(M: Mat) -> Tuple[Mat, List[int]]:
    """Reduced row echelon form and pivot columns."""
    R = M.ring
    _require_field(R)
    rows = [list(r) for r in M.entries]
    pivots: List[int] = []
    t = 0
    for j in range(M.cols):
        p = next((i for i in range(t, M.rows) if rows[i][j] != R.zero), None)
        if p is None:
            continue
        rows[t], rows[p] = rows[p], rows[t]
        inv = R.inv(rows[t][j])
        rows[t] = [R.mul(inv, x) for x in rows[t]]
        for i in range(M.rows):
            if i != t and rows[i][j] != R.zero:
                c = rows[i][j]
                rows[i] = [R.sub(x, R.mul(c, y)) for x, y in zip(rows[i], rows[t])]
        pivots.append(j)
        t += 1
        if t == M.rows:
            break
    return Mat.from_rows(R, rows, M.cols), pivots


def rank(M: Mat) -> int:
    return len(rref(M)[1])


def kernel(M: Mat) -> List[Vec]:
    """Basis of {x : M x = 0}."""
    R = M.ring
    E, pivots = rref(M)
    free = [j for j in range(M.cols) if j not in pivots]
    basis = []
    for f in free:
        v = [R.zero] * M.cols
        v[f] = R.one
        for i, p in enumerate(pivots):
            v[p] = R.neg(E[i, f])
        basis.append(tuple(v))
    return basis


def image(M: Mat) -> List[Vec]:
    """Pivot columns of M, a basis of its column space."""
    return [M.column(j) for j in rref(M)[1]]


def det(M: Mat) -> Elem:
    if not M.is_square:
        raise NonSquare(f"determinant of a {M.rows}x{M.cols} matrix")
    R = M.ring
    rows = [list(r) for r in M.entries]
    n = M.rows
    out = R.one
    for j in range(n):
        p = next((i for i in range(j, n) if R.is_unit(rows[i][j])), None)
        if p is None:
            # no unit pivot left: expand the remaining block by cofactors
            return R.mul(out, _cofactor_det(R, [r[j:] for r in rows[j:]]))
        if p != j:
            rows[j], rows[p] = rows[p], rows[j]
            out = R.neg(out)
        piv = rows[j][j]
        out = R.mul(out, piv)
        inv = R.inv(piv)
        for i in range(j + 1, n):
            if rows[i][j] != R.zero:
                c = R.mul(rows[i][j], inv)
                rows[i] = [R.sub(x, R.mul(c, y)) for x, y in zip(rows[i], rows[j])]
    return out


def _cofactor_det(R: Ring, rows: List[List[Elem]]) -> Elem:
    n = len(rows)
    if n == 0:
        return R.one
    if n == 1:
        return rows[0][0]
    out = R.zero
    for j in range(n):
        if rows[0][j] == R.zero:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = R.mul(rows[0][j], _cofactor_det(R, minor))
        out = R.add(out, term if j % 2 == 0 else R.neg(term))
    return out


def inverse(M: Mat) -> Mat:
    """Gauss-Jordan with unit pivots; works over fields and local rings."""
    R = M.ring
    if not M.is_square:
        raise NonSquare(f"inverse of a {M.rows}x{M.cols} matrix")
    n = M.rows
    rows = [list(r) + list(e) for r, e in zip(M.entries, Mat.identity(R, n).entries)]
    for j in range(n):
        p = next((i for i in range(j, n) if R.is_unit(rows[i][j])), None)
        if p is None:
            raise NotInvertible(f"matrix is singular in column {j}", witness=M.to_json())
        rows[j], rows[p] = rows[p], rows[j]
        inv = R.inv(rows[j][j])
        rows[j] = [R.mul(inv, x) for x in rows[j]]
        for i in range(n):
            if i != j and rows[i][j] != R.zero:
                c = rows[i][j]
                rows[i] = [R.sub(x, R.mul(c, y)) for x, y in zip(rows[i], rows[j])]
    return Mat.from_rows(R, [r[n:] for r in rows], n)


def is_invertible(M: Mat) -> bool:
    return M.is_square and M.ring.is_unit(det(M))


def solve(A: Mat, b: Sequence[Elem]) -> Optional[Vec]:
    """One solution of A x = b over a field, or None."""
    R = A.ring
    aug = A.hstack(Mat.from_columns(R, [tuple(b)], A.rows))
    E, pivots = rref(aug)
    if A.cols in pivots:
        return None
    x = [R.zero] * A.cols
    for i, p in enumerate(pivots):
        x[p] = E[i, A.cols]
    return tuple(x)


def solve_matrix(A: Mat, B: Mat) -> Optional[Mat]:
    """X with A X = B over a field, or None."""
    cols = []
    for j in range(B.cols):
        x = solve(A, B.column(j))
        if x is None:
            return None
        cols.append(x)
    return Mat.from_columns(A.ring, cols, A.cols)


@dataclass
class FieldLinalg:
    kernel: List[Vec]
    image: List[Vec]
    rank: int
    det: Optional[Elem]


def field_linalg(M: Mat) -> FieldLinalg:
    """Kernel, image, rank and (square case) determinant in one call."""
    return FieldLinalg(
        kernel=kernel(M),
        image=image(M),
        rank=rank(M),
        det=det(M) if M.is_square else None,
    )


# dual numbers ------------------------------------------------------------------


def _dual(M: Mat) -> DualNumbers:
    if not isinstance(M.ring, DualNumbers):
        raise UnsupportedField(f"{M.ring.descriptor} is not a ring of dual numbers")
    return M.ring


def residue(M: Mat) -> Mat:
    """M mod the maximal ideal."""
    R = M.ring
    return M.map(R.residue, R.residue_field)


def epsilon_part(M: Mat) -> Mat:
    R = _dual(M)
    return M.map(R.epsilon_part, R.base)


def lift(M: Mat, R: Ring) -> Mat:
    return M.map(R.lift, R)


def from_parts(R: DualNumbers, A: Mat, B: Mat) -> Mat:
    """A + eps B for matrices over the residue field."""
    return Mat(R, A.rows, A.cols,
               tuple(tuple((a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A.entries, B.entries)))


def restrict_scalars(M: Mat) -> Mat:
    """The k-linear map on k^{2n} = R^n with coordinates (x, y) for x + eps y."""
    A, B = residue(M), epsilon_part(M)
    k = A.ring
    top = A.hstack(Mat.zero(k, A.rows, A.cols))
    bottom = B.hstack(A)
    return top.vstack(bottom)


def residue_rank(M: Mat) -> int:
    return rank(residue(M))


def local_normal_form(M: Mat) -> Tuple[Mat, Mat, Mat]:
    """P, D, Q with P M Q = D = diag(1, .., 1, eps, .., eps, 0, .., 0).

    Unit pivots are cleared first; the remaining block lies in eps * k and is
    reduced by field elimination on its eps-parts.
    """
    R = M.ring
    rows = [list(r) for r in M.entries]
    P = [list(r) for r in Mat.identity(R, M.rows).entries]
    Qc = [list(r) for r in Mat.identity(R, M.cols).entries]
    t = 0

    def swap_rows(i, j):
        rows[i], rows[j] = rows[j], rows[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for r in rows:
            r[i], r[j] = r[j], r[i]
        for r in Qc:
            r[i], r[j] = r[j], r[i]

    def scale_row(i, c):
        rows[i] = [R.mul(c, x) for x in rows[i]]
        P[i] = [R.mul(c, x) for x in P[i]]

    def row_addmul(i, src, c):
        # row_i -= c row_src
        rows[i] = [R.sub(x, R.mul(c, y)) for x, y in zip(rows[i], rows[src])]
        P[i] = [R.sub(x, R.mul(c, y)) for x, y in zip(P[i], P[src])]

    def col_addmul(j, src, c):
        # col_j -= c col_src
        for r in rows:
            r[j] = R.sub(r[j], R.mul(c, r[src]))
        for r in Qc:
            r[j] = R.sub(r[j], R.mul(c, r[src]))

    def clear(t):
        for i in range(M.rows):
            if i != t and rows[i][t] != R.zero:
                row_addmul(i, t, rows[i][t])
        for j in range(t + 1, M.cols):
            if rows[t][j] != R.zero:
                col_addmul(j, t, rows[t][j])

    def find(test):
        for i in range(t, M.rows):
            for j in range(t, M.cols):
                if test(rows[i][j]):
                    return i, j
        return None

    while t < min(M.rows, M.cols):
        hit = find(R.is_unit)
        if hit is None:
            break
        swap_rows(t, hit[0])
        swap_cols(t, hit[1])
        scale_row(t, R.inv(rows[t][t]))
        clear(t)
        t += 1

    if isinstance(R, DualNumbers):
        k = R.base
        while t < min(M.rows, M.cols):
            hit = find(lambda x: x != R.zero)
            if hit is None:
                break
            swap_rows(t, hit[0])
            swap_cols(t, hit[1])
            scale_row(t, R.lift(k.inv(R.epsilon_part(rows[t][t]))))
            # entries of the block are eps * b, so eliminating with lifted ratios is exact
            for i in range(M.rows):
                if i != t and rows[i][t] != R.zero:
                    row_addmul(i, t, R.lift(R.epsilon_part(rows[i][t])))
            for j in range(t + 1, M.cols):
                if rows[t][j] != R.zero:
                    col_addmul(j, t, R.lift(R.epsilon_part(rows[t][j])))
            t += 1

    D = Mat.from_rows(R, rows, M.cols)
    return Mat.from_rows(R, P, M.rows), D, Mat.from_rows(R, Qc, M.cols)


def local_ranks(D: Mat) -> Tuple[int, int]:
    """Numbers of unit and non-unit nonzero diagonal entries of a normal form."""
    R = D.ring
    diag = [D[i, i] for i in range(min(D.rows, D.cols))]
    units = sum(1 for x in diag if R.is_unit(x))
    eps = sum(1 for x in diag if x != R.zero and not R.is_unit(x))
    return units, eps


def _unit_block(R: Ring, rows: int, cols: int, n: int) -> Mat:
    return Mat.from_rows(R, [[R.one if i == j and i < n else R.zero for j in range(cols)]
                             for i in range(rows)], cols)


def is_split_mono(j: Mat) -> bool:
    return residue_rank(j) == j.cols


def is_split_epi(r: Mat) -> bool:
    return residue_rank(r) == r.rows


def left_inverse(j: Mat) -> Mat:
    """s with s j = 1 for a split injection j."""
    if not is_split_mono(j):
        raise NotInvertible("map is not a split injection", witness=j.to_json())
    P, _, Q = local_normal_form(j)
    return Q @ _unit_block(j.ring, j.cols, j.rows, j.cols) @ P


def right_inverse(r: Mat) -> Mat:
    """s with r s = 1 for a split surjection r."""
    if not is_split_epi(r):
        raise NotInvertible("map is not a split surjection", witness=r.to_json())
    P, _, Q = local_normal_form(r)
    return Q @ _unit_block(r.ring, r.cols, r.rows, r.rows) @ P


# enumeration over finite rings -------------------------------------------------


class _ResidueSpan:
    """Incremental span of residue vectors for independence tests."""

    def __init__(self, k: Ring, dim: int):
        self.k = k
        self.dim = dim
        self.rows: List[Tuple[int, List[Elem]]] = []

    def reduce(self, v: Sequence[Elem]) -> List[Elem]:
        k = self.k
        v = list(v)
        for p, r in self.rows:
            if v[p] != k.zero:
                c = v[p]
                v = [k.sub(x, k.mul(c, y)) for x, y in zip(v, r)]
        return v

    def independent(self, v: Sequence[Elem]) -> bool:
        return any(x != self.k.zero for x in self.reduce(v))

    def extended(self, v: Sequence[Elem]) -> "_ResidueSpan":
        k = self.k
        v = self.reduce(v)
        p = next(i for i, x in enumerate(v) if x != k.zero)
        inv = k.inv(v[p])
        v = [k.mul(inv, x) for x in v]
        out = _ResidueSpan(k, self.dim)
        out.rows = list(self.rows) + [(p, v)]
        return out


def _independent_vectors(R: Ring, dim: int, count: int) -> Iterator[Tuple[Vec, ...]]:
    vectors = list(itertools.product(list(R.elements()), repeat=dim))

    def walk(span: _ResidueSpan, chosen: Tuple[Vec, ...]):
        if len(chosen) == count:
            yield chosen
            return
        for v in vectors:
            res = [R.residue(x) for x in v]
            if span.independent(res):
                yield from walk(span.extended(res), chosen + (v,))

    yield from walk(_ResidueSpan(R.residue_field, dim), ())


def general_linear(R: Ring, n: int) -> Iterator[Mat]:
    """Every invertible n x n matrix over a finite ring."""
    if n == 0:
        yield Mat.zero(R, 0, 0)
        return
    for rows in _independent_vectors(R, n, n):
        yield Mat.from_rows(R, rows, n)


def split_injections(R: Ring, b: int, a: int) -> Iterator[Mat]:
    """Every b x a matrix whose residue has rank a."""
    if a == 0:
        yield Mat.zero(R, b, 0)
        return
    for cols in _independent_vectors(R, b, a):
        yield Mat.from_columns(R, cols, b)


def gl_generators(R: Ring, n: int) -> List[Mat]:
    """Elementary matrices over additive generators and diag(u, 1, ..) for unit generators."""
    out: List[Mat] = []
    if n == 0:
        return out
    for u in R.unit_generators():
        out.append(Mat.diag(R, [u] + [R.one] * (n - 1)))
    for i in range(n):
        for j in range(n):
            if i != j:
                out.extend(Mat.elementary(R, n, i, j, c) for c in R.additive_generators())
    return out


def count_general_linear(R: Ring, n: int) -> int:
    """|GL_n(R)| for R finite local with residue field of order q."""
    q = R.residue_field.order
    size = R.order
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out * (size // q) ** (n * n)


# squares -----------------------------------------------------------------------


def is_square(k: Ring, x: Elem) -> Tuple[bool, Optional[Elem]]:
    """Whether x = y^2 in k, with a witness y."""
    if x == k.zero:
        raise ZeroInput("square test of zero")
    if isinstance(k, PrimeField):
        y = sqrt_mod(x, k.p)
        return (y is not None, None if y is None else y % k.p)
    if isinstance(k, BinaryField):
        return True, k.sqrt(x)
    if isinstance(k, F2RationalFunctions):
        num, den = even_part_sqrt(x[0]), even_part_sqrt(x[1])
        if num is None or den is None:
            return False, None
        return True, k.make(num, den)
    raise UnsupportedField(f"no square test over {k.descriptor}")


_t = symbols("t")


def _poly_from_mask(a: int) -> Poly:
    coeffs = [(a >> e) & 1 for e in range(a.bit_length() - 1, -1, -1)] or [0]
    return Poly(coeffs, _t, modulus=2)


def _mask_from_poly(p: Poly) -> int:
    out = 0
    for c in p.all_coeffs():
        out = (out << 1) | (int(c) % 2)
    return out


def squarefree_kernel_f2(a: int) -> int:
    """Product of the irreducible factors of odd multiplicity of a in F2[t]."""
    _, factors = _poly_from_mask(a).factor_list()
    out = 1
    for f, mult in factors:
        if mult % 2:
            out = pmul(out, _mask_from_poly(f))
    return out


def square_class(k: Ring, x: Elem) -> Elem:
    """Canonical representative of x in k^x / (k^x)^2."""
    if x == k.zero:
        raise ZeroInput("square class of zero")
    if isinstance(k, BinaryField):
        return k.one
    if isinstance(k, PrimeField):
        if is_square(k, x)[0]:
            return k.one
        return next(a for a in range(2, k.p) if not is_square(k, a)[0])
    if isinstance(k, F2RationalFunctions):
        # num/den = num*den / den^2
        return (squarefree_kernel_f2(pmul(x[0], x[1])), 1)
    raise UnsupportedField(f"no square classes over {k.descriptor}")

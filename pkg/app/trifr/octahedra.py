"""Cones, octahedra and their degeneracies in the category of free k[eps]-modules.

For f: X -> Y and g: Y -> Z with triangles T_f, T_g, T_gf, an octahedron is a
pair of maps gbar: C_f -> C_gf and fbar: C_gf -> C_g with

    gbar i^f = i^gf g,   q^gf gbar = q^f,   fbar i^gf = i^g,   q^g fbar = f q^gf.

Its faces are d0 = T_C = (gbar, fbar, i^f q^g), d1 = T_g, d2 = T_gf, d3 = T_f.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from app.rings.fields import DualNumbers, Ring
from app.rings.linalg import inverse, kernel, local_normal_form, local_ranks, solve, square_class
from app.rings.matrix import Mat
from app.simplicial.interface import Equivalence2
from app.trifr.complexes import (
    Periodic3Complex,
    det3,
    is_acyclic,
    is_distinguished,
    standard_triangle,
)

logger = logging.getLogger(__name__)


def s0_object(R: Ring, n: int) -> Periodic3Complex:
    """0 -> R^n -1-> R^n -> 0"""
    return Periodic3Complex(Mat.zero(R, n, 0), Mat.identity(R, n), Mat.zero(R, 0, n))


def s1_object(R: Ring, n: int) -> Periodic3Complex:
    """R^n -1-> R^n -> 0 -> R^n"""
    return Periodic3Complex(Mat.identity(R, n), Mat.zero(R, 0, n), Mat.zero(R, n, 0))


def cone(f: Mat) -> Periodic3Complex:
    """A distinguished triangle X -f-> Y -> C_f -> X, built from the local normal form of f."""
    R = f.ring
    P, D, Q = local_normal_form(f)
    units, eps = local_ranks(D)
    Y, X = f.rows, f.cols
    zero_cols = X - units - eps
    zero_rows = Y - units - eps
    c = eps + zero_cols + zero_rows
    i_rows = [[R.zero] * Y for _ in range(c)]
    q_rows = [[R.zero] * c for _ in range(X)]
    for m in range(eps):
        i_rows[m][units + m] = R.eps
        q_rows[units + m][m] = R.eps
    for z in range(zero_cols):
        q_rows[units + eps + z][eps + z] = R.one
    for z in range(zero_rows):
        i_rows[eps + zero_cols + z][units + eps + z] = R.one
    S = Periodic3Complex(D, Mat.from_rows(R, i_rows, Y), Mat.from_rows(R, q_rows, c))
    return S.transport(Q, inverse(P), Mat.identity(R, c))


@dataclass(frozen=True)
class Octahedron:
    Tf: Periodic3Complex
    Tg: Periodic3Complex
    Tgf: Periodic3Complex
    gbar: Mat
    fbar: Mat

    @property
    def Tc(self) -> Periodic3Complex:
        return Periodic3Complex(self.gbar, self.fbar, self.Tf.i @ self.Tg.q)

    def face(self, n: int) -> Periodic3Complex:
        return (self.Tc, self.Tg, self.Tgf, self.Tf)[n]

    def faces(self) -> Tuple[Periodic3Complex, ...]:
        return tuple(self.face(n) for n in range(4))

    def conditions_hold(self) -> bool:
        Tf, Tg, Tgf = self.Tf, self.Tg, self.Tgf
        if Tgf.f != Tg.f @ Tf.f:
            return False
        return (
            self.gbar @ Tf.i == Tgf.i @ Tg.f
            and Tgf.q @ self.gbar == Tf.q
            and self.fbar @ Tgf.i == Tg.i
            and Tg.q @ self.fbar == Tf.f @ Tgf.q
        )

    def push_triangles(self) -> Tuple[Periodic3Complex, Periodic3Complex]:
        """Y -> Z + C_f -> C_gf -> Y and C_gf -> X + C_g -> Y -> C_gf."""
        Tf, Tg, Tgf = self.Tf, self.Tg, self.Tgf
        f, g = Tf.f, Tg.f
        p1 = Periodic3Complex(
            g.vstack(Tf.i),
            Tgf.i.hstack(-self.gbar),
            f @ Tgf.q,
        )
        p2 = Periodic3Complex(
            Tgf.q.vstack(self.fbar),
            f.hstack(-Tg.q),
            Tgf.i @ g,
        )
        return p1, p2

    def is_virtual(self) -> bool:
        return self.conditions_hold() and all(is_acyclic(T) for T in self.faces())

    def is_special(self) -> bool:
        """All faces and both push triangles distinguished."""
        if not self.conditions_hold() or not all(is_distinguished(T) for T in self.faces()):
            return False
        return all(is_distinguished(T) for T in self.push_triangles())

    def accepts(self, flavor: str) -> bool:
        return self.is_special() if flavor == "d" else self.is_virtual()

    def block_sum(self, other: "Octahedron") -> "Octahedron":
        return Octahedron(
            self.Tf.block_sum(other.Tf),
            self.Tg.block_sum(other.Tg),
            self.Tgf.block_sum(other.Tgf),
            self.gbar.block_sum(other.gbar),
            self.fbar.block_sum(other.fbar),
        )

    def __str__(self) -> str:
        return f"oct({self.Tf}; {self.Tg}; {self.Tgf}; {self.gbar}; {self.fbar})"


# degeneracies ------------------------------------------------------------------


def degeneracy(T: Periodic3Complex, j: int) -> Octahedron:
    """s_j T for j = 0, 1, 2."""
    R = T.ring
    X, Y, C = T.ranks
    if j == 0:
        return Octahedron(s0_object(R, X), T, s0_object(R, Y), T.f, T.i)
    if j == 1:
        return Octahedron(s1_object(R, X), T, T, Mat.zero(R, C, 0), Mat.identity(R, C))
    if j == 2:
        return Octahedron(T, s1_object(R, Y), T, Mat.identity(R, C), Mat.zero(R, 0, C))
    raise IndexError(f"degeneracies of triangles are s0, s1, s2, not s{j}")


# completion ------------------------------------------------------------------------


def _coords(R: DualNumbers, M: Mat) -> List:
    out = []
    for row in M.entries:
        for x in row:
            out.extend([x[0], x[1]])
    return out


def _unknown_basis(R: DualNumbers, rows: int, cols: int) -> List[Mat]:
    k = R.base
    out = []
    for a in range(rows):
        for b in range(cols):
            for unit in ((k.one, k.zero), (k.zero, k.one)):
                e = [[R.zero] * cols for _ in range(rows)]
                e[a][b] = unit
                out.append(Mat.from_rows(R, e, cols))
    return out


def _from_vector(R: DualNumbers, v: Sequence, rows: int, cols: int) -> Mat:
    it = iter(v)
    entries = [[(next(it), next(it)) for _ in range(cols)] for _ in range(rows)]
    return Mat.from_rows(R, entries, cols)


def _residuals(Tf: Periodic3Complex, Tg: Periodic3Complex, Tgf: Periodic3Complex,
               gbar: Mat, fbar: Mat) -> List:
    R = Tf.ring
    parts = [
        gbar @ Tf.i - Tgf.i @ Tg.f,
        Tgf.q @ gbar - Tf.q,
        fbar @ Tgf.i - Tg.i,
        Tg.q @ fbar - Tf.f @ Tgf.q,
    ]
    out = []
    for p in parts:
        out.extend(_coords(R, p))
    return out


def completion_space(Tf: Periodic3Complex, Tg: Periodic3Complex, Tgf: Periodic3Complex):
    """A particular solution of the octahedron conditions and a kernel basis, as k-vectors."""
    R = Tf.ring
    k = R.base
    cf, cgf, cg = Tf.ranks[2], Tgf.ranks[2], Tg.ranks[2]
    zero_g, zero_f = Mat.zero(R, cgf, cf), Mat.zero(R, cg, cgf)
    const = _residuals(Tf, Tg, Tgf, zero_g, zero_f)
    columns = []
    for e in _unknown_basis(R, cgf, cf):
        r = _residuals(Tf, Tg, Tgf, e, zero_f)
        columns.append(tuple(k.sub(a, b) for a, b in zip(r, const)))
    for e in _unknown_basis(R, cg, cgf):
        r = _residuals(Tf, Tg, Tgf, zero_g, e)
        columns.append(tuple(k.sub(a, b) for a, b in zip(r, const)))
    shape = (cgf, cf, cg)
    if not columns:
        return (() if all(x == k.zero for x in const) else None), [], shape
    A = Mat.from_columns(k, columns, len(const))
    x = solve(A, [k.neg(c) for c in const])
    if x is None:
        return None, [], shape
    return x, kernel(A), shape


def split_solution(R: DualNumbers, v: Sequence, shape: Tuple[int, int, int]) -> Tuple[Mat, Mat]:
    cgf, cf, cg = shape
    n = 2 * cgf * cf
    return _from_vector(R, v[:n], cgf, cf), _from_vector(R, v[n:], cg, cgf)


def octahedral_completion(Tf: Periodic3Complex, Tg: Periodic3Complex, Tgf: Periodic3Complex,
                          flavor: str = "d", rng: Optional[np.random.Generator] = None,
                          tries: int = 64) -> Optional[Octahedron]:
    """An octahedron on the given triangles, searched among random solutions of the linear conditions."""
    R = Tf.ring
    k = R.base
    if Tgf.f != Tg.f @ Tf.f:
        return None
    rng = rng if rng is not None else np.random.default_rng(0)
    x, basis, shape = completion_space(Tf, Tg, Tgf)
    if x is None:
        return None
    for attempt in range(tries):
        v = list(x)
        if attempt:
            for b in basis:
                c = k.random(rng)
                v = [k.add(a, k.mul(c, y)) for a, y in zip(v, b)]
        gbar, fbar = split_solution(R, v, shape)
        candidate = Octahedron(Tf, Tg, Tgf, gbar, fbar)
        if candidate.accepts(flavor):
            return candidate
        if not basis:
            break
    return None


def octahedron_det_holds(O: Octahedron) -> bool:
    """det(T_g) det(T_f) = det(T_gf) det(T_C) modulo squares."""
    k = O.Tf.ring.base
    lhs = k.mul(det3(O.Tg), det3(O.Tf))
    rhs = k.mul(det3(O.Tgf), det3(O.Tc))
    return square_class(k, k.div(lhs, rhs)) == k.one


# suspension --------------------------------------------------------------------


def gamma(R: Ring, n: int) -> Periodic3Complex:
    """X -> 0 -> X -1-> X"""
    return Periodic3Complex(Mat.zero(R, 0, n), Mat.zero(R, n, 0), Mat.identity(R, n))


def translation(T: Periodic3Complex) -> Periodic3Complex:
    """Y -i-> C -(-q)-> X -f-> Y"""
    return Periodic3Complex(T.i, -T.q, T.f)


@dataclass(frozen=True)
class SuspensionWitness:
    """The octahedron theta with d3 = T and d0 = s1 C + s0 X, and the two equivalences phi, phi_prime."""

    delta: Periodic3Complex
    theta: Octahedron
    phi: Equivalence2
    phi_prime: Equivalence2
    degenerate: Octahedron

    @property
    def gamma(self) -> Periodic3Complex:
        return gamma(self.delta.ring, self.delta.ranks[0])

    def check(self) -> List[Tuple[bool, str]]:
        """Each structural requirement on the witness with its description."""
        T, th = self.delta, self.theta
        R = T.ring
        X, _, C = T.ranks
        g = self.gamma
        s0C, s1X = s0_object(R, C), s1_object(R, X)
        c = self.phi.faces[0]
        return [
            (th.conditions_hold(), "theta satisfies the octahedron conditions"),
            (th.face(3) == T, "d3 theta is the triangle"),
            (th.face(0) == s1_object(R, C).block_sum(s0_object(R, X)), "d0 theta = s1 C + s0 X"),
            (self.phi.source == th.face(2), "phi starts at d2 theta"),
            (self.phi.target == s0C.block_sum(g), "phi ends at s0 C + gamma X"),
            (self.phi_prime.source == s0C.block_sum(s1X) == self.phi_prime.target, "phi' is a self-equivalence"),
            (self.phi_prime.faces[1] == c, "d0 phi = d1 phi'"),
            (self.phi.faces[1].is_identity() and self.phi_prime.faces[0].is_identity(), "d1 phi = 1 = d0 phi'"),
            (self.phi.faces[2].is_identity() and self.phi_prime.faces[2].is_identity(), "d2 phi and d2 phi' are identities"),
            (_transports(self.phi) and _transports(self.phi_prime), "phi and phi' are isomorphisms of triangles"),
        ]


def _transports(E: Equivalence2) -> bool:
    c, b, a = E.faces
    return E.source.transport(a, b, c) == E.target


def suspension_witness(T: Periodic3Complex) -> SuspensionWitness:
    R = T.ring
    X, _, C = T.ranks
    I_C, I_X = Mat.identity(R, C), Mat.identity(R, X)
    into = I_C.vstack(-T.q)
    out = T.q.hstack(I_X)
    Tgf = Periodic3Complex(Mat.zero(R, C, X), into, out)
    theta = Octahedron(
        T,
        translation(T),
        Tgf,
        I_C.vstack(Mat.zero(R, X, C)),
        Mat.zero(R, X, C).hstack(I_X),
    )
    c = I_C.hstack(Mat.zero(R, C, X)).vstack(T.q.hstack(I_X))
    g = gamma(R, X)
    s0C, s1X = s0_object(R, C), s1_object(R, X)
    phi = Equivalence2(Tgf, s0C.block_sum(g), (c, I_C, I_X))
    fixed = s0C.block_sum(s1X)
    phi_prime = Equivalence2(fixed, fixed, (I_C, c, I_X))
    degenerate = degeneracy(s0C, 0).block_sum(degeneracy(g, 2))
    return SuspensionWitness(T, theta, phi, phi_prime, degenerate)


def jordan_octahedra(A: Mat) -> Tuple[Octahedron, Octahedron, Octahedron, Octahedron]:
    """Four octahedra gluing T_a >-> T_A ->> T_B, with a = A[0, 0] and B the lower-right block.

    T_M is R^d -eps-> R^d -eps-> R^d -eps M-> R^d. The columns are the split
    triangles R >-> R^n ->> R^{n-1}, and the d0 faces of the first two are
    s1 R + s0 R^{n-1} and s0 R + s1 R^{n-1}, so the four form a 3x3 diagram.
    A must be upper triangular of rank n >= 2.
    """
    R = A.ring
    n = A.rows
    if n < 2:
        raise ValueError("a 3x3 diagram peels a rank >= 2 matrix")
    head = standard_triangle(R, A.submatrix(range(1), range(1)))
    rest = standard_triangle(R, A.submatrix(range(1, n), range(1, n)))
    whole = standard_triangle(R, A)
    e = Mat.identity(R, n).submatrix(range(n), range(1))
    p = Mat.identity(R, n).submatrix(range(1, n), range(n))
    column = s1_object(R, 1).block_sum(s0_object(R, n - 1))
    top = head.block_sum(s0_object(R, n - 1))
    side = head.block_sum(s1_object(R, n - 1))
    bottom = s1_object(R, 1).block_sum(rest)
    eps = Mat.scalar(R, n - 1, R.eps)
    return (
        Octahedron(head, column, top, e, p),
        Octahedron(column, side, top, p.T, e.T),
        Octahedron(column, bottom, column, eps, eps),
        Octahedron(side, bottom, whole, e, p),
    )

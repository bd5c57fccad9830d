"""Acyclic 3-periodic complexes of free k[eps]-modules and their determinants.

A triangle X -f-> Y -i-> Z -q-> X is the complex with X0 = X, X2 = Y, X1 = Z
and d2 = f, d1 = i, d0 = q, so d_n: X_{n+1} -> X_n with indices mod 3.

The short exact sequence eps T >-> T ->> T/eps T has connecting maps
sigma_n: H_{n+1} -> H_n on the homology of T/eps T, which are isomorphisms when
T is acyclic; rho_n = sigma_n sigma_{n+1} sigma_{n+2} and det3(T) = det rho_0.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from app.exceptions import NotAcyclic, UnsupportedField
from app.rings.fields import DualNumbers, Elem, Ring
from app.rings.linalg import (
    det,
    epsilon_part,
    inverse,
    kernel,
    lift,
    local_normal_form,
    local_ranks,
    rank,
    residue,
    restrict_scalars,
    solve,
    square_class,
)
from app.rings.matrix import Mat

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Periodic3Complex:
    """X -f-> Y -i-> Z -q-> X over a ring of dual numbers."""

    f: Mat
    i: Mat
    q: Mat

    def __post_init__(self):
        if not (self.f.rows == self.i.cols and self.i.rows == self.q.cols and self.q.rows == self.f.cols):
            raise ValueError(f"incompatible shapes {self.f.shape}, {self.i.shape}, {self.q.shape}")

    @property
    def ring(self) -> DualNumbers:
        return self.f.ring

    @property
    def ranks(self) -> Tuple[int, int, int]:
        """(X, Y, Z)"""
        return (self.f.cols, self.f.rows, self.i.rows)

    def d(self, n: int) -> Mat:
        """d_n: X_{n+1} -> X_n."""
        return (self.q, self.i, self.f)[n % 3]

    def rank_at(self, n: int) -> int:
        """rank of X_n"""
        return (self.f.cols, self.i.rows, self.f.rows)[n % 3]

    def is_complex(self) -> bool:
        return all((self.d(n) @ self.d(n + 1)).is_zero() for n in range(3))

    def shift(self) -> "Periodic3Complex":
        """Y -i-> Z -q-> X -f-> Y"""
        return Periodic3Complex(self.i, self.q, self.f)

    def transport(self, a: Mat, b: Mat, c: Mat) -> "Periodic3Complex":
        """Image under the isomorphism (a, b, c) on (X, Y, Z)."""
        return Periodic3Complex(b @ self.f @ inverse(a), c @ self.i @ inverse(b), a @ self.q @ inverse(c))

    def block_sum(self, other: "Periodic3Complex") -> "Periodic3Complex":
        return Periodic3Complex(self.f.block_sum(other.f), self.i.block_sum(other.i), self.q.block_sum(other.q))

    def to_json(self) -> dict:
        return {
            "ring": self.ring.descriptor,
            "ranks": list(self.ranks),
            "f": self.f.to_json(),
            "i": self.i.to_json(),
            "q": self.q.to_json(),
        }

    @classmethod
    def from_json(cls, R: Ring, data: dict) -> "Periodic3Complex":
        X, Y, Z = (int(x) for x in data.get("ranks", (0, 0, 0)))
        return cls(Mat.from_json(R, data["f"], X), Mat.from_json(R, data["i"], Y), Mat.from_json(R, data["q"], Z))

    def __str__(self) -> str:
        return f"({self.f}, {self.i}, {self.q})"


def triangle(R: DualNumbers, f, i, q) -> Periodic3Complex:
    """Build a triangle from nested lists of ring elements."""
    return Periodic3Complex(Mat.from_rows(R, f), Mat.from_rows(R, i), Mat.from_rows(R, q))


def standard_triangle(R: DualNumbers, rho_bar: Mat) -> Periodic3Complex:
    """R^d -eps-> R^d -eps-> R^d -eps rho-> R^d"""
    d = rho_bar.rows
    e = Mat.scalar(R, d, R.eps)
    return Periodic3Complex(e, e, e @ rho_bar)


def generator_triangle(R: DualNumbers, lam: Optional[Elem] = None) -> Periodic3Complex:
    """R -eps-> R -eps-> R -eps lam-> R over the base field element lam (default 1)."""
    k = R.base
    lam = k.one if lam is None else lam
    return standard_triangle(R, Mat.from_rows(R, [[R.lift(lam)]]))


def zero_complex(R: DualNumbers) -> Periodic3Complex:
    z = Mat.zero(R, 0, 0)
    return Periodic3Complex(z, z, z)


def _require_dual(T: Periodic3Complex) -> DualNumbers:
    if not isinstance(T.ring, DualNumbers):
        raise UnsupportedField(f"{T.ring.descriptor} is not a ring of dual numbers")
    return T.ring


# acyclicity and homology -------------------------------------------------------


def acyclicity_defect(T: Periodic3Complex) -> Optional[int]:
    """First spot n where T is not exact, or None."""
    _require_dual(T)
    if not T.is_complex():
        return 0
    for n in range(3):
        # at X_{n+1}: dim ker d_n == dim im d_{n+1}, over k with R = k + eps k
        dn = restrict_scalars(T.d(n))
        dn1 = restrict_scalars(T.d(n + 1))
        if dn.cols - rank(dn) != rank(dn1):
            return (n + 1) % 3
    return None


def is_acyclic(T: Periodic3Complex) -> bool:
    return acyclicity_defect(T) is None


def require_acyclic(T: Periodic3Complex) -> None:
    spot = acyclicity_defect(T)
    if spot is not None:
        raise NotAcyclic(f"complex is not exact at X_{spot}", spot=spot)


@dataclass
class _Homology:
    """A basis of H = Z / B for a k-linear complex spot, with coordinates."""

    reps: List[Tuple[Elem, ...]]
    boundaries: List[Tuple[Elem, ...]]
    dim: int
    k: Ring

    def coords(self, v: Sequence[Elem]) -> Tuple[Elem, ...]:
        cols = self.boundaries + self.reps
        A = Mat.from_columns(self.k, cols, self.dim)
        x = solve(A, v)
        if x is None:
            raise ValueError("vector is not a cycle")
        return tuple(x[len(self.boundaries):])


def _homology(cycles: Sequence[Tuple[Elem, ...]], boundaries: Sequence[Tuple[Elem, ...]],
              k: Ring, dim: int) -> _Homology:
    chosen: List[Tuple[Elem, ...]] = []
    base = list(boundaries)
    current = rank(Mat.from_columns(k, base, dim)) if base else 0
    for v in cycles:
        trial = Mat.from_columns(k, base + chosen + [v], dim)
        r = rank(trial)
        if r > current:
            chosen.append(v)
            current = r
    independent_b = []
    rb = 0
    for v in boundaries:
        trial = Mat.from_columns(k, independent_b + [v], dim)
        if rank(trial) > rb:
            independent_b.append(v)
            rb += 1
    return _Homology(chosen, independent_b, dim, k)


def _homologies(T: Periodic3Complex) -> List[_Homology]:
    """Homology of T/eps T at X_0, X_1, X_2."""
    R = _require_dual(T)
    k = R.base
    out = []
    for n in range(3):
        dbar_out = residue(T.d(n - 1))   # X_n -> X_{n-1}
        dbar_in = residue(T.d(n))        # X_{n+1} -> X_n
        cycles = kernel(dbar_out)
        boundaries = dbar_in.columns()
        out.append(_homology(cycles, boundaries, k, T.rank_at(n)))
    return out


def sigma(T: Periodic3Complex, n: int, H: Optional[List[_Homology]] = None) -> Mat:
    """sigma_n: H_{n+1} -> H_n, induced by the eps-part of d_n."""
    R = _require_dual(T)
    H = H or _homologies(T)
    src, dst = H[(n + 1) % 3], H[n % 3]
    B = epsilon_part(T.d(n))
    cols = [dst.coords(B.apply(v)) for v in src.reps]
    return Mat.from_columns(R.base, cols, len(dst.reps))


def rho(T: Periodic3Complex, n: int = 0) -> Mat:
    """rho_n = sigma_n sigma_{n+1} sigma_{n+2} on H_n, in the column-echelon homology basis."""
    require_acyclic(T)
    H = _homologies(T)
    return sigma(T, n, H) @ sigma(T, n + 1, H) @ sigma(T, n + 2, H)


def det3(T: Periodic3Complex) -> Elem:
    return det(rho(T))


def is_virtual(T: Periodic3Complex) -> bool:
    return is_acyclic(T)


def is_distinguished(T: Periodic3Complex) -> bool:
    return is_acyclic(T) and rho(T).is_identity()


def p_class(T: Periodic3Complex) -> Elem:
    """det3(T) in k^x / (k^x)^2."""
    return square_class(T.ring.base, det3(T))


# splitting -------------------------------------------------------------------


@dataclass
class VirtualSplit:
    """T is isomorphic to (contractible part) + (R^d -eps-> R^d -eps-> R^d -eps rho_bar-> R^d)."""

    source: Periodic3Complex
    contractible: List[Tuple[int, int]]
    d: int
    rho_bar: Mat
    iso: Tuple[Mat, Mat, Mat]
    reassembled: Periodic3Complex
    notes: dict = field(default_factory=dict)

    @property
    def standard(self) -> Periodic3Complex:
        return standard_triangle(self.source.ring, self.rho_bar)

    def verify(self) -> bool:
        """iso_n d_n = d'_n iso_{n+1} at every spot."""
        T, S = self.source, self.reassembled
        by_spot = {0: self.iso[0], 1: self.iso[1], 2: self.iso[2]}
        for n in range(3):
            if by_spot[n] @ T.d(n) != S.d(n) @ by_spot[(n + 1) % 3]:
                return False
        return True


def _embed(R: Ring, n: int, idx: Sequence[int], M: Mat) -> Mat:
    rows = [list(r) for r in Mat.identity(R, n).entries]
    for a, i in enumerate(idx):
        for b, j in enumerate(idx):
            rows[i][j] = M[a, b]
    return Mat.from_rows(R, rows, n)


def _permutation(R: Ring, order: Sequence[int]) -> Mat:
    """Row a of the result selects coordinate order[a]."""
    n = len(order)
    return Mat.from_rows(R, [[R.one if j == order[a] else R.zero for j in range(n)] for a in range(n)], n)


def split_virtual(T: Periodic3Complex) -> VirtualSplit:
    """Peel the unit pivots of every differential, then bring the eps-remainder to standard form."""
    R = _require_dual(T)
    require_acyclic(T)
    sizes = [T.rank_at(n) for n in range(3)]
    d = [T.d(n) for n in range(3)]
    P = [Mat.identity(R, s) for s in sizes]
    peeled_target: List[List[int]] = [[], [], []]   # X_n coordinates hit isomorphically by d_n
    peeled_source: List[List[int]] = [[], [], []]   # X_n coordinates mapped isomorphically by d_{n-1}
    contractible: List[Tuple[int, int]] = []

    def free(n: int) -> List[int]:
        taken = set(peeled_target[n]) | set(peeled_source[n])
        return [x for x in range(sizes[n]) if x not in taken]

    for n in range(3):
        m = (n + 1) % 3
        rows, cols = free(n), free(m)
        block = d[n].submatrix(rows, cols)
        Pn, D, Qn = local_normal_form(block)
        units, _ = local_ranks(D)
        Gn = _embed(R, sizes[n], rows, Pn)
        Gm = _embed(R, sizes[m], cols, inverse(Qn))
        Gn_inv, Gm_inv = inverse(Gn), inverse(Gm)
        d[n] = Gn @ d[n] @ Gm_inv
        d[(n - 1) % 3] = d[(n - 1) % 3] @ Gn_inv
        d[(n + 1) % 3] = Gm @ d[(n + 1) % 3]
        P[n] = Gn @ P[n]
        P[m] = Gm @ P[m]
        peeled_target[n].extend(rows[:units])
        peeled_source[m].extend(cols[:units])
        if units:
            contractible.append((n, units))

    rest = [free(n) for n in range(3)]
    dim = len(rest[0])
    if any(len(r) != dim for r in rest):
        raise NotAcyclic("remainder has unequal ranks", spot=None)
    B = [epsilon_part(d[n].submatrix(rest[n], rest[(n + 1) % 3])) for n in range(3)]
    rho_bar_k = B[0] @ B[1] @ B[2]
    rho_bar = lift(rho_bar_k, R)
    # psi: standard -> remainder with psi_0 = 1, psi_2 = B_2, psi_1 = B_1 B_2
    k = R.base
    psi = {0: Mat.identity(k, dim), 2: B[2], 1: B[1] @ B[2]}

    iso = []
    for n in range(3):
        order = peeled_target[n] + peeled_source[n] + rest[n]
        Pi = _permutation(R, order)
        npeel = sizes[n] - dim
        fix = Mat.identity(R, npeel).block_sum(lift(inverse(psi[n]), R))
        iso.append(fix @ Pi @ P[n])
    reassembled = Periodic3Complex(
        iso[2] @ T.f @ inverse(iso[0]),
        iso[1] @ T.i @ inverse(iso[2]),
        iso[0] @ T.q @ inverse(iso[1]),
    )
    out = VirtualSplit(T, contractible, dim, rho_bar, (iso[0], iso[1], iso[2]), reassembled)
    logger.debug(f"split_virtual: contractible {contractible}, standard rank {dim}")
    return out


# random generation ---------------------------------------------------------------


def contractible_piece(R: DualNumbers, n: int) -> Periodic3Complex:
    """R -1-> R with the third term zero, placed on d_n."""
    one = Mat.identity(R, 1)
    z10, z01, z00 = Mat.zero(R, 1, 0), Mat.zero(R, 0, 1), Mat.zero(R, 0, 0)
    if n == 2:
        return Periodic3Complex(one, z01, z10)
    if n == 1:
        return Periodic3Complex(z10, one, z01)
    return Periodic3Complex(z01, z10, one)


def random_iso(R: Ring, n: int, rng: np.random.Generator, tries: int = 200) -> Mat:
    for _ in range(tries):
        g = Mat.random(R, n, n, rng)
        if R.is_unit(det(g)):
            return g
    return Mat.identity(R, n)


def random_acyclic(R: DualNumbers, rng: np.random.Generator, d: int = 1, pieces: Sequence[int] = (),
                   distinguished: bool = False) -> Periodic3Complex:
    """Change of basis of a standard triangle of rank d plus contractible pieces."""
    k = R.base
    if distinguished:
        rho_bar = Mat.identity(R, d)
    else:
        rho_bar = lift(random_iso(k, d, rng), R)
    T = standard_triangle(R, rho_bar)
    for n in pieces:
        T = T.block_sum(contractible_piece(R, n))
    X, Y, Z = T.ranks
    return T.transport(random_iso(R, X, rng), random_iso(R, Y, rng), random_iso(R, Z, rng))


def extension(T1: Periodic3Complex, T2: Periodic3Complex, rng: np.random.Generator) -> Periodic3Complex:
    """T1 + T2 conjugated by a random block upper unitriangular isomorphism.

    The result contains T1 as a subcomplex with quotient T2, levelwise split.
    """
    R = T1.ring
    S = T1.block_sum(T2)
    gs = []
    for (a, b) in zip(T1.ranks, T2.ranks):
        h = Mat.random(R, a, b, rng)
        top = Mat.identity(R, a).hstack(h)
        bottom = Mat.zero(R, b, a).hstack(Mat.identity(R, b))
        gs.append(top.vstack(bottom))
    return S.transport(*gs)

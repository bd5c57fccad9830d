"""Central subgroups of nil-2 groups: centers and kernels of homomorphisms with central kernel."""

import logging
from typing import List, Mapping, Optional, Sequence

from app.algebra.abelian import AbGroup, Coords
from app.algebra.integer import EchelonLattice, LatticeKernel, solve_integer
from app.algebra.nil2 import Nil2Group, Nil2Word
from app.exceptions import InvalidHom, NoncentralWitness

logger = logging.getLogger(__name__)


class Nil2Hom:
    """Homomorphism of nil-2 groups given on generators.

    gen_images[i] is the image of generator i. Central symbols of the source
    structure map through central_images when given; otherwise each symbol
    must be a commutator [g_i, g_j] keyed by (i, j) and its image is the
    commutator of the images.
    """

    def __init__(self, source: Nil2Group, target: Nil2Group,
                 gen_images: Sequence[Nil2Word],
                 central_images: Optional[Mapping] = None):
        if len(gen_images) != source.ngens:
            raise InvalidHom(f"expected {source.ngens} generator images, got {len(gen_images)}")
        self.source = source
        self.target = target
        self.gen_images = list(gen_images)
        self.central_images = dict(central_images) if central_images is not None else None

    def central_image(self, key) -> Nil2Word:
        if self.central_images is not None:
            return self.central_images.get(key, Nil2Word())
        i, j = key
        return self.target.comm(self.gen_images[i], self.gen_images[j])

    def __call__(self, w: Nil2Word) -> Nil2Word:
        t = self.target
        out = Nil2Word()
        for i in sorted(w.ab):
            out = t.mul(out, t.power(self.gen_images[i], w.ab[i]))
        for key, n in w.comm.items():
            out = t.mul(out, t.power(self.central_image(key), n))
        return out

    def check_well_defined(self) -> None:
        """Raise InvalidHom unless relators and central relations die."""
        for r in self.source.relators:
            if not self.target.is_identity(self(r)):
                raise InvalidHom("relator image is nontrivial", witness=r)
        s = self.source.structure
        for vec in self.source.central_lattice():
            w = Nil2Word.central(s.central_from_vector(vec))
            if not self.target.is_identity(self(w)):
                raise InvalidHom("central relation image is nontrivial", witness=w)


class AbelianSubgroup:
    """Subgroup of a nil-2 group generated by pairwise commuting elements.

    The group structure is an AbGroup on the given generators; coords() reads
    off canonical coordinates of a member and section() builds a word.
    """

    def __init__(self, group: Nil2Group, generators: Sequence[Nil2Word]):
        self.group = group
        self.generators = list(generators)
        A = group.abelianization
        D = group.central_quotient
        self._ab_columns = [list(A.to_coords(g.ab)) for g in self.generators]
        # relations: ab part first, then the central part on its kernel
        ab_kernel = LatticeKernel(self._ab_columns, A.invariant_factors)
        self._ab_kernel = [list(b) for b in ab_kernel.basis]
        self._central_columns = []
        for rho in self._ab_kernel:
            _, d = group.coordinates(self.product(rho))
            self._central_columns.append(list(d))
        inner = LatticeKernel(self._central_columns, D.invariant_factors)
        relations = []
        for y in inner.basis:
            rel = [0] * len(self.generators)
            for yj, rho in zip(y, self._ab_kernel):
                if yj:
                    for i, r in enumerate(rho):
                        rel[i] += yj * r
            relations.append(rel)
        self.abgroup = AbGroup(len(self.generators), relations)

    def product(self, exponents: Sequence[int]) -> Nil2Word:
        g = self.group
        out = Nil2Word()
        for x, e in zip(self.generators, exponents):
            if e:
                out = g.mul(out, g.power(x, e))
        return out

    def section(self, coords: Sequence[int]) -> Nil2Word:
        vec = self.abgroup.from_coords(coords)
        return self.product([vec.get(i, 0) for i in range(len(self.generators))])

    def coords(self, w: Nil2Word) -> Optional[Coords]:
        """Canonical coordinates of w, or None if w is not in the subgroup."""
        g = self.group
        a, _ = g.coordinates(w)
        c = solve_integer(self._ab_columns, g.abelianization.invariant_factors, list(a))
        if c is None:
            return None
        rest = g.mul(w, g.inv(self.product(c)))
        _, d = g.coordinates(rest)
        y = solve_integer(self._central_columns, g.central_quotient.invariant_factors, list(d))
        if y is None:
            return None
        for yj, rho in zip(y, self._ab_kernel):
            if yj:
                for i, r in enumerate(rho):
                    c[i] += yj * r
        return self.abgroup.to_coords(c)

    def spot_check(self, limit: Optional[int] = None) -> None:
        """Raise NoncentralWitness if a generator fails to commute with G's generators."""
        g = self.group
        checked = 0
        for x in self.generators:
            for k in range(g.ngens):
                if not g.is_identity(g.comm(x, Nil2Word.gen(k))):
                    raise NoncentralWitness("subgroup element is not central", witness=x)
                checked += 1
                if limit is not None and checked >= limit:
                    return


def _central_generators(group: Nil2Group) -> List[Nil2Word]:
    D = group.central_quotient
    s = group.structure
    out = []
    for k in range(D.ncoords):
        vec = D.from_coords(D.generator(k))
        out.append(Nil2Word.central(s.central_from_vector(vec)))
    return out


def nil2_center(group: Nil2Group) -> AbelianSubgroup:
    """Center of G: lifts of the radical of the commutator pairing plus the central symbols."""
    A = group.abelianization
    D = group.central_quotient
    n = A.ncoords
    columns = []
    for j in range(n):
        lift = A.from_coords([1 if i == j else 0 for i in range(n)])
        col: List[int] = []
        for k in range(group.ngens):
            col.extend(group.central_coordinates(group.structure.pairing(lift, {k: 1})))
        columns.append(col)
    moduli = list(D.invariant_factors) * group.ngens
    radical = LatticeKernel(columns, moduli)
    gens = [group.section(b) for b in radical.basis] + _central_generators(group)
    center = AbelianSubgroup(group, gens)
    center.spot_check()
    logger.debug(f"center of nil-2 group: {center.abgroup}")
    return center


def nil2_central_kernel(f: Nil2Hom, spot_checks: Optional[int] = None) -> AbelianSubgroup:
    """ker f, assuming it is central in the source; relators are verified, centrality spot-checked."""
    G, H = f.source, f.target
    f.check_well_defined()
    A_G, A_H, D_H = G.abelianization, H.abelianization, H.central_quotient

    # abelian level: kernel of A_G -> A_H
    images = [list(A_H.to_coords(f(G.section(A_G.generator(j))).ab)) for j in range(A_G.ncoords)]
    ab_kernel = LatticeKernel(images, A_H.invariant_factors).basis
    lifts = [G.section(gamma) for gamma in ab_kernel]
    columns = []
    for w in lifts:
        a, d = H.coordinates(f(w))
        if any(a):
            raise AssertionError("abelian kernel lift leaves the derived subgroup")
        columns.append(list(d))
    central = _central_generators(G)
    for t in central:
        a, d = H.coordinates(f(t))
        if any(a):
            raise InvalidHom("central symbol maps outside the derived subgroup", witness=t)
        columns.append(list(d))

    # split the joint kernel so vectors with no lift part span the central part
    joint = LatticeKernel(columns, D_H.invariant_factors)
    echelon = EchelonLattice(len(columns))
    for b in joint.basis:
        echelon.insert({i: x for i, x in enumerate(b) if x})
    gens = []
    r = len(lifts)
    for row in echelon.basis():
        w = Nil2Word()
        for i in range(r):
            if row.get(i):
                w = G.mul(w, G.power(lifts[i], row[i]))
        for i, t in enumerate(central):
            if row.get(r + i):
                w = G.mul(w, G.power(t, row[r + i]))
        gens.append(w)
    kernel = AbelianSubgroup(G, gens)
    kernel.spot_check(spot_checks)
    logger.debug(f"central kernel: {kernel.abgroup}")
    return kernel

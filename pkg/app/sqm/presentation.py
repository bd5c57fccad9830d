"""Finitely presented stable quadratic modules.

Degree-1 generators are eliminated from degree 0 by their boundary words, so
C0 is a nil-2 group on E0 and C1 is generated by E1 together with the central
tensor symbols t_ab = <e_a, e_b> (a <= b) over E0. In C1

    [e_i, e_j] = <w_j, w_i>,   w_i = abelianized boundary of e_i,

and d(t_ab) = [e_b, e_a].
"""

import logging
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from app.algebra.abelian import AbGroup, AbGroupHom, Coords
from app.algebra.center import AbelianSubgroup, Nil2Hom, nil2_central_kernel
from app.algebra.integer import SparseVec, sparse_addmul
from app.algebra.nil2 import Nil2Group, Nil2Structure, Nil2Word, free_structure
from app.config import settings
from app.exceptions import NotACycle, UnknownGenerator
from app.sqm.free import Deg1Expr, F1Element, Tensor, deg1_normalize, tensor

logger = logging.getLogger(__name__)

Deg1Like = Union[Deg1Expr, F1Element, Nil2Word]


class C1Structure(Nil2Structure):
    """Collection data of C1: generators E1, central symbols the tensor keys over E0."""

    def __init__(self, k: int, weights: Sequence[SparseVec]):
        keys = [(a, b) for a in range(k) for b in range(a, k)]
        super().__init__(len(weights), keys)
        self.k = k
        self.weights = [dict(w) for w in weights]

    def commutator(self, i: int, j: int) -> Tensor:
        return tensor(self.weights[j], self.weights[i])

    def cocycle(self, u: Mapping[int, int], v: Mapping[int, int]) -> Tensor:
        # -sum_j u_j <w_j, sum_{i<j} v_i w_i>
        out: Tensor = {}
        if not u or not v:
            return out
        prefix: SparseVec = {}
        for j in sorted(set(u) | set(v)):
            uj = u.get(j)
            if uj and prefix:
                sparse_addmul(out, tensor(self.weights[j], prefix), -uj)
            vj = v.get(j)
            if vj:
                sparse_addmul(prefix, self.weights[j], vj)
        return out


class SqmPresentation:
    """Generators E0, E1 with boundary words, degree-0 relators R0, degree-1 relators R1."""

    def __init__(self, e0: Sequence[str], e1: Sequence[str], boundaries: Sequence[Nil2Word],
                 r0: Sequence[Nil2Word] = (), r1: Sequence[Deg1Like] = (),
                 name: str = "", truncated: bool = False,
                 tags1: Optional[Sequence[str]] = None, meta: Optional[dict] = None):
        if len(boundaries) != len(e1):
            raise ValueError("one boundary word per degree-1 generator required")
        self.name = name
        self.e0 = list(e0)
        self.e1 = list(e1)
        self.k = len(self.e0)
        self.m = len(self.e1)
        self.truncated = truncated
        self.tags1 = list(tags1) if tags1 is not None else ["named"] * self.m
        self.meta = dict(meta or {})
        for w in boundaries:
            self._check0(w)
        self.boundaries = list(boundaries)
        self.weights: List[SparseVec] = [dict(w.ab) for w in self.boundaries]
        self.structure1 = C1Structure(self.k, self.weights)
        self.r0 = []
        for r in r0:
            self._check0(r)
            self.r0.append(r)
        self.r1 = [self.to_c1(r) for r in r1]

    # validation and conversion ----------------------------------------------

    def _check0(self, w: Nil2Word) -> None:
        for i in w.ab:
            if not 0 <= i < self.k:
                raise UnknownGenerator(f"degree-0 generator {i} not declared", witness=i)
        for key in w.comm:
            if not 0 <= key[0] < key[1] < self.k:
                raise UnknownGenerator(f"commutator {key} over undeclared generators", witness=key)

    def _check1(self, w: Nil2Word) -> None:
        for i in w.ab:
            if not 0 <= i < self.m:
                raise UnknownGenerator(f"degree-1 generator {i} not declared", witness=i)
        for key in w.comm:
            if key not in self.structure1.key_index:
                raise UnknownGenerator(f"tensor symbol {key} not declared", witness=key)

    def project(self, x: F1Element) -> Nil2Word:
        """Image of a free degree-1 element in C1."""
        comm: Tensor = dict(x.tensor)
        for (a, i), c in x.mixed.items():
            sparse_addmul(comm, tensor({a: 1}, self.weights[i]), c)
        for (i, j), c in x.tail.comm.items():
            sparse_addmul(comm, tensor(self.weights[j], self.weights[i]), c)
        return Nil2Word(x.tail.ab, comm)

    def to_c1(self, x: Deg1Like) -> Nil2Word:
        if isinstance(x, Deg1Expr):
            x = deg1_normalize(x, self)
        if isinstance(x, F1Element):
            x = self.project(x)
        self._check1(x)
        return x

    # degree-1 arithmetic -----------------------------------------------------

    def gen1(self, i: int) -> Nil2Word:
        return Nil2Word.gen(i)

    def add1(self, *xs: Deg1Like) -> Nil2Word:
        return self.structure1.product(self.to_c1(x) for x in xs)

    def neg1(self, x: Deg1Like) -> Nil2Word:
        return self.structure1.inv(self.to_c1(x))

    def bracket(self, u: Nil2Word, v: Nil2Word) -> Nil2Word:
        """<u, v> for degree-0 words over E0."""
        return Nil2Word.central(tensor(u.ab, v.ab))

    def act(self, x: Deg1Like, c0: Nil2Word) -> Nil2Word:
        """x^c0 = x + <c0, d x>"""
        x = self.to_c1(x)
        return self.structure1.mul(x, self.bracket(c0, self.d(x)))

    def d(self, x: Deg1Like) -> Nil2Word:
        """Boundary of a degree-1 element as a word over E0."""
        x = self.to_c1(x)
        f0 = free_structure(self.k)
        out = Nil2Word()
        for i in sorted(x.ab):
            out = f0.mul(out, f0.power(self.boundaries[i], x.ab[i]))
        comm: Dict[Tuple[int, int], int] = {}
        for (a, b), c in x.comm.items():
            if a != b:
                sparse_addmul(comm, {(a, b): 1}, -c)
        return f0.mul(out, Nil2Word.central(comm))

    # groups ------------------------------------------------------------------

    @cached_property
    def c0(self) -> Nil2Group:
        relators = list(self.r0) + [self.d(r) for r in self.r1]
        return Nil2Group(free_structure(self.k), relators, labels=self.e0)

    @cached_property
    def c1(self) -> Nil2Group:
        central: List[Tensor] = [{(a, a): 2} for a in range(self.k)]
        for w in self.weights:
            t = tensor(w, w)
            if t:
                central.append(t)
        for n in self.c0.normal_basis:
            for x in range(self.k):
                t = tensor({x: 1}, n.ab)
                if t:
                    central.append(t)
        group = Nil2Group(self.structure1, self.r1, central, labels=self.e1)
        logger.info(
            f"{self.name or 'presentation'}: |E0|={self.k} |E1|={self.m} "
            f"|R0|={len(self.r0)} |R1|={len(self.r1)}"
        )
        return group

    @cached_property
    def boundary_hom(self) -> Nil2Hom:
        central = {(a, b): Nil2Word.central({(a, b): -1}) for a in range(self.k) for b in range(a + 1, self.k)}
        return Nil2Hom(self.c1, self.c0, self.boundaries, central)

    def pi0(self) -> AbGroup:
        return self._pi0

    @cached_property
    def _pi0(self) -> AbGroup:
        rows = [dict(b.ab) for b in self.c0.normal_basis] + [w for w in self.weights if w]
        return AbGroup(self.k, rows)

    def pi1(self) -> AbGroup:
        return self.kernel.abgroup

    @cached_property
    def kernel(self) -> AbelianSubgroup:
        """ker(d: C1 -> C0) with coordinates and section."""
        return nil2_central_kernel(self.boundary_hom, spot_checks=settings.spot_checks)

    def pi0_class(self, w: Nil2Word) -> Coords:
        return self._pi0.to_coords(w.ab)

    def pi0_lift(self, coords: Sequence[int]) -> Nil2Word:
        return Nil2Word(self._pi0.from_coords(coords))

    def is_cycle(self, x: Deg1Like) -> bool:
        return self.c0.is_identity(self.d(x))

    def class_in_pi1(self, z: Deg1Like) -> Coords:
        w = self.to_c1(z)
        b = self.d(w)
        if not self.c0.is_identity(b):
            raise NotACycle("boundary is not the identity in C0", witness=self.c0.coordinates(b))
        coords = self.kernel.coords(w)
        if coords is None:
            raise AssertionError("cycle not found in the kernel subgroup")
        return coords

    def k_invariant(self) -> AbGroupHom:
        """eta[c0] = <c0, c0> on the pi0 generators."""
        p0 = self._pi0
        images = []
        for j in range(p0.ncoords):
            u = p0.from_coords(p0.generator(j))
            images.append(self.class_in_pi1(Nil2Word.central(tensor(u, u))))
        return AbGroupHom(p0, self.pi1(), images)

    def equal1(self, x: Deg1Like, y: Deg1Like) -> bool:
        return self.c1.equal(self.to_c1(x), self.to_c1(y))

    def is_zero1(self, x: Deg1Like) -> bool:
        return self.c1.is_identity(self.to_c1(x))

    def equal0(self, x: Nil2Word, y: Nil2Word) -> bool:
        return self.c0.equal(x, y)

    # transformations ---------------------------------------------------------

    def simplify(self) -> Tuple["SqmPresentation", List[Optional[int]]]:
        """Drop degree-0 generators killed by one-letter relators.

        Returns the new presentation and the old-to-new index map (None for
        removed generators).
        """
        killed = set()
        for r in self.r0:
            if len(r.ab) == 1 and not r.comm and abs(next(iter(r.ab.values()))) == 1:
                killed.add(next(iter(r.ab)))
        index: List[Optional[int]] = []
        n = 0
        for a in range(self.k):
            if a in killed:
                index.append(None)
            else:
                index.append(n)
                n += 1

        def word0(w: Nil2Word) -> Nil2Word:
            ab = {index[a]: v for a, v in w.ab.items() if index[a] is not None}
            comm = {(index[a], index[b]): v for (a, b), v in w.comm.items()
                    if index[a] is not None and index[b] is not None}
            return Nil2Word(ab, comm)

        def word1(w: Nil2Word) -> Nil2Word:
            comm = {(index[a], index[b]): v for (a, b), v in w.comm.items()
                    if index[a] is not None and index[b] is not None}
            return Nil2Word(w.ab, comm)

        r0 = [word0(r) for r in self.r0]
        r0 = [r for r in r0 if not r.is_identity()]
        out = SqmPresentation(
            [self.e0[a] for a in range(self.k) if index[a] is not None],
            self.e1,
            [word0(b) for b in self.boundaries],
            r0,
            [word1(r) for r in self.r1],
            name=self.name,
            truncated=self.truncated,
            tags1=self.tags1,
            meta=self.meta,
        )
        logger.debug(f"simplify: removed {len(killed)} degree-0 generators")
        return out, index

    def is_free0(self) -> bool:
        """True when C0 is the free nil-2 group on E0."""
        return not self.c0.normal_basis and not self.c0.central_lattice()

    # summaries and export ------------------------------------------------------

    def counts(self) -> dict:
        by_tag: Dict[str, int] = {}
        for t in self.tags1:
            by_tag[t] = by_tag.get(t, 0) + 1
        return {"E0": self.k, "E1": self.m, "R0": len(self.r0), "R1": len(self.r1), "E1_by_tag": by_tag}

    def to_json(self) -> dict:
        def enc1(w: Nil2Word) -> dict:
            return {"ab": [[i, v] for i, v in sorted(w.ab.items())],
                    "tensor": [[a, b, v] for (a, b), v in sorted(w.comm.items())]}

        return {
            "name": self.name,
            "truncated": self.truncated,
            "E0": self.e0,
            "E1": [{"label": lab, "tag": tag, "boundary": b.to_json()}
                   for lab, tag, b in zip(self.e1, self.tags1, self.boundaries)],
            "R0": [r.to_json() for r in self.r0],
            "R1": [enc1(r) for r in self.r1],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SqmPresentation":
        e1 = data.get("E1", [])
        r1 = []
        for entry in data.get("R1", []):
            ab = {int(i): int(v) for i, v in entry.get("ab", [])}
            comm = {(int(a), int(b)): int(v) for a, b, v in entry.get("tensor", [])}
            r1.append(Nil2Word(ab, comm))
        return cls(
            data.get("E0", []),
            [g["label"] for g in e1],
            [Nil2Word.from_json(g["boundary"]) for g in e1],
            [Nil2Word.from_json(r) for r in data.get("R0", [])],
            r1,
            name=data.get("name", ""),
            truncated=bool(data.get("truncated", False)),
            tags1=[g.get("tag", "named") for g in e1],
        )

    def __repr__(self) -> str:
        return f"SqmPresentation({self.name!r}, E0={self.k}, E1={self.m}, R0={len(self.r0)}, R1={len(self.r1)})"


def free_presentation(e0: Sequence[str], e1: Sequence[str] = (),
                      boundaries: Sequence[Nil2Word] = (), name: str = "free") -> SqmPresentation:
    """Free stable quadratic module on the given generators."""
    return SqmPresentation(e0, e1, list(boundaries) or [Nil2Word() for _ in e1], name=name)


def pi0(presentation: SqmPresentation) -> AbGroup:
    return presentation.pi0()


def pi1(presentation: SqmPresentation) -> AbGroup:
    return presentation.pi1()


def k_invariant(presentation: SqmPresentation) -> AbGroupHom:
    return presentation.k_invariant()


def class_in_pi1(presentation: SqmPresentation, z: Deg1Like) -> Coords:
    return presentation.class_in_pi1(z)

"""Nilpotent class-2 groups: collected words, structures and finitely presented quotients.

A word is stored as exponents on the ordered generators plus a vector over the
central symbols of its structure. With [x, y] = -x - y + x + y, the element
(u, v) stands for g_0^{u_0} g_1^{u_1} ... times the central part v, and

    (u, v)(u', v') = (u + u', v + v' + c(u, u')),
    c(u, u') = - sum_{i<j} u_j u'_i [g_i, g_j].
"""

import logging
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from app.algebra.abelian import AbGroup, Coords
from app.algebra.integer import EchelonLattice, SparseVec, egcd

logger = logging.getLogger(__name__)

Central = Dict[Hashable, int]


def _add_into(target: Dict, source: Mapping, c: int = 1) -> None:
    if not c:
        return
    for k, v in source.items():
        x = target.get(k, 0) + c * v
        if x:
            target[k] = x
        else:
            target.pop(k, None)


class Nil2Word:
    """Collected normal form: generator exponents plus central part."""

    __slots__ = ("ab", "comm")

    def __init__(self, ab: Optional[Mapping[int, int]] = None,
                 comm: Optional[Mapping[Hashable, int]] = None):
        self.ab: Dict[int, int] = {k: v for k, v in (ab or {}).items() if v}
        self.comm: Central = {k: v for k, v in (comm or {}).items() if v}

    @classmethod
    def identity(cls) -> "Nil2Word":
        return cls()

    @classmethod
    def gen(cls, i: int, exponent: int = 1) -> "Nil2Word":
        return cls({i: exponent})

    @classmethod
    def central(cls, comm: Mapping[Hashable, int]) -> "Nil2Word":
        return cls(None, comm)

    def is_identity(self) -> bool:
        return not self.ab and not self.comm

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Nil2Word):
            return NotImplemented
        return self.ab == other.ab and self.comm == other.comm

    def __hash__(self) -> int:
        return hash((frozenset(self.ab.items()), frozenset(self.comm.items())))

    def __repr__(self) -> str:
        return f"Nil2Word(ab={dict(sorted(self.ab.items()))}, comm={self.comm})"

    def to_json(self) -> dict:
        comm = []
        for k, v in sorted(self.comm.items(), key=lambda kv: repr(kv[0])):
            comm.append([*k, v] if isinstance(k, tuple) else [k, v])
        return {"ab": [[k, v] for k, v in sorted(self.ab.items())], "comm": comm}

    @classmethod
    def from_json(cls, data: Mapping) -> "Nil2Word":
        ab = {int(k): int(v) for k, v in data.get("ab", [])}
        comm = {}
        for entry in data.get("comm", []):
            *key, v = entry
            comm[tuple(int(x) for x in key) if len(key) > 1 else int(key[0])] = int(v)
        return cls(ab, comm)


class Nil2Structure:
    """Collection data: n ordered generators, central symbols, commutator table."""

    def __init__(self, ngens: int, central_keys: Sequence[Hashable]):
        self.ngens = ngens
        self.central_keys: List[Hashable] = list(central_keys)
        self.key_index: Dict[Hashable, int] = {k: i for i, k in enumerate(self.central_keys)}

    # commutator table -------------------------------------------------------

    def commutator(self, i: int, j: int) -> Central:
        """[g_i, g_j] for i < j."""
        raise NotImplementedError

    def cocycle(self, u: Mapping[int, int], v: Mapping[int, int]) -> Central:
        out: Central = {}
        if not u or not v:
            return out
        for j, uj in u.items():
            for i, vi in v.items():
                if i < j:
                    _add_into(out, self.commutator(i, j), -uj * vi)
        return out

    def pairing(self, u: Mapping[int, int], v: Mapping[int, int]) -> Central:
        """Central value of [x, y] for x, y with abelian parts u, v."""
        out = self.cocycle(u, v)
        _add_into(out, self.cocycle(v, u), -1)
        return out

    def commutator_span(self, vectors: Sequence[Mapping[int, int]]) -> List[Central]:
        """Central elements spanning [x, g_k] for x over the given abelian parts."""
        out = []
        for u in vectors:
            for k in range(self.ngens):
                c = self.pairing(u, {k: 1})
                if c:
                    out.append(c)
        return out

    # arithmetic -------------------------------------------------------------

    def mul(self, x: Nil2Word, y: Nil2Word) -> Nil2Word:
        ab = dict(x.ab)
        _add_into(ab, y.ab)
        comm = dict(x.comm)
        _add_into(comm, y.comm)
        _add_into(comm, self.cocycle(x.ab, y.ab))
        return Nil2Word(ab, comm)

    def product(self, words: Iterable[Nil2Word]) -> Nil2Word:
        out = Nil2Word()
        for w in words:
            out = self.mul(out, w)
        return out

    def inv(self, x: Nil2Word) -> Nil2Word:
        comm = {k: -v for k, v in x.comm.items()}
        _add_into(comm, self.cocycle(x.ab, x.ab))
        return Nil2Word({k: -v for k, v in x.ab.items()}, comm)

    def power(self, x: Nil2Word, n: int) -> Nil2Word:
        if n < 0:
            return self.power(self.inv(x), -n)
        ab = {k: n * v for k, v in x.ab.items()}
        comm = {k: n * v for k, v in x.comm.items()}
        _add_into(comm, self.cocycle(x.ab, x.ab), n * (n - 1) // 2)
        return Nil2Word(ab, comm)

    def comm(self, x: Nil2Word, y: Nil2Word) -> Nil2Word:
        """[x, y] = -x - y + x + y"""
        return Nil2Word(None, self.pairing(x.ab, y.ab))

    def conj(self, x: Nil2Word, by: Nil2Word) -> Nil2Word:
        """-by + x + by"""
        return self.mul(x, self.comm(x, by))

    def central_vector(self, comm: Mapping[Hashable, int]) -> SparseVec:
        return {self.key_index[k]: v for k, v in comm.items() if v}

    def central_from_vector(self, vec: Mapping[int, int]) -> Central:
        return {self.central_keys[i]: v for i, v in vec.items() if v}


class FreeNil2Structure(Nil2Structure):
    """Free nil-2 group: central symbols are the pairs (i, j), i < j."""

    def __init__(self, ngens: int):
        keys = [(i, j) for i in range(ngens) for j in range(i + 1, ngens)]
        super().__init__(ngens, keys)

    def commutator(self, i: int, j: int) -> Central:
        return {(i, j): 1}

    def cocycle(self, u: Mapping[int, int], v: Mapping[int, int]) -> Central:
        out: Central = {}
        if not u or not v:
            return out
        for j, uj in u.items():
            for i, vi in v.items():
                if i < j:
                    key = (i, j)
                    x = out.get(key, 0) - uj * vi
                    if x:
                        out[key] = x
                    else:
                        out.pop(key, None)
        return out


_FREE_CACHE: Dict[int, FreeNil2Structure] = {}


def free_structure(ngens: int) -> FreeNil2Structure:
    if ngens not in _FREE_CACHE:
        _FREE_CACHE[ngens] = FreeNil2Structure(ngens)
    return _FREE_CACHE[ngens]


def nil2_mul(u: Nil2Word, v: Nil2Word) -> Nil2Word:
    """Product in the free nil-2 group on the generators the words mention."""
    n = max(list(u.ab) + list(v.ab) + [-1]) + 1
    return free_structure(n).mul(u, v)


def nil2_inv(u: Nil2Word) -> Nil2Word:
    n = max(list(u.ab) + [-1]) + 1
    return free_structure(n).inv(u)


def nil2_comm(x: Nil2Word, y: Nil2Word) -> Nil2Word:
    n = max(list(x.ab) + list(y.ab) + [-1]) + 1
    return free_structure(n).comm(x, y)


class Nil2Group:
    """Quotient of a nil-2 structure by the normal closure of relators.

    Besides relator words, extra central relations (vectors over the central
    symbols) may be imposed. The normal subgroup is kept as an echelon basis
    of group elements on the abelian exponents plus a lattice of central
    relations; that solves the word problem.
    """

    def __init__(self, structure: Nil2Structure, relators: Iterable[Nil2Word] = (),
                 central_relations: Iterable[Mapping[Hashable, int]] = (),
                 labels: Optional[Sequence[str]] = None):
        self.structure = structure
        self.labels = list(labels) if labels is not None else None
        self.relators: List[Nil2Word] = []
        self._basis: Dict[int, Nil2Word] = {}
        self._central = EchelonLattice(len(structure.central_keys))
        for rel in central_relations:
            self._central.insert(structure.central_vector(rel))
        count = 0
        for r in relators:
            self.relators.append(r)
            self._insert(r)
            count += 1
        for c in structure.commutator_span([b.ab for b in self._basis.values()]):
            self._central.insert(structure.central_vector(c))
        self.abelianization = AbGroup(structure.ngens, [b.ab for b in self._basis.values()])
        self.central_quotient = AbGroup(len(structure.central_keys), self._central.basis())
        logger.debug(
            f"nil-2 group: {structure.ngens} generators, {count} relators, "
            f"ab={self.abelianization}, central={self.central_quotient}"
        )

    # normal subgroup ---------------------------------------------------------

    def _reduce(self, x: Nil2Word) -> Nil2Word:
        s = self.structure
        last = -1
        while True:
            later = [k for k in x.ab if k > last]
            if not later:
                return x
            j = min(later)
            b = self._basis.get(j)
            if b is not None:
                q = x.ab[j] // b.ab[j]
                if q:
                    x = s.mul(x, s.power(b, -q))
            last = j

    def _insert(self, x: Nil2Word) -> None:
        s = self.structure
        x = self._reduce(x)
        while x.ab:
            j = min(x.ab)
            b = self._basis.get(j)
            if b is None:
                if x.ab[j] < 0:
                    x = s.inv(x)
                self._basis[j] = x
                return
            a_b, a_x = b.ab[j], x.ab[j]
            g, p, q = egcd(a_b, a_x)
            self._basis[j] = s.mul(s.power(b, p), s.power(x, q))
            other = s.mul(s.power(b, a_x // g), s.power(x, -(a_b // g)))
            x = self._reduce(other)
        if x.comm:
            self._central.insert(s.central_vector(x.comm))

    @property
    def normal_basis(self) -> List[Nil2Word]:
        return [self._basis[k] for k in sorted(self._basis)]

    def central_lattice(self) -> List[SparseVec]:
        return self._central.basis()

    # word problem ------------------------------------------------------------

    def section(self, ab_coords: Sequence[int]) -> Nil2Word:
        return Nil2Word(self.abelianization.from_coords(ab_coords))

    def coordinates(self, w: Nil2Word) -> Tuple[Coords, Coords]:
        """Canonical (abelian, central) coordinates; equal iff equal elements."""
        s = self.structure
        a = self.abelianization.to_coords(w.ab)
        rest = self._reduce(s.mul(w, s.inv(self.section(a))))
        if rest.ab:
            raise AssertionError("abelian remainder outside the relator lattice")
        return a, self.central_quotient.to_coords(s.central_vector(rest.comm))

    def central_coordinates(self, comm: Mapping[Hashable, int]) -> Coords:
        """Coordinates of a central-symbol element in the central quotient."""
        return self.central_quotient.to_coords(self.structure.central_vector(comm))

    def is_identity(self, w: Nil2Word) -> bool:
        a, d = self.coordinates(w)
        return not any(a) and not any(d)

    def equal(self, x: Nil2Word, y: Nil2Word) -> bool:
        return self.is_identity(self.structure.mul(x, self.structure.inv(y)))

    def in_ab_lattice(self, vec: Mapping[int, int]) -> bool:
        return not any(self.abelianization.to_coords(vec))

    def pairing_coords(self, a: Sequence[int], b: Sequence[int]) -> Coords:
        """beta(a, b): central coordinates of [s(a), s(b)]."""
        c = self.structure.pairing(self.abelianization.from_coords(a),
                                   self.abelianization.from_coords(b))
        return self.central_coordinates(c)

    def word_from_coords(self, a: Sequence[int], d: Sequence[int]) -> Nil2Word:
        comm = self.structure.central_from_vector(self.central_quotient.from_coords(d))
        return Nil2Word(self.abelianization.from_coords(a), comm)

    # convenience -------------------------------------------------------------

    def mul(self, x: Nil2Word, y: Nil2Word) -> Nil2Word:
        return self.structure.mul(x, y)

    def inv(self, x: Nil2Word) -> Nil2Word:
        return self.structure.inv(x)

    def power(self, x: Nil2Word, n: int) -> Nil2Word:
        return self.structure.power(x, n)

    def comm(self, x: Nil2Word, y: Nil2Word) -> Nil2Word:
        return self.structure.comm(x, y)

    @property
    def ngens(self) -> int:
        return self.structure.ngens


def nil2_consistent(ngens: int, relators: Iterable[Nil2Word]) -> Nil2Group:
    """Finitely presented quotient of the free nil-2 group on ngens generators."""
    return Nil2Group(free_structure(ngens), relators)


def nil2_word_problem(group: Nil2Group, w: Nil2Word) -> Tuple[Coords, Coords]:
    return group.coordinates(w)

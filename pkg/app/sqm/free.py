"""Free stable quadratic modules: the degree-1 group F1 and its boundary and bracket.

Degree-0 words live over a combined universe: indices 0..k-1 are the degree-0
generators E0, indices k..k+m-1 are the degree-0 copies of the degree-1
generators E1. A degree-1 element is a triple

    (tensor over E0, mixed pairs (E0, E1), tail word over E1)

with the first two components central.
"""

from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from app.algebra.integer import sparse_addmul
from app.algebra.nil2 import Nil2Word, nil2_inv, nil2_mul
from app.exceptions import UnknownGenerator

TensorKey = Tuple[int, int]
Tensor = Dict[TensorKey, int]


def tensor(x: Mapping[int, int], y: Mapping[int, int]) -> Tensor:
    """x (x) y in the exterior-style tensor square: a(x)b = -b(x)a, diagonal kept."""
    out: Tensor = {}
    for a, xa in x.items():
        for b, yb in y.items():
            if a < b:
                key, c = (a, b), xa * yb
            elif a > b:
                key, c = (b, a), -xa * yb
            else:
                key, c = (a, a), xa * yb
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


class F1Element:
    """Element of the free degree-1 group."""

    __slots__ = ("tensor", "mixed", "tail")

    def __init__(self, tensor: Optional[Mapping[TensorKey, int]] = None,
                 mixed: Optional[Mapping[Tuple[int, int], int]] = None,
                 tail: Optional[Nil2Word] = None):
        self.tensor: Tensor = {k: v for k, v in (tensor or {}).items() if v}
        self.mixed: Dict[Tuple[int, int], int] = {k: v for k, v in (mixed or {}).items() if v}
        self.tail: Nil2Word = tail if tail is not None else Nil2Word()

    @classmethod
    def zero(cls) -> "F1Element":
        return cls()

    @classmethod
    def generator(cls, i: int) -> "F1Element":
        return cls(tail=Nil2Word.gen(i))

    def is_zero(self) -> bool:
        return not self.tensor and not self.mixed and self.tail.is_identity()

    def __add__(self, other: "F1Element") -> "F1Element":
        t = dict(self.tensor)
        sparse_addmul(t, other.tensor, 1)
        m = dict(self.mixed)
        sparse_addmul(m, other.mixed, 1)
        return F1Element(t, m, nil2_mul(self.tail, other.tail))

    def __neg__(self) -> "F1Element":
        return F1Element(
            {k: -v for k, v in self.tensor.items()},
            {k: -v for k, v in self.mixed.items()},
            nil2_inv(self.tail),
        )

    def __sub__(self, other: "F1Element") -> "F1Element":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, F1Element):
            return NotImplemented
        return self.tensor == other.tensor and self.mixed == other.mixed and self.tail == other.tail

    def __hash__(self) -> int:
        return hash((frozenset(self.tensor.items()), frozenset(self.mixed.items()), self.tail))

    def __repr__(self) -> str:
        return f"F1Element(tensor={self.tensor}, mixed={self.mixed}, tail={self.tail!r})"


def _check_word(w: Nil2Word, size: int) -> None:
    for i in w.ab:
        if not 0 <= i < size:
            raise UnknownGenerator(f"generator {i} outside universe of size {size}", witness=i)


def free_boundary(x: F1Element, k: int, m: Optional[int] = None) -> Nil2Word:
    """Boundary into the free nil-2 group on the combined universe.

    (a(x)b, 0, 0) -> [b, a];  (0, (a, i), 0) -> [e_i, a];  (0, 0, t) -> t.
    """
    for a, b in x.tensor:
        if not 0 <= a <= b < k:
            raise UnknownGenerator(f"tensor key {(a, b)} outside E0", witness=(a, b))
    for a, i in x.mixed:
        if not 0 <= a < k or i < 0 or (m is not None and i >= m):
            raise UnknownGenerator(f"mixed key {(a, i)} outside E0 x E1", witness=(a, i))
    if m is not None:
        _check_word(x.tail, m)
    ab = {k + i: v for i, v in x.tail.ab.items()}
    comm: Dict[TensorKey, int] = {(k + i, k + j): v for (i, j), v in x.tail.comm.items()}
    for (a, b), c in x.tensor.items():
        if a != b:
            sparse_addmul(comm, {(a, b): 1}, -c)
    for (a, i), c in x.mixed.items():
        sparse_addmul(comm, {(a, k + i): 1}, -c)
    return Nil2Word(ab, comm)


def free_bracket(u: Nil2Word, v: Nil2Word, k: int, m: Optional[int] = None) -> F1Element:
    """Bracket of two degree-0 words; bilinear on abelian parts."""
    if m is not None:
        _check_word(u, k + m)
        _check_word(v, k + m)
    mixed: Dict[Tuple[int, int], int] = {}
    tail_comm: Dict[TensorKey, int] = {}
    u0 = {p: c for p, c in u.ab.items() if p < k}
    v0 = {q: c for q, c in v.ab.items() if q < k}
    t = tensor(u0, v0)
    for p, up in u.ab.items():
        for q, vq in v.ab.items():
            c = up * vq
            if p < k <= q:
                sparse_addmul(mixed, {(p, q - k): 1}, c)
            elif q < k <= p:
                sparse_addmul(mixed, {(q, p - k): 1}, -c)
            elif p >= k and q >= k and p != q:
                # <e_p, e_q> = [e_q, e_p]
                i, j = p - k, q - k
                if i < j:
                    sparse_addmul(tail_comm, {(i, j): 1}, -c)
                else:
                    sparse_addmul(tail_comm, {(j, i): 1}, c)
    return F1Element(t, mixed, Nil2Word(None, tail_comm))


class Deg1Expr:
    """Signed, conjugated degree-1 symbols and brackets, summed left to right.

    Terms are ("gen", sign, index, conjugator) meaning sign * (e_index)^conjugator,
    and ("bracket", sign, u, v) meaning sign * <u, v>.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple] = ()):
        self.terms: Tuple[tuple, ...] = tuple(terms)

    @classmethod
    def gen(cls, index: int, sign: int = 1, conj: Optional[Nil2Word] = None) -> "Deg1Expr":
        return cls([("gen", sign, index, conj if conj is not None else Nil2Word())])

    @classmethod
    def bracket(cls, u: Nil2Word, v: Nil2Word, sign: int = 1) -> "Deg1Expr":
        return cls([("bracket", sign, u, v)])

    @classmethod
    def zero(cls) -> "Deg1Expr":
        return cls()

    def __add__(self, other: "Deg1Expr") -> "Deg1Expr":
        return Deg1Expr(self.terms + other.terms)

    def __neg__(self) -> "Deg1Expr":
        out = []
        for term in reversed(self.terms):
            out.append((term[0], -term[1]) + term[2:])
        return Deg1Expr(out)

    def __sub__(self, other: "Deg1Expr") -> "Deg1Expr":
        return self + (-other)

    def conjugated(self, by: Nil2Word) -> "Deg1Expr":
        """The expression acted on by a degree-0 word."""
        out = []
        for term in self.terms:
            if term[0] == "gen":
                out.append(("gen", term[1], term[2], nil2_mul(term[3], by)))
            else:
                out.append(term)
        return Deg1Expr(out)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"Deg1Expr({list(self.terms)!r})"


def deg1_normalize(z: Deg1Expr, presentation) -> F1Element:
    """Expand conjugations with c1^c0 = c1 + <c0, d(c1)> and sum in F1."""
    k, m = presentation.k, presentation.m
    out = F1Element()
    for term in z.terms:
        kind, sign = term[0], term[1]
        if kind == "gen":
            idx, conj = term[2], term[3]
            if not 0 <= idx < m:
                raise UnknownGenerator(f"degree-1 generator {idx} not declared", witness=idx)
            val = F1Element.generator(idx)
            if conj.ab:
                val = val + free_bracket(conj, Nil2Word.gen(k + idx), k, m)
        elif kind == "bracket":
            val = free_bracket(term[2], term[3], k, m)
        else:
            raise ValueError(f"unknown term kind {kind!r}")
        out = out + (val if sign > 0 else -val)
    return out


ExprLike = Union[Deg1Expr, F1Element, Nil2Word]


def sum_exprs(exprs: Sequence[Deg1Expr]) -> Deg1Expr:
    out: List[tuple] = []
    for e in exprs:
        out.extend(e.terms)
    return Deg1Expr(out)

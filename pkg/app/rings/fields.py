"""Exact arithmetic for the supported coefficient rings.

A ring object does the arithmetic; elements are plain immutable Python values
(int residues, int bitmasks, reduced fraction pairs, dual-number pairs) so they
can be hashed, compared with == and stored in matrices.
"""

import logging
from abc import ABC, abstractmethod
from functools import lru_cache
from typing import Any, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint, isprime, perfect_power

from app.config import settings
from app.exceptions import DegreeOverflow, NotInvertible, UnsupportedField, ZeroInput

logger = logging.getLogger(__name__)

Elem = Any


class Ring(ABC):
    """Commutative ring with canonical element representation."""

    descriptor: str = ""
    is_field: bool = False
    characteristic: int = 0

    # construction -------------------------------------------------------------

    @property
    @abstractmethod
    def zero(self) -> Elem: ...

    @property
    @abstractmethod
    def one(self) -> Elem: ...

    @abstractmethod
    def from_int(self, n: int) -> Elem: ...

    # arithmetic ---------------------------------------------------------------

    @abstractmethod
    def add(self, a: Elem, b: Elem) -> Elem: ...

    @abstractmethod
    def neg(self, a: Elem) -> Elem: ...

    @abstractmethod
    def mul(self, a: Elem, b: Elem) -> Elem: ...

    @abstractmethod
    def is_unit(self, a: Elem) -> bool: ...

    @abstractmethod
    def _inv(self, a: Elem) -> Elem: ...

    def sub(self, a: Elem, b: Elem) -> Elem:
        return self.add(a, self.neg(b))

    def inv(self, a: Elem) -> Elem:
        if not self.is_unit(a):
            raise NotInvertible(f"{self.format(a)} is not a unit in {self.descriptor}", witness=a)
        return self._inv(a)

    def div(self, a: Elem, b: Elem) -> Elem:
        return self.mul(a, self.inv(b))

    def power(self, a: Elem, n: int) -> Elem:
        if n < 0:
            a, n = self.inv(a), -n
        out, base = self.one, a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def is_zero(self, a: Elem) -> bool:
        return a == self.zero

    def sum(self, values: Sequence[Elem]) -> Elem:
        out = self.zero
        for v in values:
            out = self.add(out, v)
        return out

    # local structure ------------------------------------------------------------

    @property
    def residue_field(self) -> "Ring":
        """R/m for local rings; the ring itself for fields."""
        return self

    def residue(self, a: Elem) -> Elem:
        return a

    def lift(self, a: Elem) -> Elem:
        return a

    # enumeration ------------------------------------------------------------------

    @property
    def order(self) -> Optional[int]:
        return None

    def elements(self) -> Iterator[Elem]:
        raise UnsupportedField(f"{self.descriptor} is infinite and cannot be enumerated")

    def units(self) -> Iterator[Elem]:
        return (a for a in self.elements() if self.is_unit(a))

    def additive_generators(self) -> List[Elem]:
        """Elements generating (R, +) as an abelian group."""
        raise UnsupportedField(f"{self.descriptor} has no finite additive basis")

    def unit_generators(self) -> List[Elem]:
        raise UnsupportedField(f"{self.descriptor} has no finite unit group")

    def unit_orders(self) -> List[int]:
        raise UnsupportedField(f"{self.descriptor} has no finite unit group")

    def unit_log(self, u: Elem) -> Tuple[int, ...]:
        """Exponents of u over unit_generators()."""
        raise UnsupportedField(f"{self.descriptor} has no finite unit group")

    @abstractmethod
    def random(self, rng: np.random.Generator) -> Elem: ...

    def random_unit(self, rng: np.random.Generator, tries: int = 1000) -> Elem:
        for _ in range(tries):
            a = self.random(rng)
            if self.is_unit(a):
                return a
        return self.one

    # text -----------------------------------------------------------------------

    @abstractmethod
    def format(self, a: Elem) -> str: ...

    @abstractmethod
    def parse(self, text: str) -> Elem: ...

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ring) and other.descriptor == self.descriptor

    def __hash__(self) -> int:
        return hash(self.descriptor)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.descriptor!r})"


class _FiniteField(Ring):
    """Shared unit-group bookkeeping for F_q: the unit group is cyclic."""

    is_field = True

    def is_unit(self, a: Elem) -> bool:
        return a != self.zero

    @property
    def primitive_element(self) -> Elem:
        return self._log_table[1]

    @property
    def _log_table(self) -> Tuple[dict, Elem]:
        cached = getattr(self, "_log_cache", None)
        if cached is None:
            n = self.order - 1
            primes = list(factorint(n)) if n > 1 else []
            gen = self.one
            for a in self.elements():
                if a == self.zero:
                    continue
                if all(self.power(a, n // p) != self.one for p in primes):
                    gen = a
                    break
            table, x = {}, self.one
            for e in range(n):
                table[x] = e
                x = self.mul(x, gen)
            cached = (table, gen)
            self._log_cache = cached
        return cached

    def unit_generators(self) -> List[Elem]:
        return [self._log_table[1]]

    def unit_orders(self) -> List[int]:
        return [self.order - 1]

    def unit_log(self, u: Elem) -> Tuple[int, ...]:
        if u == self.zero:
            raise ZeroInput("zero has no logarithm")
        return (self._log_table[0][u],)


class PrimeField(_FiniteField):
    """F_p with residues 0..p-1."""

    def __init__(self, p: int):
        if int(p) != p or not isprime(p):
            raise UnsupportedField(f"{p} is not a prime")
        self.p = int(p)
        self.characteristic = self.p
        self.descriptor = f"Fp:{p}"

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1 % self.p

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def _inv(self, a: int) -> int:
        return pow(a, -1, self.p)

    @property
    def order(self) -> int:
        return self.p

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def additive_generators(self) -> List[int]:
        return [1]

    def random(self, rng: np.random.Generator) -> int:
        return int(rng.integers(self.p))

    def format(self, a: int) -> str:
        return str(a)

    def parse(self, text: str) -> int:
        return int(text) % self.p


# x^m + lower terms, one fixed irreducible per degree
BINARY_MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
}


def pmul(a: int, b: int) -> int:
    """Carry-less product of F2[t] polynomials stored as bitmasks."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def pdeg(a: int) -> int:
    return a.bit_length() - 1


def pdivmod(a: int, b: int) -> Tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    db = pdeg(b)
    while a and pdeg(a) >= db:
        s = pdeg(a) - db
        q ^= 1 << s
        a ^= b << s
    return q, a


def pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, pdivmod(a, b)[1]
    return a


def pformat(a: int, var: str = "t") -> str:
    if a == 0:
        return "0"
    terms = []
    for e in range(pdeg(a), -1, -1):
        if a >> e & 1:
            terms.append("1" if e == 0 else var if e == 1 else f"{var}^{e}")
    return "+".join(terms)


def pparse(text: str, var: str = "t") -> int:
    text = text.replace(" ", "")
    if text in ("", "0"):
        return 0
    out = 0
    for term in text.split("+"):
        if term == "1":
            e = 0
        elif term == var:
            e = 1
        elif term.startswith(f"{var}^"):
            e = int(term[len(var) + 1:])
        else:
            raise ValueError(f"cannot parse polynomial term {term!r}")
        out ^= 1 << e
    return out


def even_part_sqrt(a: int) -> Optional[int]:
    """sqrt in F2[t] when every exponent is even, else None."""
    out, e = 0, 0
    while a:
        if a & 1:
            if e % 2:
                return None
            out |= 1 << (e // 2)
        a >>= 1
        e += 1
    return out


class BinaryField(_FiniteField):
    """F_{2^m} in the polynomial basis over the fixed modulus of BINARY_MODULI."""

    characteristic = 2

    def __init__(self, m: int):
        if m not in BINARY_MODULI:
            raise UnsupportedField(f"F_2^{m} is outside the supported degrees 1..8")
        self.m = m
        self.modulus = BINARY_MODULI[m]
        self.descriptor = f"F2m:{m}"

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def from_int(self, n: int) -> int:
        return n & 1

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def neg(self, a: int) -> int:
        return a

    def mul(self, a: int, b: int) -> int:
        return pdivmod(pmul(a, b), self.modulus)[1]

    def _inv(self, a: int) -> int:
        return self.power(a, (1 << self.m) - 2)

    def sqrt(self, a: int) -> int:
        return self.power(a, 1 << (self.m - 1))

    @property
    def order(self) -> int:
        return 1 << self.m

    def elements(self) -> Iterator[int]:
        return iter(range(1 << self.m))

    def additive_generators(self) -> List[int]:
        return [1 << i for i in range(self.m)]

    def random(self, rng: np.random.Generator) -> int:
        return int(rng.integers(1 << self.m))

    def format(self, a: int) -> str:
        return pformat(a, "w")

    def parse(self, text: str) -> int:
        return pdivmod(pparse(text, "w"), self.modulus)[1]


class F2RationalFunctions(Ring):
    """F2(t); elements are reduced (numerator, denominator) bitmask pairs."""

    is_field = True
    characteristic = 2
    descriptor = "F2(t)"

    def __init__(self, degree_cap: Optional[int] = None):
        self.degree_cap = degree_cap if degree_cap is not None else settings.f2t_degree_cap

    def make(self, num: int, den: int = 1) -> Tuple[int, int]:
        if den == 0:
            raise ZeroInput("zero denominator")
        if num == 0:
            return (0, 1)
        g = pgcd(num, den)
        num, den = pdivmod(num, g)[0], pdivmod(den, g)[0]
        if max(pdeg(num), pdeg(den)) > self.degree_cap:
            raise DegreeOverflow(
                f"degree {max(pdeg(num), pdeg(den))} exceeds cap {self.degree_cap}",
                witness=(num, den),
            )
        return (num, den)

    @property
    def zero(self) -> Tuple[int, int]:
        return (0, 1)

    @property
    def one(self) -> Tuple[int, int]:
        return (1, 1)

    @property
    def t(self) -> Tuple[int, int]:
        return (0b10, 1)

    def from_int(self, n: int) -> Tuple[int, int]:
        return (n & 1, 1)

    def add(self, a, b):
        return self.make(pmul(a[0], b[1]) ^ pmul(b[0], a[1]), pmul(a[1], b[1]))

    def neg(self, a):
        return a

    def mul(self, a, b):
        return self.make(pmul(a[0], b[0]), pmul(a[1], b[1]))

    def is_unit(self, a) -> bool:
        return a[0] != 0

    def _inv(self, a):
        return (a[1], a[0])

    def random(self, rng: np.random.Generator, max_degree: int = 3):
        num = int(rng.integers(1 << (max_degree + 1)))
        den = int(rng.integers(1, 1 << (max_degree + 1)))
        return self.make(num, den)

    def format(self, a) -> str:
        if a[1] == 1:
            return pformat(a[0])
        return f"({pformat(a[0])})/({pformat(a[1])})"

    def parse(self, text: str):
        text = text.replace(" ", "")
        if "/" in text:
            num, den = text.split("/", 1)
            return self.make(pparse(num.strip("()")), pparse(den.strip("()")))
        return self.make(pparse(text.strip("()")))


class DualNumbers(Ring):
    """k[eps]/(eps^2) over a finite field or F2(t); elements (a, b) = a + b eps."""

    def __init__(self, base: Ring):
        if not base.is_field:
            raise UnsupportedField(f"dual numbers need a field, got {base.descriptor}")
        self.base = base
        self.characteristic = base.characteristic
        self.descriptor = f"dual:{base.descriptor}"

    @property
    def zero(self):
        return (self.base.zero, self.base.zero)

    @property
    def one(self):
        return (self.base.one, self.base.zero)

    @property
    def eps(self):
        return (self.base.zero, self.base.one)

    def from_int(self, n: int):
        return (self.base.from_int(n), self.base.zero)

    def embed(self, a: Elem, b: Optional[Elem] = None):
        return (a, self.base.zero if b is None else b)

    def add(self, x, y):
        k = self.base
        return (k.add(x[0], y[0]), k.add(x[1], y[1]))

    def neg(self, x):
        k = self.base
        return (k.neg(x[0]), k.neg(x[1]))

    def mul(self, x, y):
        k = self.base
        return (k.mul(x[0], y[0]), k.add(k.mul(x[0], y[1]), k.mul(x[1], y[0])))

    def is_unit(self, x) -> bool:
        return x[0] != self.base.zero

    def _inv(self, x):
        k = self.base
        a = k.inv(x[0])
        return (a, k.neg(k.mul(x[1], k.mul(a, a))))

    @property
    def residue_field(self) -> Ring:
        return self.base

    def residue(self, x):
        return x[0]

    def lift(self, a):
        return (a, self.base.zero)

    def epsilon_part(self, x):
        return x[1]

    @property
    def order(self) -> Optional[int]:
        o = self.base.order
        return None if o is None else o * o

    def elements(self) -> Iterator[tuple]:
        values = list(self.base.elements())
        return ((a, b) for a in values for b in values)

    def additive_generators(self) -> List[tuple]:
        gens = self.base.additive_generators()
        return [(g, self.base.zero) for g in gens] + [(self.base.zero, g) for g in gens]

    def unit_generators(self) -> List[tuple]:
        k = self.base
        return [(g, k.zero) for g in k.unit_generators()] + [(k.one, g) for g in k.additive_generators()]

    def unit_orders(self) -> List[int]:
        return self.base.unit_orders() + [self.base.characteristic] * len(self.base.additive_generators())

    def unit_log(self, u) -> Tuple[int, ...]:
        # u = a (1 + eps b/a); the second factor is additive in b/a
        k = self.base
        if not self.is_unit(u):
            raise ZeroInput(f"{self.format(u)} is not a unit")
        head = k.unit_log(u[0])
        x = k.div(u[1], u[0])
        return head + additive_coordinates(k, x)

    def random(self, rng: np.random.Generator):
        return (self.base.random(rng), self.base.random(rng))

    def format(self, x) -> str:
        k = self.base
        if x[1] == k.zero:
            return k.format(x[0])
        tail = "eps" if x[1] == k.one else f"({k.format(x[1])})eps"
        if x[0] == k.zero:
            return tail
        return f"{k.format(x[0])}+{tail}"

    def parse(self, text: str):
        k = self.base
        text = text.replace(" ", "")
        if "eps" not in text:
            return (k.parse(text), k.zero)
        head, _, _ = text.rpartition("eps")
        if head.endswith(")"):
            start = head.rfind("(")
            coeff = k.parse(head[start + 1:-1])
            head = head[:start]
        else:
            coeff = k.one
        head = head.rstrip("+")
        return (k.parse(head) if head else k.zero, coeff)


class Integers(Ring):
    """Z, used for the integer descriptor only."""

    descriptor = "Z"

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def from_int(self, n: int) -> int:
        return n

    def add(self, a: int, b: int) -> int:
        return a + b

    def neg(self, a: int) -> int:
        return -a

    def mul(self, a: int, b: int) -> int:
        return a * b

    def is_unit(self, a: int) -> bool:
        return a in (1, -1)

    def _inv(self, a: int) -> int:
        return a

    def random(self, rng: np.random.Generator) -> int:
        return int(rng.integers(-9, 10))

    def format(self, a: int) -> str:
        return str(a)

    def parse(self, text: str) -> int:
        return int(text)


def additive_coordinates(k: Ring, x: Elem) -> Tuple[int, ...]:
    """Coordinates of x over k.additive_generators() (prime-field coefficients)."""
    if isinstance(k, PrimeField):
        return (x,)
    if isinstance(k, BinaryField):
        return tuple((x >> i) & 1 for i in range(k.m))
    raise UnsupportedField(f"no additive coordinates for {k.descriptor}")


def field_of_order(q: int) -> Ring:
    """F_q for q prime or a power of two."""
    if isprime(q):
        return PrimeField(q)
    pp = perfect_power(q)
    if pp and pp[0] == 2:
        return BinaryField(int(pp[1]))
    if pp and isprime(pp[0]):
        raise UnsupportedField(f"F_{q}: odd prime powers are not supported")
    raise UnsupportedField(f"{q} is not a prime power")


@lru_cache(maxsize=None)
def ring_from_descriptor(descriptor: str) -> Ring:
    """Parse "Fp:<p>", "F2m:<m>", "F<q>", "F2(t)", "dual:<base>" or "Z"."""
    d = descriptor.strip()
    try:
        if d == "Z":
            return Integers()
        if d == "F2(t)":
            return F2RationalFunctions()
        if d.startswith("dual:"):
            return DualNumbers(ring_from_descriptor(d[len("dual:"):]))
        if d.startswith("Fp:"):
            return PrimeField(int(d[3:]))
        if d.startswith("F2m:"):
            return BinaryField(int(d[4:]))
        if d.startswith("F") and d[1:].isdigit():
            return field_of_order(int(d[1:]))
    except ValueError as exc:
        raise UnsupportedField(f"bad ring descriptor {descriptor!r}: {exc}") from exc
    raise UnsupportedField(f"unknown ring descriptor {descriptor!r}")

"""The initial meadow of characteristic 0 as a datatype.

An element is a sequence indexed by the primes, one coordinate in each
GF(p).  Only eventually-rational sequences are reachable from the
constants: finitely many explicit residues followed by the zero-totalized
reductions of a single rational ``tail``.  The canonical form keeps the
fewest explicit residues, so equal elements are equal as values.

Nothing here consults the index bound or the normal-form construction;
that independence is what lets this module check the decision procedure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import PRIMES, mod_inv, prime, prime_factors, rat_from_str, rat_inv_z, rat_to_str, ztmod
from .term import Algebra, Term, fold


@dataclass(frozen=True)
class RawElement:
    """Residues for the first ``k`` primes plus a rational tail; not reduced."""

    residues: tuple[int, ...]
    tail: Fraction

    def __post_init__(self) -> None:
        for i, r in enumerate(self.residues):
            if not 0 <= r < prime(i):
                raise ValueError(f"residue {r} out of range for p={prime(i)}")

    @property
    def k(self) -> int:
        return len(self.residues)

    def coordinate(self, i: int) -> int:
        if i < len(self.residues):
            return self.residues[i]
        return ztmod(self.tail, prime(i))


@dataclass(frozen=True)
class MeadowElement(RawElement):
    """Canonical element: the last explicit residue differs from the tail's."""

    def __post_init__(self) -> None:
        super().__post_init__()
        k = len(self.residues)
        if k and self.residues[-1] == ztmod(self.tail, prime(k - 1)):
            raise ValueError("not canonical: trailing residue agrees with the tail")

    def __add__(self, other: MeadowElement) -> MeadowElement:
        return elem_ring_op("add", self, other)

    def __mul__(self, other: MeadowElement) -> MeadowElement:
        return elem_ring_op("mul", self, other)

    def __neg__(self) -> MeadowElement:
        return elem_ring_op("neg", self)

    def __sub__(self, other: MeadowElement) -> MeadowElement:
        return self + (-other)

    def inverse(self) -> MeadowElement:
        return elem_inv(self)

    def is_zero(self) -> bool:
        return not self.residues and self.tail == 0

    def to_json(self) -> dict:
        return {"k": self.k, "residues": list(self.residues), "tail": rat_to_str(self.tail)}

    @classmethod
    def from_json(cls, data: dict) -> MeadowElement:
        residues = tuple(int(r) for r in data["residues"])
        if "k" in data and data["k"] != len(residues):
            raise ValueError("k does not match the number of residues")
        return cls(residues, rat_from_str(data["tail"]))

    def __str__(self) -> str:
        return f"k={self.k} residues={list(self.residues)} tail={rat_to_str(self.tail)}"


def canonicalize(r: RawElement) -> MeadowElement:
    residues = list(r.residues)
    while residues and residues[-1] == ztmod(r.tail, prime(len(residues) - 1)):
        residues.pop()
    return MeadowElement(tuple(residues), r.tail)


def coordinate(a: RawElement, i: int) -> int:
    return a.coordinate(i)


def rational(q: Fraction | int) -> MeadowElement:
    """The element whose explicit part is empty and whose tail is ``q``."""
    return MeadowElement((), Fraction(q))


ZERO = rational(0)
ONE = rational(1)


def _coverage(q: Fraction) -> int:
    """One past the largest prime index dividing the denominator of ``q``."""
    factors = prime_factors(q.denominator)
    return PRIMES.index_of(factors[-1]) + 1 if factors else 0


def _materialize(a: RawElement, k: int) -> list[int]:
    return list(a.residues) + [ztmod(a.tail, prime(i)) for i in range(a.k, k)]


def elem_ring_op(op: str, a: MeadowElement, b: MeadowElement | None = None) -> MeadowElement:
    if op == "neg":
        if b is not None:
            raise TypeError("neg takes one operand")
        residues = tuple(-r % prime(i) for i, r in enumerate(a.residues))
        return canonicalize(RawElement(residues, -a.tail))
    if b is None:
        raise TypeError(f"{op} takes two operands")
    if op == "add":
        tail = a.tail + b.tail
    elif op == "mul":
        tail = a.tail * b.tail
    else:
        raise ValueError(f"unknown element operation {op!r}")
    # reduction of the tails commutes with + and * only at primes dividing
    # neither denominator, so those primes get explicit coordinates
    k = max(a.k, b.k, _coverage(a.tail), _coverage(b.tail))
    xs, ys = _materialize(a, k), _materialize(b, k)
    if op == "add":
        residues = tuple((x + y) % prime(i) for i, (x, y) in enumerate(zip(xs, ys)))
    else:
        residues = tuple(x * y % prime(i) for i, (x, y) in enumerate(zip(xs, ys)))
    return canonicalize(RawElement(residues, tail))


def elem_inv(a: MeadowElement) -> MeadowElement:
    # zero-totalized reduction commutes with zero-totalized inversion at
    # every prime (a prime dividing one side of n/m sends both n/m and m/n
    # to 0), so no coverage extension is needed
    residues = tuple(mod_inv(r, prime(i)) for i, r in enumerate(a.residues))
    return canonicalize(RawElement(residues, rat_inv_z(a.tail)))


class ElementAlgebra(Algebra[MeadowElement]):
    def lit(self, n):
        return rational(n)

    def neg(self, a):
        return -a

    def inv(self, a):
        return elem_inv(a)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b


def from_term(t: Term) -> MeadowElement:
    """Interpret a closed term in the initial meadow."""
    return fold(t, ElementAlgebra())


def from_raw(residues, tail) -> MeadowElement:
    return canonicalize(RawElement(tuple(residues), Fraction(tail)))

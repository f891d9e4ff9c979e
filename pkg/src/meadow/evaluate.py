"""Evaluation of closed terms: into the rationals, into GF(p_i), and the
index bound past which the prime-field values follow the rational value.

The bound is carried internally as a denominator ceiling ``D``: the bound
index is ``mu(D)``, the number of primes ``<= D``.  Comparisons against the
bound (``i < psi``) reduce to ``prime(i) <= D`` and never need the prime
count itself, which keeps deciding cheap when denominators are large.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, prod

import numpy as np

from .exactnum import PRIMES, mod_inv, mu, prime, rat_inv_z, split_factors, ztmod
from .term import Algebra, Term, fold

# residue products must fit in int64
_VECTOR_PRIME_LIMIT = 3_000_000_000


class RationalAlgebra(Algebra[Fraction]):
    def lit(self, n):
        return Fraction(n)

    def neg(self, a):
        return -a

    def inv(self, a):
        return rat_inv_z(a)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b


class PrimeFieldAlgebra(Algebra[int]):
    """GF(p) with zero-totalized inverse; residues in ``[0, p)``."""

    def __init__(self, p: int):
        self.p = p

    def lit(self, n):
        return n % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        return mod_inv(a, self.p)

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return a * b % self.p


class NonUnitInverse(ArithmeticError):
    """Raised by :class:`ResidueRingAlgebra` on inverting a zero divisor."""

    def __init__(self, modulus: int, factor: int):
        super().__init__(f"{factor} divides {modulus}")
        self.modulus = modulus
        self.factor = factor


class ResidueRingAlgebra(Algebra[int]):
    """Z/n with ``0^-1 = 0``.

    While every inverted value is 0 or a unit, reducing the result modulo
    any prime ``p`` dividing ``n`` gives the value in GF(p).  Inverting a
    zero divisor raises :class:`NonUnitInverse` with a proper factor of
    ``n`` so the caller can split the modulus.
    """

    def __init__(self, n: int):
        self.n = n

    def lit(self, n):
        return n % self.n

    def neg(self, a):
        return -a % self.n

    def inv(self, a):
        if a == 0:
            return 0
        g = gcd(a, self.n)
        if g > 1:
            raise NonUnitInverse(self.n, g)
        return pow(a, -1, self.n)

    def add(self, a, b):
        return (a + b) % self.n

    def mul(self, a, b):
        return a * b % self.n


class MultiPrimeAlgebra(Algebra[np.ndarray]):
    """GF(p) for many primes at once; one int64 lane per prime."""

    def __init__(self, primes):
        self.p = np.asarray(primes, dtype=np.int64)
        if self.p.size and int(self.p.max()) >= _VECTOR_PRIME_LIMIT:
            raise ValueError("prime too large for int64 lanes")
        self._exp = np.maximum(self.p - 2, 1)
        self._bits = int(self._exp.max()).bit_length() if self.p.size else 0

    def lit(self, n):
        if n < _VECTOR_PRIME_LIMIT:
            return np.int64(n) % self.p
        return np.array([n % int(q) for q in self.p], dtype=np.int64)

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        # Fermat: a^(p-2); 0 stays 0, and p = 2 uses exponent 1 (a^-1 = a)
        result = np.ones_like(self.p)
        base = np.array(a, dtype=np.int64, copy=True)
        e = self._exp
        for bit in range(self._bits):
            use = ((e >> bit) & 1).astype(bool)
            result = np.where(use, result * base % self.p, result)
            base = base * base % self.p
        return np.where(a == 0, 0, result)

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return a * b % self.p


def phi_many(primes, t: Term) -> dict[int, int]:
    """Values of ``t`` in GF(p) for every ``p`` in ``primes``."""
    primes = list(primes)
    small = [p for p in primes if p < _VECTOR_PRIME_LIMIT]
    out: dict[int, int] = {}
    if len(small) > 2:
        values = fold(t, MultiPrimeAlgebra(small), release=True)
        out.update(zip(small, (int(v) for v in np.broadcast_to(values, (len(small),)))))
    for p in primes:
        if p not in out:
            out[p] = phi_p(p, t)
    return out


def phi(t: Term) -> Fraction:
    """Rational value of ``t`` with ``0^-1 = 0``."""
    return fold(t, RationalAlgebra())


def phi_n(i: int, t: Term) -> int:
    """Value of ``t`` in the prime field of order ``prime(i)``."""
    return fold(t, PrimeFieldAlgebra(prime(i)))


def phi_p(p: int, t: Term) -> int:
    """Same as :func:`phi_n` but addressed by the prime itself."""
    return fold(t, PrimeFieldAlgebra(p))


@dataclass(frozen=True)
class _Node:
    value: Fraction
    bound: int  # denominator ceiling; psi == mu(bound)


class _ProfileAlgebra(Algebra[_Node]):
    def __init__(self):
        # operand denominators at + and * nodes with both operands nonzero
        self.denominators: set[int] = set()

    def lit(self, n):
        return _Node(Fraction(n), 1)

    def neg(self, a):
        return _Node(-a.value, a.bound)

    def inv(self, a):
        return _Node(rat_inv_z(a.value), a.bound)

    def _binary(self, a, b, value):
        bound = max(a.bound, b.bound)
        if a.value != 0 and b.value != 0:
            m, l = a.value.denominator, b.value.denominator
            bound = max(bound, m, l)
            if m > 1:
                self.denominators.add(m)
            if l > 1:
                self.denominators.add(l)
        return _Node(value, bound)

    def add(self, a, b):
        return self._binary(a, b, a.value + b.value)

    def mul(self, a, b):
        return self._binary(a, b, a.value * b.value)


@dataclass
class EvalProfile:
    """Rational value, index bound and prime-field values of one term.

    ``residue(i)`` is computed on demand and cached.  Beyond the bound every
    residue equals ``ztmod(phi, prime(i))``; more sharply, only primes that
    divide an operand denominator of some ``+`` or ``*`` node can deviate
    from that rule (the exceptional primes).
    """

    term: Term
    phi: Fraction
    bound: int
    denominators: frozenset[int]
    _residues: dict[int, int] = field(default_factory=dict, repr=False)
    _exceptional: dict[int, int] = field(default_factory=dict, repr=False)

    FIRST_CHUNK = 32

    @cached_property
    def psi(self) -> int:
        return mu(self.bound)

    def below_bound(self, i: int) -> bool:
        """``i < psi`` without counting primes."""
        return prime(i) <= self.bound

    def residue(self, i: int) -> int:
        r = self._residues.get(i)
        if r is None:
            p = prime(i)
            r = self.residue_at(p)
            self._residues[i] = r
        return r

    @cached_property
    def _denominator_product(self) -> int:
        return prod(self.denominators)

    def is_exceptional(self, p: int) -> bool:
        return self._denominator_product % p == 0

    def residue_at(self, p: int) -> int:
        r = self._exceptional.get(p)
        if r is not None:
            return r
        if not self.is_exceptional(p):
            return ztmod(self.phi, p)
        # evaluate this prime together with the next exceptional ones; the
        # batch doubles each time so ascending scans stay linear
        width = max(self.FIRST_CHUNK, len(self._exceptional))
        chunk = [p]
        if p <= PRIMES.limit:
            start = PRIMES.index_of(p) + 1
            for j in range(start, start + 8 * width):
                q = PRIMES[j]
                if q > self.bound or len(chunk) >= width:
                    break
                if q not in self._exceptional and self.is_exceptional(q):
                    chunk.append(q)
        self.prefetch(chunk)
        return self._exceptional[p]

    def prefetch(self, primes) -> None:
        """Evaluate the exceptional ones among ``primes`` in a single pass."""
        todo = [p for p in primes if p not in self._exceptional and self.is_exceptional(p)]
        if todo:
            self._exceptional.update(phi_many(todo, self.term))

    @cached_property
    def _factored(self) -> tuple[list[int], list[int]]:
        return split_factors(self.denominators)

    @property
    def exceptional_primes(self) -> frozenset[int]:
        """Certified exceptional primes; see ``hard_cofactors`` for the rest."""
        return frozenset(self._factored[0])

    @property
    def hard_cofactors(self) -> tuple[int, ...]:
        """Pairwise coprime products of exceptional primes too large to
        identify by trial division."""
        return tuple(self._factored[1])


def profile(t: Term) -> EvalProfile:
    alg = _ProfileAlgebra()
    node = fold(t, alg)
    return EvalProfile(t, node.value, node.bound, frozenset(alg.denominators))


def psi_bound(t: Term) -> int:
    """Denominator ceiling ``D`` with ``psi(t) == mu(D)``."""
    return fold(t, _ProfileAlgebra()).bound


def psi(t: Term) -> int:
    """Index bound: for ``i >= psi(t)``, ``phi_n(i, t) == ztmod(phi(t), prime(i))``.

    At ``+`` and ``*`` nodes whose operands both have nonzero rational value,
    the bound is raised past every prime up to the larger operand denominator.
    """
    return mu(psi_bound(t))

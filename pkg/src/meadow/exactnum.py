"""Exact arithmetic: zero-totalized rationals, a growing prime table, and
residues modulo a prime.

Rationals are plain :class:`fractions.Fraction` values; the helpers here add
the zero-totalized inverse and the reduction of a rational into a prime field.
"""

from __future__ import annotations

import threading
from bisect import bisect_left, bisect_right
from fractions import Fraction
from math import gcd, isqrt, prod
from typing import Iterator

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rat_normalize(n: int, d: int) -> Fraction:
    """Reduced fraction ``n/d`` with the sign moved into the numerator."""
    if d == 0:
        raise ValueError("zero denominator")
    return Fraction(n, d)


def rat_ring_op(op: str, a: Fraction, b: Fraction | None = None) -> Fraction:
    if op == "neg":
        if b is not None:
            raise TypeError("neg takes one operand")
        return -a
    if b is None:
        raise TypeError(f"{op} takes two operands")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown rational operation {op!r}")


def rat_inv_z(a: Fraction) -> Fraction:
    """Zero-totalized inverse: ``0 -> 0``, ``n/m -> m/n``."""
    if a == 0:
        return ZERO
    return 1 / a


def rat_to_str(q: Fraction) -> str:
    """Serialize as ``"0"`` or ``"[-]n/m"`` (denominator always written)."""
    if q == 0:
        return "0"
    return f"{q.numerator}/{q.denominator}"


def rat_from_str(text: str) -> Fraction:
    text = text.strip()
    if text == "0":
        return ZERO
    num, sep, den = text.partition("/")
    if not sep:
        raise ValueError(f"expected '0' or 'n/m', got {text!r}")
    return rat_normalize(int(num), int(den))


class PrimeTable:
    """Monotone cache of the primes ``2, 3, 5, ...``.

    The table grows by re-sieving to a larger bound; existing entries never
    change.  ``max_limit`` bounds the sieve so a runaway request fails loudly
    instead of exhausting memory.
    """

    def __init__(self, initial_limit: int = 1 << 12, max_limit: int = 50_000_000):
        self.max_limit = max_limit
        self._lock = threading.Lock()
        self._limit = 1
        self._primes: list[int] = []
        self._extend_to(initial_limit)

    @property
    def limit(self) -> int:
        """All primes ``<= limit`` are present."""
        return self._limit

    def _extend_to(self, bound: int) -> None:
        with self._lock:
            if bound <= self._limit:
                return
            bound = max(bound, 2 * self._limit)
            if bound > self.max_limit:
                if self._limit >= self.max_limit:
                    raise OverflowError(
                        f"prime table limit {self.max_limit} exceeded"
                    )
                bound = self.max_limit
            sieve = bytearray([1]) * (bound + 1)
            sieve[0:2] = b"\x00\x00"
            for p in range(2, isqrt(bound) + 1):
                if sieve[p]:
                    sieve[p * p :: p] = bytes(len(range(p * p, bound + 1, p)))
            fresh = [p for p in range(self._limit + 1, bound + 1) if sieve[p]]
            # publish a new list so concurrent readers never see a partial one
            self._primes = self._primes + fresh
            self._limit = bound

    def ensure_above(self, value: int) -> None:
        """Grow until the table holds a prime strictly greater than ``value``."""
        while not self._primes or self._primes[-1] <= value:
            self._extend_to(max(2 * value + 2, 2 * self._limit))

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError("prime index must be nonnegative")
        while len(self._primes) <= i:
            self._extend_to(2 * self._limit)
        return self._primes[i]

    def upto(self, bound: int) -> list[int]:
        """All primes ``<= bound``."""
        self._extend_to(bound)
        primes = self._primes
        return primes[: bisect_right(primes, bound)]

    def index_of(self, p: int) -> int:
        """Index of the prime ``p`` (``index_of(2) == 0``)."""
        self._extend_to(p)
        primes = self._primes
        i = bisect_left(primes, p)
        if i == len(primes) or primes[i] != p:
            raise ValueError(f"{p} is not prime")
        return i

    def count_upto(self, bound: int) -> int:
        """Number of primes ``<= bound``."""
        if bound < 2:
            return 0
        self._extend_to(bound)
        return bisect_right(self._primes, bound)

    def __iter__(self) -> Iterator[int]:
        i = 0
        while True:
            yield self[i]
            i += 1


PRIMES = PrimeTable()


def prime(i: int) -> int:
    """The ``i``-th prime, counting from ``prime(0) == 2``."""
    return PRIMES[i]


def mu(d: int) -> int:
    """Least index ``i`` with ``prime(i) > d``."""
    if d < 2:
        return 0
    return PRIMES.count_upto(d)


def mod_inv(a: int, p: int) -> int:
    """Zero-totalized inverse in GF(p): 0 maps to 0."""
    a %= p
    if a == 0:
        return 0
    return pow(a, -1, p)


def ztmod(q: Fraction, p: int) -> int:
    """Image of ``q`` in GF(p) with zero-totalized division.

    A denominator divisible by ``p`` inverts to 0, so the whole value is 0.
    """
    return q.numerator * mod_inv(q.denominator, p) % p


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``|n|`` in ascending order, by trial division."""
    n = abs(n)
    found: list[int] = []
    if n < 2:
        return found
    for p in PRIMES:
        if p * p > n:
            break
        if n % p == 0:
            found.append(p)
            n //= p
            while n % p == 0:
                n //= p
    if n > 1:
        found.append(n)
    return found


def prime_factor_indices(n: int) -> list[int]:
    """Indices ``i`` such that ``prime(i)`` divides ``n``."""
    return [PRIMES.index_of(p) for p in prime_factors(n)]


def is_squarefree(n: int) -> bool:
    n = abs(n)
    for p in prime_factors(n):
        if n % (p * p) == 0:
            return False
    return True


# primes up to this bound are found by trial division; larger prime
# factors are only certified when the leftover cofactor is below its square
SMALL_FACTOR_LIMIT = 1 << 16


def split_factors(values, limit: int = SMALL_FACTOR_LIMIT) -> tuple[list[int], list[int]]:
    """Partly factor a collection of positive integers.

    Returns ``(primes, hard)``: ``primes`` are the certified prime factors in
    ascending order, and ``hard`` is a pairwise coprime list of cofactors
    whose prime factors all exceed ``limit`` and were not identified.  Every
    prime dividing some value divides exactly one of the two parts.
    """
    values = [abs(v) for v in values if abs(v) > 1]
    if not values:
        return [], []
    small = PRIMES.upto(limit)
    g = gcd(prod(values), _primorial(limit))
    found = []
    for p in small:
        if g == 1:
            break
        if g % p == 0:
            found.append(p)
            g //= p
    radical = prod(found)
    leftovers = set()
    for v in values:
        while (h := gcd(v, radical)) > 1:
            v //= h
        if v > 1:
            leftovers.add(v)
    hard = []
    for v in coprime_base(leftovers):
        if v <= limit * limit:
            found.append(v)  # no factor <= limit, so prime
        else:
            hard.append(v)
    return sorted(found), sorted(hard)


_PRIMORIALS: dict[int, int] = {}


def _primorial(limit: int) -> int:
    value = _PRIMORIALS.get(limit)
    if value is None:
        value = _PRIMORIALS[limit] = prod(PRIMES.upto(limit))
    return value


def coprime_base(values) -> list[int]:
    """Pairwise coprime integers > 1 with the same prime support as ``values``."""
    base: list[int] = []
    todo = [v for v in values if v > 1]
    while todo:
        x = todo.pop()
        if x == 1:
            continue
        for i, b in enumerate(base):
            g = gcd(x, b)
            if g > 1:
                base.pop(i)
                todo.extend((g, b // g, x // g))
                break
        else:
            base.append(x)
    return sorted(base)


def smallest_prime_factor(n: int, below: int | None = None) -> int | None:
    """Least prime factor of ``n > 1`` by trial division, or None if it is
    at least ``below``.

    Raises OverflowError when the answer lies beyond the prime table.
    """
    for p in PRIMES:
        if below is not None and p >= below:
            return None
        if p * p > n:
            return n if below is None or n < below else None
        if n % p == 0:
            return p
    raise AssertionError("unreachable")

"""Finite meadows: products of zero-totalized prime fields.

The initial meadow of characteristic ``k`` exists for squarefree ``k`` and
is the product of GF(p) over the primes dividing ``k``.  Elements are tuples
of residues, one per factor; operations act componentwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import lcm, prod
from typing import Iterator, Mapping

import numpy as np

from .axioms import DERIVED_IDENTITIES, MD_AXIOMS, Equation
from .exactnum import PRIMES, mod_inv, prime_factors
from .term import Algebra, Term, fold

Elem = tuple[int, ...]


class SquarefreeError(ValueError):
    """``k`` has a repeated prime factor, so no initial meadow of that
    characteristic exists."""

    def __init__(self, k: int, prime: int):
        self.k = k
        self.prime = prime
        super().__init__(f"{k} is not squarefree: {prime}^2 divides it")


@dataclass(frozen=True)
class FiniteMeadow:
    """``GF(p_1) x ... x GF(p_n)`` with optional overrides of the inverse.

    ``inverse_patch`` exists to build deliberately broken algebras for
    exercising the axiom checker.
    """

    primes: tuple[int, ...]
    inverse_patch: Mapping[Elem, Elem] = field(default_factory=dict, compare=False, hash=False)

    @property
    def characteristic(self) -> int:
        return lcm(*self.primes) if self.primes else 1

    @property
    def prime_indices(self) -> tuple[int, ...]:
        return tuple(PRIMES.index_of(p) for p in self.primes)

    @property
    def size(self) -> int:
        return prod(self.primes)

    def elements(self) -> Iterator[Elem]:
        return itertools.product(*(range(p) for p in self.primes))

    @property
    def zero(self) -> Elem:
        return tuple(0 for _ in self.primes)

    @property
    def one(self) -> Elem:
        return tuple(1 % p for p in self.primes)

    def lit(self, n: int) -> Elem:
        return tuple(n % p for p in self.primes)

    def add(self, a: Elem, b: Elem) -> Elem:
        return tuple((x + y) % p for x, y, p in zip(a, b, self.primes))

    def mul(self, a: Elem, b: Elem) -> Elem:
        return tuple(x * y % p for x, y, p in zip(a, b, self.primes))

    def neg(self, a: Elem) -> Elem:
        return tuple(-x % p for x, p in zip(a, self.primes))

    def inv(self, a: Elem) -> Elem:
        if a in self.inverse_patch:
            return self.inverse_patch[a]
        return tuple(mod_inv(x, p) for x, p in zip(a, self.primes))

    def with_inverse(self, patch: Mapping[Elem, Elem]) -> FiniteMeadow:
        return FiniteMeadow(self.primes, dict(patch))

    def interpret(self, t: Term) -> Elem:
        return fold(t, _TupleAlgebra(self))


class _TupleAlgebra(Algebra[Elem]):
    def __init__(self, meadow: FiniteMeadow):
        self.m = meadow

    def lit(self, n):
        return self.m.lit(n)

    def neg(self, a):
        return self.m.neg(a)

    def inv(self, a):
        return self.m.inv(a)

    def add(self, a, b):
        return self.m.add(a, b)

    def mul(self, a, b):
        return self.m.mul(a, b)


def initial_meadow_of_char(k: int) -> FiniteMeadow:
    if k < 2:
        raise ValueError("characteristic must be at least 2")
    factors = prime_factors(k)
    for p in factors:
        if k % (p * p) == 0:
            raise SquarefreeError(k, p)
    return FiniteMeadow(tuple(factors))


def prime_field(p: int) -> FiniteMeadow:
    return FiniteMeadow((p,))


# ---------------------------------------------------------------------------
# Exhaustive checking

MAX_EVALUATIONS = 10**7


@dataclass(frozen=True)
class AxiomResult:
    name: str
    equation: str
    holds: bool
    counterexample: dict[str, Elem] | None = None


@dataclass(frozen=True)
class AxiomReport:
    size: int
    checked: int  # assignments tried for three-variable equations
    results: tuple[AxiomResult, ...]

    @property
    def passed(self) -> int:
        return sum(r.holds for r in self.results)

    @property
    def all_hold(self) -> bool:
        return self.passed == len(self.results)

    def failures(self) -> list[AxiomResult]:
        return [r for r in self.results if not r.holds]

    def __str__(self) -> str:
        return f"{self.size} elements; {self.passed}/{len(self.results)} axioms hold"


class _Tables:
    """Operation tables over element indices ``0 .. size-1``."""

    def __init__(self, meadow: FiniteMeadow):
        self.meadow = meadow
        self.elems = list(meadow.elements())
        n = len(self.elems)
        dtype = np.int16 if n < 2**15 else np.int32
        index = {e: i for i, e in enumerate(self.elems)}
        self.index = index
        self.add = np.empty((n, n), dtype=dtype)
        self.mul = np.empty((n, n), dtype=dtype)
        for i, a in enumerate(self.elems):
            for j, b in enumerate(self.elems):
                self.add[i, j] = index[meadow.add(a, b)]
                self.mul[i, j] = index[meadow.mul(a, b)]
        self.neg = np.array([index[meadow.neg(a)] for a in self.elems], dtype=dtype)
        self.inv = np.array([index[meadow.inv(a)] for a in self.elems], dtype=dtype)


class _IndexAlgebra(Algebra[np.ndarray]):
    def __init__(self, tables: _Tables):
        self.t = tables

    def lit(self, n):
        return np.int64(self.t.index[self.t.meadow.lit(n)])

    def neg(self, a):
        return self.t.neg[a]

    def inv(self, a):
        return self.t.inv[a]

    def add(self, a, b):
        return self.t.add[a, b]

    def mul(self, a, b):
        return self.t.mul[a, b]


def _check(eq: Equation, tables: _Tables) -> AxiomResult:
    names = eq.variables
    n = len(tables.elems)
    env = {}
    for axis, name in enumerate(names):
        shape = [1] * len(names)
        shape[axis] = n
        env[name] = np.arange(n).reshape(shape)
    alg = _IndexAlgebra(tables)
    lhs = fold(eq.lhs, alg, env=env)
    rhs = fold(eq.rhs, alg, env=env)
    ok = np.broadcast_to(lhs == rhs, (n,) * len(names))
    if ok.all():
        return AxiomResult(eq.name, str(eq), True)
    bad = np.argwhere(~ok)[0]
    witness = {name: tables.elems[int(i)] for name, i in zip(names, bad)}
    return AxiomResult(eq.name, str(eq), False, witness)


def check_equations(meadow: FiniteMeadow, equations, max_evaluations: int = MAX_EVALUATIONS) -> AxiomReport:
    n = meadow.size
    if n**3 > max_evaluations:
        raise ValueError(
            f"carrier of {n} elements needs {n**3} evaluations, above the bound {max_evaluations}"
        )
    tables = _Tables(meadow)
    results = tuple(_check(eq, tables) for eq in equations)
    return AxiomReport(n, n**3, results)


def check_axioms(meadow: FiniteMeadow, max_evaluations: int = MAX_EVALUATIONS) -> AxiomReport:
    """Check every meadow axiom over all assignments of carrier elements."""
    return check_equations(meadow, MD_AXIOMS, max_evaluations)


def check_derived_identities(meadow: FiniteMeadow, max_evaluations: int = MAX_EVALUATIONS) -> AxiomReport:
    return check_equations(meadow, DERIVED_IDENTITIES, max_evaluations)


def nilpotents(meadow: FiniteMeadow) -> list[Elem]:
    """Nonzero ``x`` with ``x*x == 0`` (empty in any meadow)."""
    zero = meadow.zero
    return [x for x in meadow.elements() if x != zero and meadow.mul(x, x) == zero]


MAX_CLOSURE = 10**5


def generate_minimal(meadow: FiniteMeadow, max_size: int = MAX_CLOSURE) -> set[Elem]:
    """Closure of ``{0, 1}`` under the meadow operations."""
    if meadow.size > max_size:
        raise ValueError(f"carrier of {meadow.size} elements exceeds closure bound {max_size}")
    found = {meadow.zero, meadow.one}
    frontier = set(found)
    while frontier:
        fresh = set()
        for x in frontier:
            fresh.add(meadow.neg(x))
            fresh.add(meadow.inv(x))
            for y in found:
                fresh.add(meadow.add(x, y))
                fresh.add(meadow.mul(x, y))
        fresh -= found
        found |= fresh
        frontier = fresh
    return found

"""Selector terms Z_n and G_n, normal forms of closed terms, and the decision
procedure for provable equality of closed terms.

Every closed term ``t`` is provably equal to::

    Z_0*r_0 + ... + Z_{k-1}*r_{k-1} + G_k*q

where ``r_i`` is the value of ``t`` in GF(prime(i)), ``q`` its rational
value, and ``k`` any level at or above ``psi(t)``.  Two terms are therefore
provably equal exactly when they agree in the first ``max(psi)`` prime
fields and in the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

from .exactnum import PRIMES, coprime_base, prime, rat_to_str, smallest_prime_factor, split_factors
from .evaluate import EvalProfile, NonUnitInverse, ResidueRingAlgebra, profile
from .term import ONE, Add, Inv, Lit, Mul, Neg, Term, fold, rat_to_term


def z_term(n: int) -> Term:
    """``1 - p*p^-1`` for ``p = prime(n)``: 1 in GF(p), 0 everywhere else."""
    p = Lit(prime(n))
    return Add(ONE, Neg(Mul(p, Inv(p))))


def g_term(n: int) -> Term:
    """``(1 - Z_0) * ... * (1 - Z_{n-1})``, built left to right from ``G_0 = 1``."""
    g: Term = ONE
    for i in range(n):
        g = Mul(g, Add(ONE, Neg(z_term(i))))
    return g


@dataclass(frozen=True)
class NormalForm:
    residues: tuple[int, ...]
    tail: Fraction

    @property
    def k(self) -> int:
        return len(self.residues)

    def to_json(self) -> dict:
        return {"k": self.k, "residues": list(self.residues), "tail": rat_to_str(self.tail)}


def normal_form_of(t: Term, pad: int | None = None, prof: EvalProfile | None = None) -> NormalForm:
    prof = prof or profile(t)
    k = prof.psi
    if pad is not None:
        if pad < k:
            raise ValueError(f"pad below psi: pad={pad}, psi={k}")
        k = pad
    if k:
        prof.prefetch(PRIMES.upto(prime(k - 1)))
    return NormalForm(tuple(prof.residue(i) for i in range(k)), prof.phi)


def normal_term(nf: NormalForm) -> Term:
    """Term ``Z_0*r_0 + ... + Z_{k-1}*r_{k-1} + G_k*tail``, left-associated."""
    tail = Mul(g_term(nf.k), rat_to_term(nf.tail))
    if nf.k == 0:
        return tail
    acc: Term = Mul(z_term(0), Lit(nf.residues[0]))
    for i in range(1, nf.k):
        acc = Add(acc, Mul(z_term(i), Lit(nf.residues[i])))
    return Add(acc, tail)


def build_normal_term(t: Term, pad: int | None = None) -> Term:
    return normal_term(normal_form_of(t, pad))


@dataclass(frozen=True)
class PrimeWitness:
    index: int | None  # None when the prime lies beyond the prime table
    prime: int
    left: int
    right: int

    def __str__(self) -> str:
        return f"p={self.prime}: {self.left} vs {self.right}"


@dataclass(frozen=True)
class RationalWitness:
    left: Fraction
    right: Fraction

    def __str__(self) -> str:
        return f"rational point: {rat_to_str(self.left)} vs {rat_to_str(self.right)}"


Witness = Union[PrimeWitness, RationalWitness]


@dataclass(frozen=True)
class Verdict:
    witness: Witness | None = None

    @property
    def equal(self) -> bool:
        return self.witness is None

    def __bool__(self) -> bool:
        return self.equal

    def __str__(self) -> str:
        return "EQUAL" if self.equal else f"DISTINCT at {self.witness}"

    def to_json(self) -> dict:
        w = self.witness
        if w is None:
            return {"equal": True, "witness": None}
        if isinstance(w, PrimeWitness):
            body = {"kind": "prime", "index": w.index, "prime": w.prime,
                    "left": w.left, "right": w.right}
        else:
            body = {"kind": "rational", "left": rat_to_str(w.left), "right": rat_to_str(w.right)}
        return {"equal": False, "witness": body}


EQUAL = Verdict()


def decide_equal(s: Term, t: Term) -> Verdict:
    """Decide provable equality of two closed terms.

    Compares the prime-field values at every index below
    ``n = max(psi(s), psi(t))`` in ascending order, then the rational values;
    the first disagreement is the witness.  Only primes that can deviate from
    the rational value are evaluated in full.
    """
    return decide_profiles(profile(s), profile(t))


def decide_profiles(ps: EvalProfile, pt: EvalProfile) -> Verdict:
    bound = max(ps.bound, pt.bound)
    if ps.phi != pt.phi:
        # outside the exceptional primes the two sides reduce different
        # rationals, which disagree modulo all but finitely many primes
        i = 0
        while (p := prime(i)) <= bound:
            a, b = ps.residue_at(p), pt.residue_at(p)
            if a != b:
                return Verdict(PrimeWitness(i, p, a, b))
            i += 1
        return Verdict(RationalWitness(ps.phi, pt.phi))
    # equal rational values: only exceptional primes can tell the sides apart
    known, hard = split_factors(ps.denominators | pt.denominators)
    ps.prefetch(known)
    pt.prefetch(known)
    first = None
    for p in known:
        if ps.residue_at(p) != pt.residue_at(p):
            first = p
            break
    for n, a, b in _hard_residues(ps.term, pt.term, hard):
        differ = n
        while (g := gcd(differ, a - b)) > 1:
            differ //= g
        if differ > 1:
            p = smallest_prime_factor(differ, below=first)
            if p is not None:
                first = p
    if first is None:
        return EQUAL
    return Verdict(PrimeWitness(_index_or_none(first), first,
                                ps.residue_at(first), pt.residue_at(first)))


def _hard_residues(s: Term, t: Term, pieces):
    """Values of ``s`` and ``t`` modulo each piece, splitting a piece
    whenever a zero divisor is inverted."""
    todo = list(pieces)
    while todo:
        n = todo.pop()
        ring = ResidueRingAlgebra(n)
        try:
            a, b = fold(s, ring), fold(t, ring)
        except NonUnitInverse as exc:
            todo.extend(coprime_base([exc.factor, n // exc.factor]))
            continue
        yield n, a, b


def _index_or_none(p: int) -> int | None:
    return PRIMES.index_of(p) if p <= PRIMES.max_limit else None


def provably_equal(s: Term, t: Term) -> bool:
    return decide_equal(s, t).equal

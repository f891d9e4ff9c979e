import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from meadow.axioms import MD_AXIOMS
from meadow.element import (ONE, ZERO, ElementAlgebra, MeadowElement, RawElement, canonicalize,
                            coordinate, elem_inv, elem_ring_op, from_raw, from_term, rational)
from meadow.evaluate import phi, phi_n, psi
from meadow.exactnum import prime
from meadow.normal import z_term
from meadow.term import Add, Inv, Lit, Mul, Neg, fold, random_term
from meadow.term import ONE as T_ONE

seeds = st.integers(min_value=0, max_value=2**63 - 1)


def random_element(rng: random.Random) -> MeadowElement:
    """Mix of term images, Z-selectors and raw residue vectors."""
    pick = rng.random()
    if pick < 0.4:
        return from_term(random_term(rng.getrandbits(63), 5, 12))
    if pick < 0.6:
        return from_term(z_term(rng.randrange(6)))
    k = rng.randrange(5)
    tail = Fraction(rng.randint(-9, 9), rng.randint(1, 12))
    return from_raw([rng.randrange(prime(i)) for i in range(k)], tail)


class TestCanonicalize:
    def test_examples(self):
        assert canonicalize(RawElement((1,), Fraction(1))) == MeadowElement((), Fraction(1))
        assert canonicalize(RawElement((0,), Fraction(1))) == MeadowElement((0,), Fraction(1))
        assert canonicalize(RawElement((1, 0), Fraction(1, 3))) == rational(Fraction(1, 3))

    def test_rejects_non_canonical(self):
        with pytest.raises(ValueError, match="not canonical"):
            MeadowElement((1,), Fraction(1))

    def test_rejects_residue_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            RawElement((2,), Fraction(0))

    @given(seeds)
    def test_idempotent(self, seed):
        a = random_element(random.Random(seed))
        assert canonicalize(a) == a


class TestFromTerm:
    def test_examples(self):
        assert from_term(T_ONE) == ONE
        assert from_term(Inv(Lit(3))) == rational(Fraction(1, 3))
        assert from_term(Mul(Lit(2), Inv(Lit(2)))) == MeadowElement((0,), Fraction(1))

    @given(seeds, st.integers(0, 8))
    def test_coordinate_is_prime_field_value(self, seed, i):
        t = random_term(seed, 6, 30)
        assert coordinate(from_term(t), i) == phi_n(i, t)

    @given(seeds)
    def test_tail_is_rational_value(self, seed):
        t = random_term(seed, 6, 30)
        assert from_term(t).tail == phi(t)

    @given(seeds)
    def test_k_at_most_psi(self, seed):
        t = random_term(seed, 6, 30)
        assert from_term(t).k <= psi(t)

    @given(seeds, seeds)
    def test_homomorphism(self, a, b):
        s, t = random_term(a, 4, 12), random_term(b, 4, 12)
        x, y = from_term(s), from_term(t)
        assert from_term(Add(s, t)) == x + y
        assert from_term(Mul(s, t)) == x * y
        assert from_term(Neg(s)) == -x
        assert from_term(Inv(s)) == x.inverse()


class TestOperations:
    def test_examples(self):
        half = rational(Fraction(1, 2))
        assert elem_ring_op("add", half, half) == MeadowElement((0,), Fraction(1))
        assert elem_ring_op("mul", from_term(z_term(0)), from_term(z_term(1))) == ZERO
        assert elem_ring_op("neg", MeadowElement((1,), Fraction(0))) == MeadowElement((1,), Fraction(0))

    def test_inverse_examples(self):
        assert elem_inv(from_term(Lit(3))) == rational(Fraction(1, 3))
        assert elem_inv(ZERO) == ZERO

    def test_bad_arity(self):
        with pytest.raises(TypeError):
            elem_ring_op("add", ONE)
        with pytest.raises(TypeError):
            elem_ring_op("neg", ONE, ONE)
        with pytest.raises(ValueError):
            elem_ring_op("div", ONE, ONE)

    def test_reflection_on_many(self):
        rng = random.Random(3)
        for _ in range(1000):
            a = random_element(rng)
            assert elem_inv(elem_inv(a)) == a

    def test_results_canonical(self):
        rng = random.Random(5)
        for _ in range(300):
            a, b = random_element(rng), random_element(rng)
            for r in (a + b, a * b, -a, a.inverse()):
                assert canonicalize(r) == r

    def test_no_nonzero_nilpotents(self):
        rng = random.Random(13)
        for _ in range(1000):
            a = random_element(rng)
            if (a * a).is_zero():
                assert a.is_zero()

    def test_half_is_not_a_product_element(self):
        half = rational(Fraction(1, 2))
        assert coordinate(half, 0) == 0
        assert not half.is_zero()
        assert half + half != ONE


def test_meadow_axioms_on_random_triples():
    rng = random.Random(21)
    alg = ElementAlgebra()
    for _ in range(300):
        env = {v: random_element(rng) for v in "xyz"}
        for eq in MD_AXIOMS:
            assert fold(eq.lhs, alg, env=env) == fold(eq.rhs, alg, env=env), eq.name


class TestSerialization:
    def test_round_trip(self):
        rng = random.Random(8)
        for _ in range(200):
            a = random_element(rng)
            assert MeadowElement.from_json(a.to_json()) == a

    def test_format(self):
        a = from_term(Mul(Lit(2), Inv(Lit(2))))
        assert a.to_json() == {"k": 1, "residues": [0], "tail": "1/1"}
        assert str(a) == "k=1 residues=[0] tail=1/1"

    def test_k_mismatch(self):
        with pytest.raises(ValueError):
            MeadowElement.from_json({"k": 2, "residues": [0], "tail": "1/1"})

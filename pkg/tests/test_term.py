from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from meadow.evaluate import phi, phi_n
from meadow.term import (
    KINDS,
    ONE,
    ZERO,
    Add,
    Inv,
    Lit,
    Mul,
    Neg,
    ParseError,
    Var,
    as_normal_rational,
    depth,
    expand_numeral,
    kind,
    parse,
    parse_template,
    random_sized_term,
    random_term,
    rat_to_term,
    size,
    substitute,
    to_text,
)

seeds = st.integers(min_value=0, max_value=2**63 - 1)


class TestParse:
    def test_inverse_of_zero(self):
        assert parse("0^-1") == Inv(ZERO)

    def test_z_term_shape(self):
        assert parse("1 - 2*2^-1") == Add(ONE, Neg(Mul(Lit(2), Inv(Lit(2)))))

    def test_sugar(self):
        assert parse("(3/4 + -2)") == Add(Mul(Lit(3), Inv(Lit(4))), Neg(Lit(2)))

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("1 + 2 + 3", Add(Add(ONE, Lit(2)), Lit(3))),
            ("1 - 2 - 3", Add(Add(ONE, Neg(Lit(2))), Neg(Lit(3)))),
            ("2*3/4", Mul(Mul(Lit(2), Lit(3)), Inv(Lit(4)))),
            ("-2^-1", Neg(Inv(Lit(2)))),
            ("(-2)^-1", Inv(Neg(Lit(2)))),
            ("2^-1^-1", Inv(Inv(Lit(2)))),
            ("-2*3", Mul(Neg(Lit(2)), Lit(3))),
            ("inv(1 + 1)", Inv(Add(ONE, ONE))),
            ("2 ^ - 1", Inv(Lit(2))),
            ("123456789012345678901234567890", Lit(123456789012345678901234567890)),
            ("1 +\n 2", Add(ONE, Lit(2))),
        ],
    )
    def test_grammar(self, text, expected):
        assert parse(text) == expected

    @pytest.mark.parametrize(
        "text, line, column",
        [("(1 + 2", 1, 7), ("1 +", 1, 4), ("1 2", 1, 3), ("1 +\n  * 2", 2, 3), ("x", 1, 1), ("1 $ 2", 1, 3)],
    )
    def test_errors_carry_position(self, text, line, column):
        with pytest.raises(ParseError) as info:
            parse(text)
        assert (info.value.line, info.value.column) == (line, column)
        assert info.value.expected

    def test_expected_set_for_missing_operand(self):
        with pytest.raises(ParseError) as info:
            parse("1 *")
        assert {"'('", "'-'", "DECIMAL"} <= info.value.expected


class TestPrint:
    def test_examples(self):
        assert to_text(Inv(ZERO)) == "0^-1"
        assert to_text(Add(ONE, Neg(Mul(Lit(2), Inv(Lit(2)))))) == "1 - 2*2^-1"
        assert to_text(Lit(17)) == "17"

    @pytest.mark.parametrize(
        "t",
        [
            Neg(Mul(Lit(2), Lit(3))),
            Add(ONE, Add(Lit(2), Lit(3))),
            Mul(Lit(2), Mul(Lit(3), Lit(4))),
            Add(ONE, Neg(Neg(Lit(2)))),
            Add(ONE, Neg(Add(Lit(2), Lit(3)))),
            Inv(Neg(Inv(Lit(5)))),
            Mul(Lit(2), Neg(Lit(3))),
            Neg(Neg(ZERO)),
        ],
    )
    def test_round_trip_tricky(self, t):
        assert parse(to_text(t)) == t

    @given(seeds)
    def test_round_trip_random(self, seed):
        t = random_term(seed, 7, 50)
        assert parse(to_text(t)) == t


class TestNumerals:
    def test_examples(self):
        assert expand_numeral(0, 10) == ZERO
        assert expand_numeral(2, 10) == Add(Add(ZERO, ONE), ONE)
        with pytest.raises(ValueError, match="cap"):
            expand_numeral(3, 2)

    def test_constants_are_literals(self):
        assert ZERO == Lit(0) and ONE == Lit(1)

    @pytest.mark.parametrize("n", range(65))
    def test_unary_numeral_coherent_with_literal(self, n):
        unary = expand_numeral(n, 64)
        assert phi(unary) == phi(Lit(n))
        for i in range(7):
            assert phi_n(i, unary) == phi_n(i, Lit(n))


class TestNormalRational:
    def test_examples(self):
        assert as_normal_rational(Mul(Lit(2), Inv(Lit(3)))) == Fraction(2, 3)
        assert as_normal_rational(Mul(Lit(2), Inv(Lit(4)))) is None
        assert as_normal_rational(ZERO) == 0

    def test_unary_numerals_accepted(self):
        t = Neg(Mul(expand_numeral(3, 5), Inv(expand_numeral(2, 5))))
        assert as_normal_rational(t) == Fraction(-3, 2)

    @pytest.mark.parametrize("t", [ONE, Lit(2), Mul(ZERO, Inv(ONE)), Mul(Lit(2), Inv(ZERO)), Neg(ZERO),
                                   Mul(Inv(Lit(2)), Lit(1)), Neg(Neg(Mul(ONE, Inv(ONE))))])
    def test_rejects(self, t):
        assert as_normal_rational(t) is None

    def test_rat_to_term_examples(self):
        assert rat_to_term(Fraction(0)) == ZERO
        assert rat_to_term(Fraction(1)) == Mul(Lit(1), Inv(Lit(1)))
        assert rat_to_term(Fraction(-5, 6)) == Neg(Mul(Lit(5), Inv(Lit(6))))

    @given(st.fractions())
    def test_as_normal_rational_inverts_rat_to_term(self, q):
        assert as_normal_rational(rat_to_term(q)) == q


class TestSubstitute:
    def test_examples(self):
        ril = parse_template("x*(x*x^-1)")
        assert substitute(ril, {"x": Lit(2)}) == Mul(Lit(2), Mul(Lit(2), Inv(Lit(2))))
        assert substitute(parse_template("x + 0"), {"x": ONE}) == Add(ONE, ZERO)
        with pytest.raises(KeyError, match="unbound y"):
            substitute(parse_template("x*y"), {"x": ONE})

    @given(seeds, seeds)
    def test_homomorphic(self, a, b):
        x, y = random_term(a, 4, 9), random_term(b, 4, 9)
        env = {"x": x, "y": y}
        for ctor in (Add, Mul):
            assert substitute(ctor(Var("x"), Var("y")), env) == ctor(x, y)
        for ctor in (Neg, Inv):
            assert substitute(ctor(Var("y")), env) == ctor(y)


class TestRandom:
    def test_depth_one_is_leaf(self):
        for seed in range(50):
            t = random_term(seed, 1, 9)
            assert isinstance(t, Lit) and t.n <= 9

    def test_deterministic(self):
        assert random_term(42, 6, 50) == random_term(42, 6, 50)

    @given(seeds, st.integers(1, 8), st.integers(1, 60))
    def test_bounds(self, seed, max_depth, max_lit):
        t = random_term(seed, max_depth, max_lit)
        assert depth(t) <= max_depth
        stack = [t]
        while stack:
            node = stack.pop()
            if isinstance(node, Lit):
                assert node.n <= max_lit
            else:
                stack.extend(getattr(node, f) for f in ("t", "l", "r") if hasattr(node, f))

    def test_every_constructor_observed(self):
        seen = Counter()
        for seed in range(1000):
            stack = [random_term(seed, 6, 9)]
            while stack:
                node = stack.pop()
                seen[kind(node)] += 1
                stack.extend(getattr(node, f) for f in ("t", "l", "r") if hasattr(node, f))
        assert set(seen) == set(KINDS)

    def test_large_literals_reachable(self):
        values = {random_term(s, 1, 50).n for s in range(3000)}
        assert 50 in values and 8 in values

    def test_sized_terms(self):
        for seed in range(20):
            assert size(random_sized_term(seed, 200, 10**6)) == 200

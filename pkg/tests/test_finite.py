import random

import pytest

from meadow.evaluate import phi_n
from meadow.exactnum import is_squarefree
from meadow.finite import (FiniteMeadow, SquarefreeError, check_axioms, check_derived_identities,
                           generate_minimal, initial_meadow_of_char, nilpotents, prime_field)
from meadow.term import random_term


class TestConstruction:
    def test_char_six(self):
        m = initial_meadow_of_char(6)
        assert m.size == 6 and m.characteristic == 6
        assert m.prime_indices == (0, 1)
        assert len(list(m.elements())) == 6

    def test_char_two(self):
        assert initial_meadow_of_char(2).size == 2

    def test_not_squarefree(self):
        with pytest.raises(SquarefreeError) as info:
            initial_meadow_of_char(4)
        assert info.value.prime == 2
        with pytest.raises(SquarefreeError) as info:
            initial_meadow_of_char(2 * 9 * 5)
        assert info.value.prime == 3

    def test_too_small(self):
        with pytest.raises(ValueError):
            initial_meadow_of_char(1)


class TestAxioms:
    def test_char_six_exhaustive(self):
        report = check_axioms(initial_meadow_of_char(6))
        assert report.all_hold and report.checked == 216
        assert str(report) == "6 elements; 10/10 axioms hold"

    @pytest.mark.parametrize("k", [2, 3, 5, 10, 15, 30])
    def test_squarefree_characteristics(self, k):
        m = initial_meadow_of_char(k)
        assert check_axioms(m).all_hold
        assert check_derived_identities(m).all_hold

    def test_corrupted_inverse(self):
        broken = prime_field(5).with_inverse({(2,): (2,)})
        report = check_axioms(broken)
        failed = {r.name: r.counterexample for r in report.failures()}
        assert failed["restricted_inverse"] == {"x": (2,)}
        assert "reflection" in failed

    def test_size_guard(self):
        with pytest.raises(ValueError, match="bound"):
            check_axioms(initial_meadow_of_char(210), max_evaluations=1000)


def test_generate_minimal_diagonal():
    assert generate_minimal(FiniteMeadow((2, 2))) == {(0, 0), (1, 1)}


def test_generate_minimal_is_everything_for_initial():
    m = initial_meadow_of_char(30)
    assert generate_minimal(m) == set(m.elements())


def test_no_nilpotents_up_to_210():
    for k in range(2, 211):
        if is_squarefree(k):
            assert nilpotents(initial_meadow_of_char(k)) == []


def test_interpretation_matches_prime_fields():
    rng = random.Random(4)
    for _ in range(200):
        t = random_term(rng.getrandbits(63), 5, 30)
        k = rng.choice([6, 10, 30, 105, 210])
        m = initial_meadow_of_char(k)
        assert m.interpret(t) == tuple(phi_n(i, t) for i in m.prime_indices)

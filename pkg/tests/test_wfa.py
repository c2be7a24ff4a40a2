from fractions import Fraction

import pytest

from otlearn import (
    AlphabetMismatchError,
    UnknownLetterError,
    wfa_distinguish,
    wfa_from_lists,
    wfa_value,
    word,
)
from otlearn.teachers import count_a_wfa
from otlearn.wfa import backward_rank, forward_rank, wfa_is_minimal

from .oracles import words_up_to


def ones_wfa(k=1):
    return wfa_from_lists("ab", [1], {"a": [[1]], "b": [[1]]}, [1])


def count_b_wfa():
    return wfa_from_lists(
        "ab", [1, 0], {"a": [[1, 0], [0, 1]], "b": [[1, 1], [0, 1]]}, [0, 1]
    )


def test_value_all_ones_scalar():
    m = ones_wfa()
    for w in (word("abba"), (), word("aaaa")):
        assert wfa_value(m, w) == 1


def test_value_empty_word_is_initial_dot_final():
    m = count_a_wfa()
    assert wfa_value(m, ()) == Fraction(0)
    m2 = wfa_from_lists("a", [2, 3], {"a": [[1, 0], [0, 1]]}, [5, 7])
    assert wfa_value(m2, ()) == Fraction(2 * 5 + 3 * 7)


def test_value_counts_a_occurrences():
    m = count_a_wfa()
    assert wfa_value(m, word("abaa")) == 3
    for w in words_up_to(("a", "b"), 6):
        assert wfa_value(m, w) == sum(1 for c in w if c == "a")


def test_value_unknown_letter():
    with pytest.raises(UnknownLetterError):
        wfa_value(count_a_wfa(), word("ax"))


def test_exact_arithmetic_association():
    # folding left-to-right equals any other association, exactly
    m = wfa_from_lists(
        "ab",
        [Fraction(1, 3), Fraction(2, 7)],
        {
            "a": [[Fraction(1, 2), 3], [0, Fraction(5, 11)]],
            "b": [[2, Fraction(-1, 3)], [Fraction(7, 5), 1]],
        },
        [Fraction(3, 13), Fraction(1, 9)],
    )
    from otlearn.linalg import mat_mul, mat_vec, vec_mat, dot

    for w in words_up_to(("a", "b"), 5):
        left = m.initial
        for a in w:
            left = vec_mat(left, m.matrix(a))
        left_value = dot(left, m.final)
        right = m.final
        for a in reversed(w):
            right = mat_vec(m.matrix(a), right)
        right_value = dot(m.initial, right)
        assert left_value == right_value == wfa_value(m, w)


def test_distinguish_self():
    assert wfa_distinguish(count_a_wfa(), count_a_wfa()) is None


def test_distinguish_count_a_vs_count_b():
    w = wfa_distinguish(count_a_wfa(), count_b_wfa())
    assert w == word("a")


def test_distinguish_permuted_basis_copy():
    m = count_a_wfa()
    # swap the two basis coordinates
    perm = wfa_from_lists(
        "ab",
        [0, 1],
        {"a": [[1, 0], [1, 1]], "b": [[1, 0], [0, 1]]},
        [1, 0],
    )
    for w in words_up_to(("a", "b"), 6):
        assert wfa_value(m, w) == wfa_value(perm, w)
    assert wfa_distinguish(m, perm) is None


def test_distinguish_witness_length_bound():
    m1 = count_a_wfa()
    scaled = wfa_from_lists(
        "ab", [1, 0], {"a": [[1, 1], [0, 1]], "b": [[1, 0], [0, 1]]}, [0, 2]
    )
    w = wfa_distinguish(m1, scaled)
    assert w is not None and len(w) < m1.dimension + scaled.dimension
    assert wfa_value(m1, w) != wfa_value(scaled, w)


def test_distinguish_alphabet_mismatch():
    other = wfa_from_lists("ba", [1, 0], {"b": [[1, 1], [0, 1]], "a": [[1, 0], [0, 1]]}, [0, 1])
    with pytest.raises(AlphabetMismatchError):
        wfa_distinguish(count_a_wfa(), other)


def test_minimality_ranks():
    m = count_a_wfa()
    assert forward_rank(m) == backward_rank(m) == 2
    assert wfa_is_minimal(m)
    # padding with a dead dimension breaks minimality
    padded = wfa_from_lists(
        "ab",
        [1, 0, 0],
        {
            "a": [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
            "b": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        },
        [0, 1, 0],
    )
    assert not wfa_is_minimal(padded)


def test_entries_must_be_exact():
    from otlearn.errors import ValidationError
    from otlearn.wfa import WeightedAutomaton

    with pytest.raises(ValidationError):
        WeightedAutomaton(("a",), 1, (0.5,), (((Fraction(1),),),), (Fraction(1),))

import re

import pytest

from otlearn import (
    AlphabetMismatchError,
    MooreMachine,
    UnknownLetterError,
    minimize_moore,
    moore_distinguish,
    moore_isomorphic,
    run_moore,
    word,
)
from otlearn.teachers import ab_star_dfa, ends_in_a_dfa, sigma_star_dfa

from .oracles import languages_agree, nerode_class_count, words_up_to


def test_run_single_state_all_accepting():
    m = sigma_star_dfa()
    assert run_moore(m, word("abba")) == 1


def test_run_empty_word_returns_initial_output():
    for m in (sigma_star_dfa(), ends_in_a_dfa(), ab_star_dfa()):
        assert run_moore(m, ()) == m.outputs[m.initial]


def test_run_ab_star_against_regex_oracle():
    m = ab_star_dfa()
    assert run_moore(m, word("abab")) == 1
    assert run_moore(m, word("aba")) == 0
    pattern = re.compile(r"(ab)*")
    for w in words_up_to(("a", "b"), 7):
        expected = 1 if pattern.fullmatch("".join(w)) else 0
        assert run_moore(m, w) == expected


def test_run_rejects_unknown_letter():
    with pytest.raises(UnknownLetterError):
        run_moore(ends_in_a_dfa(), word("ac"))


def test_minimize_already_minimal_is_isomorphic():
    m = ab_star_dfa()
    assert moore_isomorphic(minimize_moore(m), m)


def test_minimize_drops_unreachable_accepting_state():
    # state 2 accepts but is unreachable
    m = MooreMachine(("a",), 3, 0, ((1,), (0,), (2,)), (0, 1, 1))
    mm = minimize_moore(m)
    assert mm.states == 2
    assert languages_agree(
        lambda w: run_moore(m, w), lambda w: run_moore(mm, w), ("a",), 8
    )


def test_minimize_merges_nerode_equivalent_states():
    # 4-state DFA for words ending in a, two equivalent accepting states
    m = MooreMachine(
        ("a", "b"),
        4,
        0,
        ((1, 0), (3, 0), (1, 0), (1, 2)),
        (0, 1, 0, 1),
    )
    member = lambda w: 1 if w and w[-1] == "a" else 0
    assert languages_agree(lambda w: run_moore(m, w), member, ("a", "b"), 8)
    mm = minimize_moore(m)
    assert mm.states == nerode_class_count(member, ("a", "b"), 8, 8) == 2


def test_minimize_preserves_language_up_to_twice_state_count():
    m = MooreMachine(
        ("a", "b"),
        5,
        0,
        ((1, 2), (3, 0), (2, 4), (1, 1), (0, 2)),
        (1, 0, 1, 0, 0),
    )
    mm = minimize_moore(m)
    assert languages_agree(
        lambda w: run_moore(m, w),
        lambda w: run_moore(mm, w),
        ("a", "b"),
        2 * m.states,
    )
    assert mm.states <= m.states


def test_minimize_idempotent_up_to_isomorphism():
    m = MooreMachine(
        ("a", "b"),
        6,
        2,
        ((1, 2), (3, 0), (2, 4), (1, 1), (0, 2), (5, 5)),
        (1, 0, 1, 0, 0, 1),
    )
    once = minimize_moore(m)
    assert moore_isomorphic(minimize_moore(once), once)


def test_distinguish_equal_machines():
    assert moore_distinguish(ab_star_dfa(), ab_star_dfa()) is None


def test_distinguish_outputs_differ_at_initial():
    all_acc = sigma_star_dfa()
    all_rej = MooreMachine(("a", "b"), 1, 0, ((0, 0),), (0,))
    assert moore_distinguish(all_acc, all_rej) == ()


def test_distinguish_ends_in_a_vs_ends_in_aa():
    ends_aa = MooreMachine(
        ("a", "b"), 3, 0, ((1, 0), (2, 0), (2, 0)), (0, 0, 1)
    )
    witness = moore_distinguish(ends_in_a_dfa(), ends_aa)
    assert witness == word("a")
    # exhaustive: no shorter or lexicographically smaller witness exists
    for w in words_up_to(("a", "b"), 2):
        if (len(w), w) < (len(witness), witness):
            assert run_moore(ends_in_a_dfa(), w) == run_moore(ends_aa, w)


def test_distinguish_none_iff_exhaustive_agreement():
    m1 = ab_star_dfa()
    m2 = MooreMachine(
        ("a", "b"), 4, 0, ((1, 2), (3, 0), (2, 2), (2, 2)), (1, 0, 0, 0)
    )
    bound = m1.states * m2.states
    agree = languages_agree(
        lambda w: run_moore(m1, w), lambda w: run_moore(m2, w), ("a", "b"), bound
    )
    assert (moore_distinguish(m1, m2) is None) == agree


def test_distinguish_alphabet_mismatch():
    with pytest.raises(AlphabetMismatchError):
        moore_distinguish(ends_in_a_dfa(), sigma_star_dfa(("b", "a")))


def test_determinism_and_totality():
    m = ab_star_dfa()
    for w in words_up_to(("a", "b"), 5):
        assert run_moore(m, w) == run_moore(m, w)
        assert run_moore(m, w) in (0, 1)

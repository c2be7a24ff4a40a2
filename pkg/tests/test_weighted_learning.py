from fractions import Fraction

import pytest

from otlearn import (
    Learner,
    ObservationTable,
    WeightedDomain,
    WfaTeacher,
    learn,
    wfa_distinguish,
    wfa_from_lists,
    wfa_value,
    word,
)
from otlearn.teachers import count_a_wfa

from .oracles import hankel_rank, words_up_to


def test_weighted_row_values_for_count_a():
    domain = WeightedDomain(("a", "b"))
    table = ObservationTable(domain, WfaTeacher(count_a_wfa()))
    table.add_experiment(word("a"))
    assert table.row(word("a")) == (Fraction(1), Fraction(2))
    assert table.row(()) == (Fraction(0), Fraction(1))


def test_weighted_row_zero_function():
    zero = wfa_from_lists("ab", [0], {"a": [[0]], "b": [[0]]}, [0])
    domain = WeightedDomain(("a", "b"))
    table = ObservationTable(domain, WfaTeacher(zero))
    table.add_experiment(word("a"))
    assert table.row(()) == (Fraction(0), Fraction(0))


def test_initial_closedness_defect_for_count_a():
    domain = WeightedDomain(("a", "b"))
    table = ObservationTable(domain, WfaTeacher(count_a_wfa()))
    defects = domain.closedness_defects(table)
    assert defects == [((), "a")]   # row("a") = (1) escapes span{(0)}


def test_constant_one_language_closed_immediately():
    one = wfa_from_lists("ab", [1], {"a": [[1]], "b": [[1]]}, [1])
    domain = WeightedDomain(("a", "b"))
    table = ObservationTable(domain, WfaTeacher(one))
    assert domain.closedness_defects(table) == []
    assert domain.consistency_defects(table) == []


def test_successor_row_in_span_is_not_a_defect():
    one = wfa_from_lists("ab", [1], {"a": [[1]], "b": [[1]]}, [1])
    domain = WeightedDomain(("a", "b"))
    table = ObservationTable(domain, WfaTeacher(one))
    assert domain.row_covered(table, word("a"))


def test_learn_count_a_dimension_matches_hankel_rank():
    target = count_a_wfa()
    m, stats = learn(WfaTeacher(target), WeightedDomain(("a", "b")))
    oracle_rank = hankel_rank(
        lambda w: sum(1 for c in w if c == "a"), ("a", "b"), 3
    )
    assert oracle_rank == 2
    assert m.dimension == oracle_rank
    assert wfa_distinguish(m, target) is None


def test_learn_count_a_exact_agreement_up_to_length_8():
    target = count_a_wfa()
    m, _ = learn(WfaTeacher(target), WeightedDomain(("a", "b")))
    words = words_up_to(("a", "b"), 8)
    assert len(words) == 511  # 510 nonempty words plus the empty word
    for w in words:
        assert wfa_value(m, w) == sum(1 for c in w if c == "a")


def test_learn_zero_language_gives_dimension_one_zero_automaton():
    zero = wfa_from_lists("ab", [0], {"a": [[0]], "b": [[0]]}, [0])
    m, stats = learn(WfaTeacher(zero), WeightedDomain(("a", "b")))
    assert m.dimension == 1
    for w in words_up_to(("a", "b"), 5):
        assert wfa_value(m, w) == 0


def test_learn_indicator_of_empty_word():
    # value 1 at ε and 0 elsewhere has a rank-1 truncated Hankel matrix,
    # so the learned automaton is one-dimensional
    target = wfa_from_lists("ab", [1], {"a": [[0]], "b": [[0]]}, [1])
    m, _ = learn(WfaTeacher(target), WeightedDomain(("a", "b")))
    oracle_rank = hankel_rank(lambda w: 1 if not w else 0, ("a", "b"), 3)
    assert oracle_rank == 1
    assert m.dimension == oracle_rank
    assert wfa_distinguish(m, target) is None


def test_weighted_domain_requires_suffix_mode():
    with pytest.raises(ValueError):
        Learner(WfaTeacher(count_a_wfa()), WeightedDomain(("a", "b")), mode="prefix")


def test_learned_basis_stays_independent():
    # the consistency check is the basis-discipline audit: it must stay
    # silent through a full run
    target = count_a_wfa()
    learner = Learner(WfaTeacher(target), WeightedDomain(("a", "b")))
    m, _ = learner.run()
    assert learner.domain.consistency_defects(learner.table) == []


def test_learn_two_counter_combination():
    # weight = (#a) - 2*(#b): still rank 2
    target = wfa_from_lists(
        "ab",
        [1, 0],
        {"a": [[1, 1], [0, 1]], "b": [[1, -2], [0, 1]]},
        [0, 1],
    )
    m, _ = learn(WfaTeacher(target), WeightedDomain(("a", "b")))
    assert m.dimension == 2
    for w in words_up_to(("a", "b"), 7):
        expected = sum(1 if c == "a" else -2 for c in w)
        assert wfa_value(m, w) == expected

import pytest

from otlearn import (
    SortMismatchError,
    minimize_sorted,
    run_sorted,
    sorted_alphabet,
    sorted_distinguish,
    sorted_isomorphic,
    sorted_machine,
)
from otlearn.sorted_machine import validate_sorted_machine
from otlearn.teachers import inf_a_target


def two_sort_alphabet():
    return sorted_alphabet(
        ("+", "om"),
        {("+", "+"): ["→a", "→b"], ("+", "om"): ["ω"], ("om", "om"): ["←ωa", "←ωb"]},
        {"+": ["a", "b"], "om": []},
    )


def inf_a_machine():
    return inf_a_target().reference


def test_run_empty_word_is_initial_output():
    m = inf_a_machine()
    assert run_sorted(m, "a", ()) == ("+", 0)
    assert run_sorted(m, "b", ()) == ("+", 0)


def test_run_inf_a_examples():
    m = inf_a_machine()
    # (ab)^ω has infinitely many a's
    assert run_sorted(m, "a", ("→b", "ω")) == ("om", 1)
    # b^ω does not
    assert run_sorted(m, "b", ("ω",)) == ("om", 0)


def test_run_sort_mismatch_mid_word():
    m = inf_a_machine()
    with pytest.raises(SortMismatchError):
        run_sorted(m, "a", ("ω", "→a"))


def test_minimize_isomorphic_on_minimal_machine():
    m = inf_a_machine()
    assert sorted_isomorphic(minimize_sorted(m), m)


def duplicated_omega_state_machine():
    """inf-a reference with the accepting ω-state split in two."""
    return sorted_machine(
        two_sort_alphabet(),
        {"+": 2, "om": 3},
        {"+": {"a": 1, "b": 0}},
        {
            "→a": [1, 1],
            "→b": [0, 1],
            "ω": [0, 1],
            "←ωa": [0, 2, 1],
            "←ωb": [0, 1, 2],
        },
        {"+": [0, 0], "om": [0, 1, 1]},
    )


def test_minimize_merges_duplicate_omega_states():
    m = duplicated_omega_state_machine()
    mm = minimize_sorted(m)
    assert dict(mm.states) == {"+": 2, "om": 2}
    assert sorted_distinguish(mm, inf_a_machine()) is None


def test_minimize_drops_unreachable_omega_state():
    m = sorted_machine(
        two_sort_alphabet(),
        {"+": 2, "om": 3},
        {"+": {"a": 1, "b": 0}},
        {
            "→a": [1, 1],
            "→b": [0, 1],
            "ω": [0, 1],
            "←ωa": [0, 1, 2],
            "←ωb": [0, 1, 2],
        },
        {"+": [0, 0], "om": [0, 1, 0]},   # state 2 unreachable
    )
    mm = minimize_sorted(m)
    assert dict(mm.states)["om"] == 2


def test_minimize_matches_sortwise_profile_oracle():
    m = duplicated_omega_state_machine()
    mm = minimize_sorted(m)
    from .oracles import sorted_language_profiles

    alpha = m.alphabet

    def run_fn(x, w):
        return run_sorted(m, x, w)[1]

    profiles = sorted_language_profiles(
        run_fn,
        alpha.all_generators(),
        alpha.letters_from,
        lambda x, w: alpha.end_sort(x, w),
        4,
    )
    for sort, n in mm.states:
        if n:
            assert profiles[sort] == n


def test_distinguish_identity():
    assert sorted_distinguish(inf_a_machine(), inf_a_machine()) is None


def test_distinguish_flipped_omega_outputs():
    m = inf_a_machine()
    flipped = sorted_machine(
        m.alphabet,
        dict(m.states),
        {s: dict(p) for s, p in m.initial},
        {a: list(r) for a, r in m.transitions},
        {"+": [0, 0], "om": [1, 0]},
    )
    ce = sorted_distinguish(m, flipped)
    assert ce is not None
    x, w = ce
    assert run_sorted(m, x, w)[1] != run_sorted(flipped, x, w)[1]
    # shortest witness: exhaustive check over sorted words up to length 4
    alpha = m.alphabet

    def sorted_words(max_len):
        frontier = [(x, ()) for x in alpha.all_generators()]
        out = list(frontier)
        for _ in range(max_len):
            frontier = [
                (x, ww + (a,))
                for x, ww in frontier
                for a in alpha.letters_from(alpha.end_sort(x, ww))
            ]
            out.extend(frontier)
        return out

    for x2, w2 in sorted_words(4):
        if len(w2) < len(w):
            assert run_sorted(m, x2, w2)[1] == run_sorted(flipped, x2, w2)[1]


def test_distinguish_differs_deep_in_omega_sort():
    m = inf_a_machine()
    # break ←ωa on the rejecting ω-state: prepending a now accepts
    broken = sorted_machine(
        m.alphabet,
        dict(m.states),
        {s: dict(p) for s, p in m.initial},
        {
            "→a": [1, 1],
            "→b": [0, 1],
            "ω": [0, 1],
            "←ωa": [1, 1],
            "←ωb": [0, 1],
        },
        {"+": [0, 0], "om": [0, 1]},
    )
    ce = sorted_distinguish(m, broken)
    assert ce == ("b", ("ω", "←ωa"))


def test_validator_passes_on_reference():
    assert validate_sorted_machine(inf_a_machine())

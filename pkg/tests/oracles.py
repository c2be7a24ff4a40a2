"""Independent oracles used to freeze expected values.

Everything here is deliberately implemented by brute force or via sympy,
never by calling back into the package code paths under test.
"""

import itertools
from fractions import Fraction

import sympy


def words_up_to(alphabet, n):
    """All words (tuples) over alphabet up to length n, shortlex order."""
    out = [()]
    frontier = [()]
    for _ in range(n):
        frontier = [w + (a,) for w in frontier for a in alphabet]
        out.extend(frontier)
    return out


def languages_agree(member1, member2, alphabet, max_len):
    return all(
        member1(w) == member2(w) for w in words_up_to(alphabet, max_len)
    )


def nerode_class_count(member, alphabet, word_len, exp_len):
    """Number of Nerode classes among words up to word_len, separated by
    experiments up to exp_len; equals the minimal DFA size when both bounds
    dominate the target's state count."""
    experiments = words_up_to(alphabet, exp_len)
    profiles = {
        tuple(member(w + e) for e in experiments)
        for w in words_up_to(alphabet, word_len)
    }
    return len(profiles)


def exact_rank(rows):
    """Matrix rank over the rationals, via sympy."""
    if not rows:
        return 0
    m = sympy.Matrix([[sympy.Rational(x) for x in row] for row in rows])
    return m.rank()


def hankel_rank(value_fn, alphabet, half_len):
    """Rank of the truncated Hankel matrix indexed by words up to half_len
    on both axes (so entries cover words up to 2*half_len)."""
    index = words_up_to(alphabet, half_len)
    rows = [[value_fn(u + v) for v in index] for u in index]
    return exact_rank(rows)


# -- residual-language oracle for the canonical RFSA ------------------------


def residual_included(m, q1, q2):
    """Whether the language from state q1 is a subset of that from q2."""
    seen = {(q1, q2)}
    stack = [(q1, q2)]
    while stack:
        p1, p2 = stack.pop()
        if m.outputs[p1] and not m.outputs[p2]:
            return False
        for i in range(len(m.alphabet)):
            pair = (m.transitions[p1][i], m.transitions[p2][i])
            if pair not in seen:
                seen.add(pair)
                stack.append(pair)
    return True


def residual_in_union(m, q, others):
    """Whether the language from q is covered by the union of the languages
    from `others` (subset construction on the union side)."""
    start = (q, frozenset(others))
    seen = {start}
    stack = [start]
    while stack:
        p, group = stack.pop()
        if m.outputs[p] and not any(m.outputs[r] for r in group):
            return False
        for i in range(len(m.alphabet)):
            nxt = (
                m.transitions[p][i],
                frozenset(m.transitions[r][i] for r in group),
            )
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return True


def canonical_rfsa_size(min_dfa):
    """Number of prime residuals of the language of a minimal DFA: residuals
    not covered by the union of their strict sub-residuals."""
    n = min_dfa.states
    primes = []
    for q in range(n):
        below = [
            r
            for r in range(n)
            if r != q
            and residual_included(min_dfa, r, q)
            and not residual_included(min_dfa, q, r)
        ]
        if not below or not residual_in_union(min_dfa, q, below):
            primes.append(q)
    return len(primes)


# -- syntactic-algebra oracles ----------------------------------------------


def context_congruence_classes(member, alphabet, word_len, context_len):
    """Two-sided context profiles of nonempty words: u ~ u' iff xuy and
    xu'y agree on membership for all contexts up to context_len."""
    contexts = words_up_to(alphabet, context_len)
    profiles = set()
    for u in words_up_to(alphabet, word_len):
        if not u:
            continue
        profiles.add(
            tuple(member(x + u + y) for x in contexts for y in contexts)
        )
    return len(profiles)


def lasso_congruence_sizes(lasso_member, alphabet, word_len, context_len):
    """Brute-force syntactic-congruence class counts for a lasso language:
    finite words are separated by the contexts x·u·y·v^ω and x·(u·y)^ω,
    lassos by prepended finite contexts."""
    words = [w for w in words_up_to(alphabet, word_len) if w]
    contexts = words_up_to(alphabet, context_len)
    loops = [v for v in words_up_to(alphabet, context_len) if v]
    plus_profiles = set()
    for u in words:
        profile = []
        for x in contexts:
            for y in contexts:
                for v in loops:
                    profile.append(lasso_member(x + u + y, v))
                if x + (u + y) != ():
                    profile.append(lasso_member(x, u + y))
        plus_profiles.add(tuple(profile))
    omega_profiles = set()
    for u in words_up_to(alphabet, word_len):
        for v in loops:
            omega_profiles.add(
                tuple(lasso_member(x + u, v) for x in contexts)
            )
    return len(plus_profiles), len(omega_profiles)


# -- sortwise Nerode oracle ---------------------------------------------------


def sorted_language_profiles(run_fn, generators, letters_of_sort, end_sort_fn,
                             max_len):
    """Behavior profiles of sorted access words: maps each reachable word to
    the outputs of all composable experiment extensions up to max_len.
    Returns the number of distinct profiles per sort."""
    words = [(x, ()) for x in generators]
    all_words = list(words)
    for _ in range(max_len):
        words = [
            (x, w + (a,))
            for x, w in words
            for a in letters_of_sort(end_sort_fn(x, w))
        ]
        all_words.extend(words)
    profiles = {}
    for x, w in all_words:
        sort = end_sort_fn(x, w)
        exps = [()]
        frontier = [()]
        for _ in range(max_len):
            frontier = [
                e + (a,)
                for e in frontier
                for a in letters_of_sort(end_sort_fn(x, w + e))
            ]
            exps.extend(frontier)
        profile = tuple(run_fn(x, w + e) for e in exps)
        profiles.setdefault(sort, set()).add(profile)
    return {s: len(p) for s, p in profiles.items()}

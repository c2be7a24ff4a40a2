"""Teachers: membership/equivalence oracles for every machine kind, plus the
builtin target catalog.

Teachers are immutable after construction and answer deterministically, so
a single teacher may back concurrent learners. Boolean membership answers
are always the ints 0/1 (never bools): evaluated observation tables must be
byte-identical across different teachers for the same language.

Every counterexample is re-checked to genuinely disagree with the
hypothesis before it is handed to the learner; a failure aborts with
TeacherBugError since it can only mean the teacher itself is broken.
"""

import random
from dataclasses import dataclass, field

from .algebra import (
    Lasso,
    WilkeWeakAlphabet,
    interpret_wilke_word,
    lasso_eq,
    lasso_instruction_word,
    lin_dfa_of,
    semigroup_instruction_word,
)
from .errors import TeacherBugError, ValidationError
from .moore import MooreMachine, moore_distinguish, run_moore
from .sorted_machine import SortedWord, run_sorted, sorted_distinguish
from .wfa import WeightedAutomaton, wfa_distinguish, wfa_value
from .words import Counterexample, iter_shortlex


class DfaTeacher:
    """Machine-backed teacher for a Moore target; equivalence queries run a
    product search for a shortest-lex distinguishing word."""

    def __init__(self, target):
        self.target = target
        self.alphabet = target.alphabet

    def membership(self, w):
        return run_moore(self.target, w)

    def equivalence(self, hypothesis):
        w = moore_distinguish(hypothesis, self.target)
        if w is None:
            return None
        if run_moore(hypothesis, w) == run_moore(self.target, w):
            raise TeacherBugError(f"counterexample {w!r} does not disagree")
        return Counterexample(w)


class PredicateTeacher:
    """Predicate-backed teacher; equivalence enumerates words in shortlex
    order up to max_length, so for the same language it returns exactly the
    counterexamples a machine-backed teacher would."""

    def __init__(self, alphabet, predicate, max_length=12):
        self.alphabet = tuple(alphabet)
        self.predicate = predicate
        self.max_length = max_length

    def membership(self, w):
        return 1 if self.predicate(w) else 0

    def equivalence(self, hypothesis):
        for w in iter_shortlex(self.alphabet, self.max_length):
            if self.membership(w) != run_moore(hypothesis, w):
                return Counterexample(w)
        return None


class WfaTeacher:

    def __init__(self, target):
        self.target = target
        self.alphabet = target.alphabet

    def membership(self, w):
        return wfa_value(self.target, w)

    def equivalence(self, hypothesis):
        w = wfa_distinguish(hypothesis, self.target)
        if w is None:
            return None
        if wfa_value(hypothesis, w) == wfa_value(self.target, w):
            raise TeacherBugError(f"counterexample {w!r} does not disagree")
        return Counterexample(w)


class SortedTeacher:

    def __init__(self, target):
        self.target = target
        self.alphabet = target.alphabet

    def membership(self, w):
        _sort, out = run_sorted(self.target, w.generator, w.letters)
        return out

    def equivalence(self, hypothesis):
        ce = sorted_distinguish(hypothesis, self.target)
        if ce is None:
            return None
        x, letters = ce
        w = SortedWord(x, letters)
        if self.membership(w) == run_sorted(hypothesis, x, letters)[1]:
            raise TeacherBugError(f"counterexample {w!r} does not disagree")
        return Counterexample(w)


def all_lassos(base, max_spoke, max_loop):
    """Every lasso with |spoke| <= max_spoke and 1 <= |loop| <= max_loop."""
    spokes = list(iter_shortlex(base, max_spoke))
    loops = [w for w in iter_shortlex(base, max_loop) if w]
    return [Lasso(u, v) for u in spokes for v in loops]


@dataclass
class LassoOracleTarget:
    """An ω-regular target given as a lasso predicate plus a reference
    machine over the weak Wilke presentation (and an optional Moore machine
    for the finite-word part of the language).

    The reference machine is the ground truth for equivalence queries, the
    predicate for membership; construction cross-validates the two on all
    small lassos and spot-checks that the predicate is invariant under
    lasso equality."""

    base: tuple
    lasso_predicate: object
    reference: object
    finite_part: object = None
    seed: int = 0
    presentation: WilkeWeakAlphabet = field(init=False)

    def __post_init__(self):
        self.base = tuple(self.base)
        self.presentation = WilkeWeakAlphabet(self.base)
        if self.reference.alphabet != self.presentation.sorted_alphabet():
            raise ValidationError("reference machine must use the weak presentation")
        self._check_predicate_invariance()
        self._check_reference_agreement()

    def lasso_value(self, lasso):
        return 1 if self.lasso_predicate(lasso.spoke, lasso.loop) else 0

    def finite_value(self, w):
        if self.finite_part is None:
            return 0
        return run_moore(self.finite_part, w)

    def _check_predicate_invariance(self):
        rng = random.Random(self.seed)
        for _ in range(100):
            u = tuple(rng.choice(self.base) for _ in range(rng.randrange(0, 4)))
            v = tuple(rng.choice(self.base) for _ in range(rng.randrange(1, 4)))
            l1 = Lasso(u, v)
            variant = rng.randrange(3)
            if variant == 0:
                l2 = Lasso(u, v * rng.randrange(2, 4))
            elif variant == 1:
                i = rng.randrange(len(v))
                l2 = Lasso(u + v[:i], v[i:] + v[:i])
            else:
                l2 = Lasso(u + v, v)
            if not lasso_eq(l1, l2):
                raise ValidationError("lasso variant generator is broken")
            if self.lasso_value(l1) != self.lasso_value(l2):
                raise ValidationError(
                    f"lasso predicate is not invariant under lasso equality: "
                    f"{l1!r} vs {l2!r}"
                )

    def _check_reference_agreement(self):
        for lasso in all_lassos(self.base, 3, 3):
            w = lasso_instruction_word(lasso)
            _sort, out = run_sorted(self.reference, w.generator, w.letters)
            if out != self.lasso_value(lasso):
                raise ValidationError(
                    f"reference machine disagrees with the lasso predicate "
                    f"on {lasso!r}"
                )
        for w in iter_shortlex(self.base, 4):
            if not w:
                continue
            iw = semigroup_instruction_word(w)
            _sort, out = run_sorted(self.reference, iw[0], iw[1:])
            if out != self.finite_value(w):
                raise ValidationError(
                    f"reference machine disagrees with the finite part on {w!r}"
                )


class WilkeTeacher:
    """Teacher for the linearization of an ω-regular (lasso) language over
    the weak Wilke presentation: membership interprets the instruction word
    and routes finite values to the finite part and lassos to the
    predicate; equivalence runs against the reference machine."""

    def __init__(self, target: LassoOracleTarget):
        self.target = target
        self.alphabet = target.reference.alphabet

    def membership(self, w):
        value = interpret_wilke_word(w, self.target.base)
        if isinstance(value, Lasso):
            return self.target.lasso_value(value)
        return self.target.finite_value(value)

    def equivalence(self, hypothesis):
        ce = sorted_distinguish(hypothesis, self.target.reference)
        if ce is None:
            return None
        x, letters = ce
        w = SortedWord(x, letters)
        if self.membership(w) == run_sorted(hypothesis, x, letters)[1]:
            raise TeacherBugError(f"counterexample {w!r} does not disagree")
        return Counterexample(w)


def semigroup_teacher(target, presentation, weak=False):
    """Teacher for the linearization of a finite-word language, over the
    embedded instruction alphabet of the (weak or full) semigroup
    presentation."""
    return DfaTeacher(lin_dfa_of(target, presentation, weak=weak))


class InteractiveTeacher:
    """Minimal stdin teacher: y/n membership prompts; equivalence accepts
    the hypothesis or reads a counterexample word."""

    def __init__(self, alphabet, ask=input, show=print):
        self.alphabet = tuple(alphabet)
        self.ask = ask
        self.show = show

    def membership(self, w):
        text = "".join(str(a) for a in w) or "ε"
        while True:
            answer = self.ask(f"is {text!r} in the language? [y/n] ").strip().lower()
            if answer in ("y", "yes"):
                return 1
            if answer in ("n", "no"):
                return 0

    def equivalence(self, hypothesis):
        from .serialize import machine_to_dict

        self.show(machine_to_dict(hypothesis))
        answer = self.ask(
            "equivalent? [y = accept / or type a counterexample word] "
        ).strip()
        if answer.lower() in ("y", "yes", ""):
            return None
        return Counterexample(tuple(answer))


# -- builtin targets ----------------------------------------------------------


def _dfa(alphabet, transitions, outputs, initial=0):
    n = len(outputs)
    trans = tuple(tuple(transitions[q][a] for a in alphabet) for q in range(n))
    return MooreMachine(tuple(alphabet), n, initial, trans, tuple(outputs))


def sigma_star_dfa(alphabet=("a", "b")):
    return _dfa(alphabet, [{a: 0 for a in alphabet}], [1])


def ends_in_a_dfa():
    return _dfa("ab", [{"a": 1, "b": 0}, {"a": 1, "b": 0}], [0, 1])


def ab_star_dfa():
    return _dfa(
        "ab",
        [{"a": 1, "b": 2}, {"a": 2, "b": 0}, {"a": 2, "b": 2}],
        [1, 0, 0],
    )


def mod_counter_dfa(k):
    """Words over {a,b} whose number of a's is divisible by k."""
    trans = [{"a": (q + 1) % k, "b": q} for q in range(k)]
    return _dfa("ab", trans, [1] + [0] * (k - 1))


def suffix_a_at_dfa(n):
    """Words over {a,b} with an 'a' at the n-th position from the end
    (the canonical RFSA family: 2^n DFA states vs n+1 prime residuals)."""
    from .moore import minimize_moore

    states = [()]
    index = {(): 0}
    for w in iter_shortlex(("a", "b"), n):
        key = w[-n:] if len(w) >= n else w
        if key not in index:
            index[key] = len(states)
            states.append(key)
    trans = []
    outs = []
    for key in states:
        row = {}
        for c in "ab":
            nxt = (key + (c,))[-n:]
            row[c] = index[nxt]
        trans.append(row)
        outs.append(1 if len(key) == n and key[0] == "a" else 0)
    return minimize_moore(_dfa("ab", trans, outs))


def even_a_length_dfa():
    """{a^(2k) : k >= 1} over the single letter a."""
    return _dfa("a", [{"a": 1}, {"a": 2}, {"a": 1}], [0, 0, 1])


def ab_plus_dfa():
    return _dfa(
        "ab",
        [{"a": 1, "b": 3}, {"a": 3, "b": 2}, {"a": 1, "b": 3}, {"a": 3, "b": 3}],
        [0, 0, 1, 0],
    )


def _wilke_reference(base, plus_states, plus_initial, plus_append, omega_map):
    """Two-state-per-sort references share this shape: ω-sort states are
    0 = reject, 1 = accept, closed under letter prepending."""
    from .sorted_machine import sorted_machine

    alpha = WilkeWeakAlphabet(base).sorted_alphabet()
    transitions = {f"→{a}": plus_append[a] for a in base}
    transitions["ω"] = omega_map
    for a in base:
        transitions[f"←ω{a}"] = [0, 1]
    return sorted_machine(
        alpha,
        {"+": plus_states, "om": 2},
        {"+": plus_initial},
        transitions,
        {"+": [0] * plus_states, "om": [0, 1]},
    )


def inf_a_target(seed=0):
    """Lassos denoting words with infinitely many a's: the loop contains an
    a. Plus-sort states track whether the finite word contains an a."""
    reference = _wilke_reference(
        ("a", "b"),
        plus_states=2,
        plus_initial={"a": 1, "b": 0},
        plus_append={"a": [1, 1], "b": [0, 1]},
        omega_map=[0, 1],
    )
    return LassoOracleTarget(
        ("a", "b"), lambda u, v: "a" in v, reference, seed=seed
    )


def eventually_b_target(seed=0):
    """Lassos denoting words that are eventually all b's: the loop is b-only.
    Plus-sort states track whether the finite word contains an a."""
    reference = _wilke_reference(
        ("a", "b"),
        plus_states=2,
        plus_initial={"a": 1, "b": 0},
        plus_append={"a": [1, 1], "b": [0, 1]},
        omega_map=[1, 0],
    )
    return LassoOracleTarget(
        ("a", "b"), lambda u, v: all(c == "b" for c in v), reference, seed=seed
    )


def count_a_wfa():
    """The weighted language counting occurrences of a, over {a,b}."""
    from .wfa import wfa_from_lists

    return wfa_from_lists(
        "ab",
        [1, 0],
        {"a": [[1, 1], [0, 1]], "b": [[1, 0], [0, 1]]},
        [0, 1],
    )


def random_minimal_dfa(rng, max_states=12, alphabet=("a", "b")):
    """A random reachable minimal DFA with at most max_states states; used
    by the seeded learning corpus and the bench command."""
    alphabet = tuple(alphabet)
    from .moore import minimize_moore

    while True:
        n = rng.randrange(1, max_states + 1)
        trans = tuple(
            tuple(rng.randrange(n) for _ in alphabet) for _ in range(n)
        )
        outs = tuple(rng.randrange(2) for _ in range(n))
        m = minimize_moore(MooreMachine(alphabet, n, 0, trans, outs))
        if m.states <= max_states:
            return m


@dataclass(frozen=True)
class BuiltinTarget:
    name: str
    kind: str          # dfa | wfa | semigroup | omega
    description: str
    make: object       # zero-argument constructor of the target object

    def target(self):
        return self.make()

    def teacher(self, weak=False):
        target = self.make()
        if self.kind == "dfa":
            return DfaTeacher(target)
        if self.kind == "wfa":
            return WfaTeacher(target)
        if self.kind == "semigroup":
            from .algebra import SemigroupAlphabet

            return semigroup_teacher(
                target, SemigroupAlphabet(target.alphabet), weak=weak
            )
        if self.kind == "omega":
            return WilkeTeacher(target)
        raise ValidationError(f"unknown builtin kind {self.kind!r}")


def builtin_targets():
    """The named target catalog addressable from the CLI."""
    entries = [
        BuiltinTarget("sigma-star", "dfa", "all words over {a,b}", sigma_star_dfa),
        BuiltinTarget("ends-in-a", "dfa", "words ending in a", ends_in_a_dfa),
        BuiltinTarget("ab-star", "dfa", "(ab)*", ab_star_dfa),
        BuiltinTarget(
            "count-a", "wfa", "rational weight = number of a's", count_a_wfa
        ),
        BuiltinTarget(
            "even-a-length", "semigroup", "{a^2k : k>=1}", even_a_length_dfa
        ),
        BuiltinTarget("ab-plus", "semigroup", "(ab)+", ab_plus_dfa),
        BuiltinTarget(
            "inf-a", "omega", "lassos with infinitely many a's", inf_a_target
        ),
        BuiltinTarget(
            "eventually-b", "omega", "lassos eventually all b", eventually_b_target
        ),
    ]
    for k in range(2, 9):
        entries.append(
            BuiltinTarget(
                f"mod-{k}-a",
                "dfa",
                f"number of a's divisible by {k}",
                (lambda k=k: mod_counter_dfa(k)),
            )
        )
    for n in range(2, 5):
        entries.append(
            BuiltinTarget(
                f"suffix-a-at-{n}",
                "dfa",
                f"a at position {n} from the end",
                (lambda n=n: suffix_a_at_dfa(n)),
            )
        )
    return {e.name: e for e in entries}

"""Instruction-word presentations of semigroups and Wilke algebras,
language linearization, lassos, and extraction of syntactic algebras from
learned minimal machines.

A semigroup instruction word starts with a base letter and then grows the
value on the right («→a» appends a) or on the left («←a» prepends a).
The two-sorted Wilke presentation adds the «ω» letter, turning the current
finite word w into the lasso w^ω, and «←ωa», prepending a to an infinite
word. Learning runs over the weak variant (appends and ω only), which is
finite; the full semigroup presentation is also finite and is used when a
syntactic semigroup is to be extracted.
"""

import itertools
from collections import deque
from dataclasses import dataclass
from math import lcm

from .errors import ExtractionError, UnknownLetterError, ValidationError
from .moore import reach_state, run_moore
from .sorted_machine import SortedWord, sorted_alphabet, sorted_reach

PLUS = "+"
OM = "om"       # the ω sort
OMEGA_LETTER = "ω"


def append_letter(a):
    return "→" + a


def prepend_letter(a):
    return "←" + a


def omega_prepend_letter(a):
    return "←ω" + a


@dataclass(frozen=True)
class SemigroupAlphabet:
    """Presentation letters for the free semigroup on `base`: one append
    and one prepend instruction per base letter."""

    base: tuple

    def __post_init__(self):
        if not self.base or len(set(self.base)) != len(self.base):
            raise ValidationError("base alphabet must be non-empty, duplicate-free")

    @property
    def letters(self):
        return tuple(append_letter(a) for a in self.base) + tuple(
            prepend_letter(a) for a in self.base
        )

    @property
    def weak_letters(self):
        return tuple(append_letter(a) for a in self.base)

    def dfa_alphabet(self, weak=False):
        """Alphabet of the deterministic machine that reads an instruction
        word: the base letters (legal only first) then the instructions."""
        return tuple(self.base) + (self.weak_letters if weak else self.letters)


@dataclass(frozen=True)
class WilkeWeakAlphabet:
    """The weak two-sorted presentation of the free Wilke algebra: appends
    on the + sort, the ω letter into the ω sort, prepends on the ω sort.
    The (ω,+) sort pair is empty and stays absent."""

    base: tuple

    def __post_init__(self):
        if not self.base or len(set(self.base)) != len(self.base):
            raise ValidationError("base alphabet must be non-empty, duplicate-free")

    def sorted_alphabet(self):
        return sorted_alphabet(
            (PLUS, OM),
            {
                (PLUS, PLUS): [append_letter(a) for a in self.base],
                (PLUS, OM): [OMEGA_LETTER],
                (OM, OM): [omega_prepend_letter(a) for a in self.base],
            },
            {PLUS: list(self.base), OM: []},
        )


@dataclass(frozen=True)
class Lasso:
    """The ultimately periodic word spoke·loop^ω; the loop is non-empty."""

    spoke: tuple
    loop: tuple

    def __post_init__(self):
        if not self.loop:
            raise ValidationError("a lasso's loop must be non-empty")

    def unroll(self, n):
        out = list(self.spoke[:n])
        i = 0
        while len(out) < n:
            out.append(self.loop[i % len(self.loop)])
            i += 1
        return tuple(out)


def lasso_eq(l1, l2):
    """Whether two lassos denote the same ultimately periodic word, decided
    by comparing unrollings of length |u1|+|u2|+2·lcm(|v1|,|v2|)."""
    n = len(l1.spoke) + len(l2.spoke) + 2 * lcm(len(l1.loop), len(l2.loop))
    return l1.unroll(n) == l2.unroll(n)


def tokenize_instruction_word(text):
    """Split a human-written instruction word; the standalone token «←ω» is
    merged with the following base letter ("a →b ω ←ω a" parses as four
    instructions after the leading generator)."""
    raw = text.split()
    tokens = []
    i = 0
    while i < len(raw):
        if raw[i] == "←ω" and i + 1 < len(raw):
            tokens.append("←ω" + raw[i + 1])
            i += 2
        else:
            tokens.append(raw[i])
            i += 1
    return tuple(tokens)


def interpret_semigroup_word(w, base=None):
    """Fold an instruction word into the finite word it builds: the first
    token is the seed letter, «→a» appends, «←a» prepends."""
    if isinstance(w, str):
        w = tokenize_instruction_word(w)
    if not w:
        raise ValidationError("instruction word must be non-empty")
    first = w[0]
    if base is not None and first not in base:
        raise UnknownLetterError(f"{first!r} is not a base letter")
    if first.startswith(("→", "←")):
        raise ValidationError(f"instruction word must start with a base letter, got {first!r}")
    value = [first]
    for token in w[1:]:
        if token.startswith("→"):
            value.append(token[1:])
        elif token.startswith("←") and not token.startswith("←ω"):
            value.insert(0, token[1:])
        else:
            raise ValidationError(f"unexpected token {token!r} in semigroup word")
    return tuple(value)


def interpret_wilke_word(w, base=None):
    """Fold a sorted instruction word into a finite word (+ sort) or a
    Lasso (ω sort). Accepts a SortedWord, a token tuple, or a string."""
    if isinstance(w, SortedWord):
        tokens = (w.generator,) + w.letters
    elif isinstance(w, str):
        tokens = tokenize_instruction_word(w)
    else:
        tokens = tuple(w)
    if not tokens:
        raise ValidationError("instruction word must be non-empty")
    first = tokens[0]
    if base is not None and first not in base:
        raise UnknownLetterError(f"{first!r} is not a base letter")
    if first.startswith(("→", "←")) or first == OMEGA_LETTER:
        raise ValidationError(f"instruction word must start with a base letter, got {first!r}")
    value = (first,)
    lasso = None
    for token in tokens[1:]:
        if lasso is None:
            if token.startswith("→"):
                value = value + (token[1:],)
            elif token == OMEGA_LETTER:
                lasso = Lasso((), value)
            else:
                raise ValidationError(f"ill-sorted token {token!r} on the + sort")
        else:
            if token.startswith("←ω"):
                lasso = Lasso((token[2:],) + lasso.spoke, lasso.loop)
            else:
                raise ValidationError(f"ill-sorted token {token!r} on the ω sort")
    return value if lasso is None else lasso


def linearize_membership(presentation, oracle):
    """Turn a membership oracle on algebra values into one on instruction
    words: answer(w) = oracle(interpret(w)). For the Wilke presentation the
    oracle receives a finite word on the + sort and a Lasso on the ω sort.
    Interpretation errors propagate."""
    if isinstance(presentation, SemigroupAlphabet):
        return lambda w: oracle(interpret_semigroup_word(w, presentation.base))
    if isinstance(presentation, WilkeWeakAlphabet):
        return lambda w: oracle(interpret_wilke_word(w, presentation.base))
    raise TypeError(f"unknown presentation {presentation!r}")


def semigroup_instruction_word(value, tail=None):
    """The canonical left-to-right instruction word building `value`, with
    the letters of `tail` appended after it (used to multiply values)."""
    word = (value[0],) + tuple(append_letter(a) for a in value[1:])
    if tail:
        word += tuple(append_letter(a) for a in tail)
    return word


def lasso_instruction_word(lasso):
    """Sorted instruction word building spoke·loop^ω: seed the loop, take
    its ω-power, then prepend the spoke right-to-left."""
    letters = tuple(append_letter(a) for a in lasso.loop[1:]) + (OMEGA_LETTER,)
    letters += tuple(omega_prepend_letter(a) for a in reversed(lasso.spoke))
    return SortedWord(lasso.loop[0], letters)


# -- the deterministic automaton of a linearized finite-word language ------


def lin_dfa_of(target, presentation, weak=False):
    """Deterministic machine accepting the linearization of the target's
    language, over the embedded alphabet (base letters legal only as the
    first symbol). States track the transition map of the value built so
    far; a junk sink absorbs ill-formed words.

    The target is a Moore machine with 0/1 outputs over the base alphabet.
    """
    if tuple(target.alphabet) != tuple(presentation.base):
        raise ValidationError("target alphabet must equal the presentation base")
    n = target.states
    letter_maps = {
        a: tuple(target.transitions[q][i] for q in range(n))
        for i, a in enumerate(target.alphabet)
    }
    alphabet = presentation.dfa_alphabet(weak=weak)
    START, SINK = "start", "sink"
    number = {START: 0, SINK: 1}
    order = [START, SINK]
    queue = deque()

    def intern(state):
        if state not in number:
            number[state] = len(order)
            order.append(state)
            queue.append(state)
        return number[state]

    for x in presentation.base:
        intern(letter_maps[x])
    while queue:
        m = queue.popleft()
        for a in presentation.base:
            fa = letter_maps[a]
            intern(tuple(fa[m[q]] for q in range(n)))          # append
            if not weak:
                intern(tuple(m[fa[q]] for q in range(n)))      # prepend
    transitions = []
    for state in order:
        row = []
        for a in alphabet:
            if state == START:
                row.append(number[letter_maps[a]] if a in letter_maps else number[SINK])
            elif state == SINK:
                row.append(number[SINK])
            else:
                if a in letter_maps:
                    row.append(number[SINK])
                elif a.startswith("→"):
                    fa = letter_maps[a[1:]]
                    row.append(number[tuple(fa[state[q]] for q in range(n))])
                else:
                    fa = letter_maps[a[2:] if a.startswith("←ω") else a[1:]]
                    row.append(number[tuple(state[fa[q]] for q in range(n))])
        transitions.append(tuple(row))
    outputs = tuple(
        0 if s in (START, SINK) else target.outputs[s[target.initial]]
        for s in order
    )
    from .moore import MooreMachine

    return MooreMachine(alphabet, len(order), 0, tuple(transitions), outputs)


# -- extracted algebras ------------------------------------------------------


@dataclass(frozen=True)
class FiniteSemigroup:
    """Multiplication table on elements 0..size-1; element_of maps learned
    machine states to their element (value states only)."""

    size: int
    mult: tuple
    element_of: tuple   # (state, element) pairs

    def multiply(self, x, y):
        return self.mult[x][y]

    def is_associative(self):
        rng = range(self.size)
        return all(
            self.mult[self.mult[x][y]][z] == self.mult[x][self.mult[y][z]]
            for x in rng for y in rng for z in rng
        )


@dataclass(frozen=True)
class WilkeAlgebra:
    """Two-sorted algebra: product on the + sort, mixed product sending
    (+, ω) to ω, and the ω-power from + to ω."""

    plus_size: int
    omega_size: int
    product: tuple
    mixed: tuple
    omega_power: tuple

    def power(self, s, n):
        acc = s
        for _ in range(n - 1):
            acc = self.product[acc][s]
        return acc

    def check_axioms(self, max_power=4):
        """The Wilke laws: associativity, mixed associativity,
        s(ts)^ω=(st)^ω, and (s^n)^ω=s^ω for n up to max_power. Returns the
        first violating instance or None."""
        P = range(self.plus_size)
        Z = range(self.omega_size)
        for s in P:
            for t in P:
                st = self.product[s][t]
                for u in P:
                    if self.product[st][u] != self.product[s][self.product[t][u]]:
                        return ("assoc", s, t, u)
                for z in Z:
                    if self.mixed[st][z] != self.mixed[s][self.mixed[t][z]]:
                        return ("mixed-assoc", s, t, z)
                ts = self.product[t][s]
                if self.mixed[s][self.omega_power[ts]] != self.omega_power[st]:
                    return ("omega-shift", s, t)
        for s in P:
            for n in range(1, max_power + 1):
                if self.omega_power[self.power(s, n)] != self.omega_power[s]:
                    return ("omega-power", s, n)
        return None


def moore_value_witnesses(machine, presentation, weak=False):
    """Shortest-lex access instruction words for every state of a machine
    learned over the embedded semigroup alphabet, restricted to states
    reachable by well-formed instruction words (the value states)."""
    instruction_letters = presentation.weak_letters if weak else presentation.letters
    witnesses = {}
    queue = deque()
    for x in presentation.base:
        q = reach_state(machine, (x,))
        if q not in witnesses:
            witnesses[q] = (x,)
            queue.append(q)
    while queue:
        q = queue.popleft()
        for a in instruction_letters:
            r = machine.step(q, a)
            if r not in witnesses:
                witnesses[r] = witnesses[q] + (a,)
                queue.append(r)
    return witnesses


def extract_syntactic_semigroup(machine, witnesses):
    """Semigroup structure on the value states of the minimal automaton of a
    linearized semigroup language (full presentation).

    The product of two states interprets their witnesses into finite words
    u1, u2 and runs the machine on the instruction word building u1·u2.
    Associativity is verified exhaustively; failure means the target was
    not semigroup-recognizable or the presentation was misused."""
    states = sorted(witnesses)
    index = {q: i for i, q in enumerate(states)}
    values = {q: interpret_semigroup_word(witnesses[q]) for q in states}
    mult = []
    for q1 in states:
        row = []
        for q2 in states:
            w = semigroup_instruction_word(values[q1], tail=values[q2])
            q = reach_state(machine, w)
            if q not in index:
                raise ExtractionError(
                    f"product of {values[q1]!r} and {values[q2]!r} reached a "
                    f"non-value state"
                )
            row.append(index[q])
        mult.append(tuple(row))
    sg = FiniteSemigroup(
        len(states),
        tuple(mult),
        tuple((q, index[q]) for q in states),
    )
    if not sg.is_associative():
        raise ExtractionError("extracted multiplication table is not associative")
    return sg


def sorted_state_witnesses(machine, per_state=3, max_len=None):
    """Up to `per_state` access words per (sort, state), enumerated in
    shortlex order; used to cross-check extraction well-definedness.

    Only words that were themselves kept are extended, which bounds the
    search at per_state paths per state while still offering every state
    the extensions of all kept predecessors."""
    if max_len is None:
        max_len = machine.total_states() + per_state + 2
    witnesses = {}
    frontier = []
    for x in machine.alphabet.all_generators():
        sort, q = machine.initial_state(x)
        bucket = witnesses.setdefault((sort, q), [])
        if len(bucket) < per_state:
            w = SortedWord(x)
            bucket.append(w)
            frontier.append((w, sort, q))
    for _ in range(max_len):
        if not frontier:
            break
        nxt = []
        for w, sort, q in frontier:
            for a in machine.alphabet.letters_from(sort):
                nsort, nq = machine.step(sort, q, a)
                bucket = witnesses.setdefault((nsort, nq), [])
                if len(bucket) < per_state:
                    wa = w.extend(a)
                    bucket.append(wa)
                    nxt.append((wa, nsort, nq))
        frontier = nxt
    return witnesses


def extract_wilke_algebra(machine, witnesses):
    """Wilke-algebra structure on the states of a machine learned over the
    weak Wilke presentation.

    Every operation is computed by interpreting witness words into values,
    rebuilding the combined value as an instruction word, and running the
    machine. Because the weak presentation does not meet the hypotheses of
    the syntactic-algebra theorem, every table entry is recomputed from all
    available witness combinations; any disagreement aborts extraction.
    The Wilke axioms are then checked exhaustively."""
    plus_states = sorted(q for (s, q) in witnesses if s == PLUS)
    omega_states = sorted(q for (s, q) in witnesses if s == OM)
    p_index = {q: i for i, q in enumerate(plus_states)}
    z_index = {q: i for i, q in enumerate(omega_states)}

    def run_to(word, want_sort):
        sort, q = sorted_reach(machine, word.generator, word.letters)
        if sort != want_sort:
            raise ExtractionError(f"instruction word {word!r} ended at {sort!r}")
        return q

    def entry(combos, build, want_sort, index, what):
        results = set()
        for combo in combos:
            q = run_to(build(*combo), want_sort)
            if q not in index:
                raise ExtractionError(f"{what} reached an unwitnessed state")
            results.add(index[q])
        if len(results) != 1:
            raise ExtractionError(
                f"{what} is not well-defined over the weak presentation: "
                f"witness choices disagree ({sorted(results)})"
            )
        return results.pop()

    plus_values = {
        q: [interpret_wilke_word(w) for w in witnesses[(PLUS, q)]]
        for q in plus_states
    }
    omega_values = {
        q: [interpret_wilke_word(w) for w in witnesses[(OM, q)]]
        for q in omega_states
    }

    def build_product(u1, u2):
        return SortedWord(
            u1[0], tuple(append_letter(a) for a in u1[1:] + u2)
        )

    def build_power(u):
        return SortedWord(
            u[0], tuple(append_letter(a) for a in u[1:]) + (OMEGA_LETTER,)
        )

    def build_mixed(u, lasso):
        w = lasso_instruction_word(lasso)
        return SortedWord(
            w.generator,
            w.letters + tuple(omega_prepend_letter(a) for a in reversed(u)),
        )

    product, omega_power, mixed = [], [], []
    for q1 in plus_states:
        prow, mrow = [], []
        for q2 in plus_states:
            combos = list(itertools.product(plus_values[q1], plus_values[q2]))
            prow.append(
                entry(combos, build_product, PLUS, p_index,
                      f"product({q1},{q2})")
            )
        for z in omega_states:
            combos = list(itertools.product(plus_values[q1], omega_values[z]))
            mrow.append(
                entry(combos, build_mixed, OM, z_index, f"mixed({q1},{z})")
            )
        product.append(tuple(prow))
        mixed.append(tuple(mrow))
        omega_power.append(
            entry([(u,) for u in plus_values[q1]], build_power, OM, z_index,
                  f"omega_power({q1})")
        )
    algebra = WilkeAlgebra(
        len(plus_states),
        len(omega_states),
        tuple(product),
        tuple(mixed),
        tuple(omega_power),
    )
    violation = algebra.check_axioms()
    if violation is not None:
        raise ExtractionError(f"Wilke axiom violated: {violation!r}")
    return algebra

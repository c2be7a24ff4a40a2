"""Sort-indexed automata: states, letters and runs are typed by sorts.

A sorted machine consumes words x·a_1…a_n whose first element x is a
generator of some sort and whose letters compose sort-wise. With a single
sort and one generator this degenerates to a Moore machine. Letter names
must be globally unique across sort pairs so that a word's sorts can be
reconstructed from its letters alone.
"""

from collections import deque
from dataclasses import dataclass, field

from .errors import (
    AlphabetMismatchError,
    SortMismatchError,
    UnknownLetterError,
    ValidationError,
)


@dataclass(frozen=True)
class SortedAlphabet:
    """sorts; letters[(s,t)] = letters from sort s to sort t (sparse: absent
    pairs are empty); generators[s] = the input object's generators at s."""

    sorts: tuple
    letters: tuple      # ((src, dst), (letter, ...)) pairs, sparse
    generators: tuple   # (sort, (generator, ...)) pairs
    _letter_sort: dict = field(init=False, repr=False, compare=False)
    _gen_sort: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.sorts or len(set(self.sorts)) != len(self.sorts):
            raise ValidationError("sorts must be non-empty and duplicate-free")
        lsort = {}
        for (src, dst), letters in self.letters:
            if src not in self.sorts or dst not in self.sorts:
                raise ValidationError(f"unknown sort in pair ({src!r},{dst!r})")
            for a in letters:
                if a in lsort:
                    raise ValidationError(f"letter {a!r} reused across sort pairs")
                lsort[a] = (src, dst)
        gsort = {}
        for sort, gens in self.generators:
            if sort not in self.sorts:
                raise ValidationError(f"unknown generator sort {sort!r}")
            for x in gens:
                if x in gsort:
                    raise ValidationError(f"generator {x!r} reused across sorts")
                gsort[x] = sort
        if not gsort:
            raise ValidationError("at least one generator is required")
        object.__setattr__(self, "_letter_sort", lsort)
        object.__setattr__(self, "_gen_sort", gsort)

    def letter_pair(self, a):
        try:
            return self._letter_sort[a]
        except KeyError:
            raise UnknownLetterError(f"letter {a!r} not in sorted alphabet") from None

    def generator_sort(self, x):
        try:
            return self._gen_sort[x]
        except KeyError:
            raise UnknownLetterError(f"unknown generator {x!r}") from None

    def letters_from(self, sort):
        """Letters usable at `sort`, in declaration order."""
        out = []
        for (src, _dst), letters in self.letters:
            if src == sort:
                out.extend(letters)
        return out

    def all_letters(self):
        out = []
        for _pair, letters in self.letters:
            out.extend(letters)
        return out

    def all_generators(self):
        out = []
        for _sort, gens in self.generators:
            out.extend(gens)
        return out

    def end_sort(self, generator, letters):
        """Sort reached after the given letters; raises on a sort mismatch."""
        sort = self.generator_sort(generator)
        for a in letters:
            src, dst = self.letter_pair(a)
            if src != sort:
                raise SortMismatchError(
                    f"letter {a!r} expects sort {src!r}, word is at {sort!r}"
                )
            sort = dst
        return sort


def sorted_alphabet(sorts, letters, generators):
    """letters: {(src,dst): [letters]}; generators: {sort: [gens]}."""
    return SortedAlphabet(
        tuple(sorts),
        tuple((pair, tuple(ls)) for pair, ls in letters.items() if ls),
        tuple((s, tuple(gs)) for s, gs in generators.items() if gs),
    )


@dataclass(frozen=True)
class SortedWord:
    """A generator followed by a composable letter sequence."""

    generator: str
    letters: tuple = ()

    def extend(self, a):
        return SortedWord(self.generator, self.letters + (a,))


@dataclass(frozen=True)
class SortedExperiment:
    """A composable letter sequence applied from `start_sort` onwards; the
    empty experiment exists at every sort."""

    start_sort: str
    letters: tuple = ()


@dataclass(frozen=True)
class SortedMachine:
    """Per-sort state sets (states[s] counts them), per-sort initial
    assignment of generators, sort-typed transitions and per-sort outputs.

    transitions[letter][q] is the target state index (in the letter's
    destination sort) for source state q (in its source sort)."""

    alphabet: SortedAlphabet
    states: tuple       # (sort, count) pairs
    initial: tuple      # (sort, ((generator, state), ...)) pairs
    transitions: tuple  # (letter, (target, ...)) pairs
    outputs: tuple      # (sort, (output, ...)) pairs
    _states: dict = field(init=False, repr=False, compare=False)
    _initial: dict = field(init=False, repr=False, compare=False)
    _transitions: dict = field(init=False, repr=False, compare=False)
    _outputs: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        states = dict(self.states)
        initial = {s: dict(pairs) for s, pairs in self.initial}
        transitions = dict(self.transitions)
        outputs = dict(self.outputs)
        for s in self.alphabet.sorts:
            if s not in states:
                raise ValidationError(f"missing state count for sort {s!r}")
        for s, gens in self.alphabet.generators:
            assigned = initial.get(s, {})
            if set(assigned) != set(gens):
                raise ValidationError(
                    f"initial assignment at sort {s!r} must cover exactly {gens!r}"
                )
            for q in assigned.values():
                if not (0 <= q < states[s]):
                    raise ValidationError("initial state out of range")
        for a in self.alphabet.all_letters():
            src, dst = self.alphabet.letter_pair(a)
            row = transitions.get(a)
            if row is None or len(row) != states[src]:
                raise ValidationError(f"transition row for {a!r} must be total")
            for q in row:
                if not (0 <= q < states[dst]):
                    raise ValidationError(f"transition target for {a!r} out of range")
        for s in self.alphabet.sorts:
            outs = outputs.get(s, ())
            if len(outs) != states[s]:
                raise ValidationError(f"outputs at sort {s!r} must be total")
        object.__setattr__(self, "_states", states)
        object.__setattr__(self, "_initial", initial)
        object.__setattr__(self, "_transitions", transitions)
        object.__setattr__(self, "_outputs", outputs)

    def state_count(self, sort):
        return self._states[sort]

    def total_states(self):
        return sum(self._states[s] for s in self.alphabet.sorts)

    def initial_state(self, generator):
        sort = self.alphabet.generator_sort(generator)
        return sort, self._initial[sort][generator]

    def step(self, sort, q, a):
        src, dst = self.alphabet.letter_pair(a)
        if src != sort:
            raise SortMismatchError(
                f"letter {a!r} expects sort {src!r}, run is at {sort!r}"
            )
        return dst, self._transitions[a][q]

    def output(self, sort, q):
        return self._outputs[sort][q]


def sorted_machine(alphabet, states, initial, transitions, outputs):
    """Dict-based constructor: states {sort: n}, initial {sort: {gen: q}},
    transitions {letter: [targets]}, outputs {sort: [bits]}."""
    return SortedMachine(
        alphabet,
        tuple(sorted(states.items())),
        tuple(sorted((s, tuple(sorted(m.items()))) for s, m in initial.items())),
        tuple(sorted((a, tuple(row)) for a, row in transitions.items())),
        tuple(sorted((s, tuple(row)) for s, row in outputs.items())),
    )


def run_sorted(m, x, w):
    """Run from generator x over letters w; returns (end sort, output)."""
    sort, q = m.initial_state(x)
    for a in w:
        sort, q = m.step(sort, q, a)
    return sort, m.output(sort, q)


def sorted_reach(m, x, w):
    sort, q = m.initial_state(x)
    for a in w:
        sort, q = m.step(sort, q, a)
    return sort, q


def _reachable(m):
    """Reachable (sort, state) pairs in canonical BFS order: generators in
    declaration order, then letters in declaration order."""
    seen = []
    seen_set = set()
    queue = deque()
    for x in m.alphabet.all_generators():
        p = m.initial_state(x)
        if p not in seen_set:
            seen_set.add(p)
            seen.append(p)
            queue.append(p)
    while queue:
        sort, q = queue.popleft()
        for a in m.alphabet.letters_from(sort):
            p = m.step(sort, q, a)
            if p not in seen_set:
                seen_set.add(p)
                seen.append(p)
                queue.append(p)
    return seen


def minimize_sorted(m):
    """Sortwise reachable restriction followed by sortwise partition
    refinement; experiments separating states are sort-typed suffixes, so
    states are only ever merged within the same sort."""
    reach = _reachable(m)
    block = {}
    out_block = {}
    for sort, q in reach:
        key = (sort, m.output(sort, q))
        if key not in out_block:
            out_block[key] = len(out_block)
        block[(sort, q)] = out_block[key]
    while True:
        sigs = {}
        new_block = {}
        for sort, q in reach:
            sig = [block[(sort, q)]]
            for a in m.alphabet.letters_from(sort):
                sig.append(block[m.step(sort, q, a)])
            sig = tuple(sig)
            if sig not in sigs:
                sigs[sig] = len(sigs)
            new_block[(sort, q)] = sigs[sig]
        if len(sigs) == len(set(block.values())):
            break
        block = new_block
    # canonical per-sort numbering by global BFS discovery order of blocks
    rep = {}
    for p in reach:
        rep.setdefault(block[p], p)
    number = {}   # block id -> per-sort new index
    counts = {s: 0 for s in m.alphabet.sorts}
    order = []
    queue = deque()
    enqueued = set()
    for x in m.alphabet.all_generators():
        b = block[m.initial_state(x)]
        if b not in enqueued:
            enqueued.add(b)
            queue.append(b)
    while queue:
        b = queue.popleft()
        sort, q = rep[b]
        number[b] = counts[sort]
        counts[sort] += 1
        order.append(b)
        for a in m.alphabet.letters_from(sort):
            nb = block[m.step(sort, q, a)]
            if nb not in enqueued:
                enqueued.add(nb)
                queue.append(nb)
    states = {s: counts[s] for s in m.alphabet.sorts}
    initial = {}
    for s, gens in m.alphabet.generators:
        initial[s] = {x: number[block[m.initial_state(x)]] for x in gens}
    transitions = {}
    outputs = {s: [None] * counts[s] for s in m.alphabet.sorts}
    for a in m.alphabet.all_letters():
        src, _dst = m.alphabet.letter_pair(a)
        row = [None] * counts[src]
        for b in order:
            sort, q = rep[b]
            if sort == src:
                row[number[b]] = number[block[m.step(sort, q, a)]]
        transitions[a] = row
    for b in order:
        sort, q = rep[b]
        outputs[sort][number[b]] = m.output(sort, q)
    return sorted_machine(m.alphabet, states, initial, transitions, outputs)


def sorted_canonical_form(m):
    reach = _reachable(m)
    number = {}
    counts = {s: 0 for s in m.alphabet.sorts}
    for sort, q in reach:
        number[(sort, q)] = counts[sort]
        counts[sort] += 1
    trans = []
    for sort, q in reach:
        row = []
        for a in m.alphabet.letters_from(sort):
            row.append(number[m.step(sort, q, a)])
        trans.append((sort, m.output(sort, q), tuple(row)))
    init = tuple(
        number[m.initial_state(x)] for x in m.alphabet.all_generators()
    )
    return (m.alphabet, tuple(sorted(counts.items())), init, tuple(trans))


def sorted_isomorphic(m1, m2):
    return sorted_canonical_form(m1) == sorted_canonical_form(m2)


def sorted_distinguish(m1, m2):
    """None iff languages agree at every sort; otherwise the shortest
    (generator, letters) witness, ties broken by generator then letter
    declaration order. Requires identical sorted alphabets."""
    if m1.alphabet != m2.alphabet:
        raise AlphabetMismatchError("sorted alphabets differ")
    seen = set()
    queue = deque()
    for x in m1.alphabet.all_generators():
        p1 = m1.initial_state(x)
        p2 = m2.initial_state(x)
        if m1.output(*p1) != m2.output(*p2):
            return (x, ())
        pair = (p1, p2)
        if pair not in seen:
            seen.add(pair)
            queue.append((pair, x, ()))
    while queue:
        ((s1, q1), (s2, q2)), x, w = queue.popleft()
        for a in m1.alphabet.letters_from(s1):
            p1 = m1.step(s1, q1, a)
            p2 = m2.step(s2, q2, a)
            pair = (p1, p2)
            if pair in seen:
                continue
            seen.add(pair)
            wa = w + (a,)
            if m1.output(*p1) != m2.output(*p2):
                return (x, wa)
            queue.append((pair, x, wa))
    return None


def validate_sorted_machine(m):
    """Re-checks the sort-typing invariants (also run on construction)."""
    for a in m.alphabet.all_letters():
        m.alphabet.letter_pair(a)
    for x in m.alphabet.all_generators():
        m.initial_state(x)
    return True

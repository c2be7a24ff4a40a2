"""Deterministic Moore machines: execution, minimization, language equivalence.

A Moore machine attaches an output value to every state; with 0/1 outputs it
is a classical DFA. All values are immutable after construction and safe to
share between threads; every operation here is a pure function.
"""

from collections import deque
from dataclasses import dataclass, field

from .errors import AlphabetMismatchError, UnknownLetterError, ValidationError


@dataclass(frozen=True)
class MooreMachine:
    """States are 0..states-1; transitions[q][i] is the successor of state q
    on the i-th alphabet letter; outputs[q] is the state's output value."""

    alphabet: tuple
    states: int
    initial: int
    transitions: tuple
    outputs: tuple
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.alphabet or len(set(self.alphabet)) != len(self.alphabet):
            raise ValidationError("alphabet must be non-empty and duplicate-free")
        if not (0 <= self.initial < self.states):
            raise ValidationError("initial state out of range")
        if len(self.transitions) != self.states or len(self.outputs) != self.states:
            raise ValidationError("transition/output tables must cover every state")
        for row in self.transitions:
            if len(row) != len(self.alphabet):
                raise ValidationError("transition row must cover every letter")
            for q in row:
                if not (0 <= q < self.states):
                    raise ValidationError("transition target out of range")
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(self.alphabet)})

    def letter_index(self, a):
        try:
            return self._index[a]
        except KeyError:
            raise UnknownLetterError(f"letter {a!r} not in alphabet") from None

    def step(self, state, a):
        return self.transitions[state][self.letter_index(a)]


def moore_from_dicts(alphabet, transitions, outputs, initial=0):
    """Build a machine from {state: {letter: state}} / {state: output} dicts."""
    alphabet = tuple(alphabet)
    n = len(outputs)
    trans = tuple(
        tuple(transitions[q][a] for a in alphabet) for q in range(n)
    )
    outs = tuple(outputs[q] for q in range(n))
    return MooreMachine(alphabet, n, initial, trans, outs)


def run_moore(m, w):
    """Output of the state reached from the initial state on input w.
    The empty word returns the initial state's output."""
    q = m.initial
    for a in w:
        q = m.step(q, a)
    return m.outputs[q]


def reach_state(m, w):
    q = m.initial
    for a in w:
        q = m.step(q, a)
    return q


def reachable_states(m):
    """States reachable from the initial state, in BFS discovery order
    (letters scanned in alphabet order, so the order is canonical)."""
    seen = [m.initial]
    seen_set = {m.initial}
    queue = deque([m.initial])
    while queue:
        q = queue.popleft()
        for i in range(len(m.alphabet)):
            r = m.transitions[q][i]
            if r not in seen_set:
                seen_set.add(r)
                seen.append(r)
                queue.append(r)
    return seen


def minimize_moore(m):
    """Minimal machine for the same language: restrict to the reachable part,
    then merge states by iterated output-respecting partition refinement."""
    reach = reachable_states(m)
    # block ids keyed by output value, in reach discovery order
    block = {}
    out_block = {}
    for q in reach:
        v = m.outputs[q]
        if v not in out_block:
            out_block[v] = len(out_block)
        block[q] = out_block[v]
    while True:
        sigs = {}
        new_block = {}
        for q in reach:
            sig = (block[q],) + tuple(
                block[m.transitions[q][i]] for i in range(len(m.alphabet))
            )
            if sig not in sigs:
                sigs[sig] = len(sigs)
            new_block[q] = sigs[sig]
        if len(sigs) == len(set(block.values())):
            break
        block = new_block
    # renumber blocks canonically by BFS from the initial block
    rep = {}
    for q in reach:
        rep.setdefault(block[q], q)
    order = []
    number = {}
    queue = deque([block[m.initial]])
    number[block[m.initial]] = 0
    order.append(block[m.initial])
    while queue:
        b = queue.popleft()
        q = rep[b]
        for i in range(len(m.alphabet)):
            nb = block[m.transitions[q][i]]
            if nb not in number:
                number[nb] = len(number)
                order.append(nb)
                queue.append(nb)
    trans = tuple(
        tuple(number[block[m.transitions[rep[b]][i]]] for i in range(len(m.alphabet)))
        for b in order
    )
    outs = tuple(m.outputs[rep[b]] for b in order)
    return MooreMachine(m.alphabet, len(order), 0, trans, outs)


def canonical_form(m):
    """Canonical renumbering of the reachable part by BFS order. Two
    reachable machines are isomorphic iff their canonical forms are equal."""
    reach = reachable_states(m)
    number = {q: i for i, q in enumerate(reach)}
    trans = tuple(
        tuple(number[m.transitions[q][i]] for i in range(len(m.alphabet)))
        for q in reach
    )
    outs = tuple(m.outputs[q] for q in reach)
    return (m.alphabet, len(reach), 0, trans, outs)


def moore_isomorphic(m1, m2):
    """Isomorphism of the reachable parts (exact on minimized machines)."""
    return canonical_form(m1) == canonical_form(m2)


def moore_distinguish(m1, m2):
    """None iff the two machines accept the same language; otherwise the
    shortest word on which their outputs differ, ties broken
    lexicographically by alphabet order. Requires identical alphabets."""
    if m1.alphabet != m2.alphabet:
        raise AlphabetMismatchError(
            f"alphabets differ: {m1.alphabet!r} vs {m2.alphabet!r}"
        )
    start = (m1.initial, m2.initial)
    if m1.outputs[start[0]] != m2.outputs[start[1]]:
        return ()
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        (q1, q2), w = queue.popleft()
        for i, a in enumerate(m1.alphabet):
            pair = (m1.transitions[q1][i], m2.transitions[q2][i])
            if pair in seen:
                continue
            seen.add(pair)
            wa = w + (a,)
            if m1.outputs[pair[0]] != m2.outputs[pair[1]]:
                return wa
            queue.append((pair, wa))
    return None

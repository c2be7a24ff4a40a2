"""Semilattice-automaton learning: the NL*-style domain whose hypotheses are
deterministic machines over the join-closure of the table rows, and whose
final output doubles as a canonical residual finite-state automaton (RFSA)
on the join-irreducible rows.

Rows are packed bit vectors ordered pointwise (bitmask subset order); joins
are bitwise OR. A successor row is "represented" when it equals the join of
the S-rows below it, and consistency asks one-letter extensions to preserve
the pointwise order.
"""

from collections import deque
from dataclasses import dataclass, field

from .errors import BudgetExceededError, InternalConsistencyError, UnknownLetterError
from .moore import MooreMachine, canonical_form, moore_distinguish, run_moore
from .table import TableDomain

JOIN_CLOSURE_CAP = 4096


@dataclass(frozen=True)
class Rfsa:
    """Nondeterministic acceptor whose states are join-irreducible rows.
    transitions[q][i] is the tuple of successor states of q on letter i."""

    alphabet: tuple
    states: int
    initial: tuple
    transitions: tuple
    accepting: tuple
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(self.alphabet)})

    def accepts(self, word):
        current = set(self.initial)
        for a in word:
            i = self._index[a]
            current = {q for p in current for q in self.transitions[p][i]}
        return 1 if current & set(self.accepting) else 0


def determinize(r):
    """Subset construction; state 0 is the initial subset."""
    start = frozenset(r.initial)
    number = {start: 0}
    order = [start]
    queue = deque([start])
    trans = []
    accepting = set(r.accepting)
    while queue:
        subset = queue.popleft()
        row = []
        for i in range(len(r.alphabet)):
            nxt = frozenset(q for p in subset for q in r.transitions[p][i])
            if nxt not in number:
                number[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            row.append(number[nxt])
        trans.append(tuple(row))
    outputs = tuple(1 if subset & accepting else 0 for subset in order)
    return MooreMachine(r.alphabet, len(order), 0, tuple(trans), outputs)


def rfsa_language_equiv(r, d):
    """None iff the RFSA's nondeterministic semantics equals the language of
    the Moore machine d; otherwise a distinguishing word."""
    return moore_distinguish(determinize(r), d)


class JslDomain(TableDomain):

    # closedness/consistency here are the NL*-style conditions, coarser
    # than the categorical ones, so a counterexample is only guaranteed to
    # change the hypothesis, not necessarily to break the table
    ce_invalidates_table = False
    # suffix processing keeps the experiment set fine enough for the final
    # row lattice to expose the true join-irreducible residuals
    default_mode = "suffix"

    def __init__(self, alphabet, closure_cap=JOIN_CLOSURE_CAP):
        self.alphabet = tuple(alphabet)
        self._letter_index = {a: i for i, a in enumerate(self.alphabet)}
        if len(self._letter_index) != len(self.alphabet) or not self.alphabet:
            raise ValueError("alphabet must be non-empty and duplicate-free")
        self.closure_cap = closure_cap

    # -- word plumbing ---------------------------------------------------

    def initial_access_words(self):
        return [()]

    def initial_experiments(self):
        return [()]

    def join(self, word, experiment):
        return word + experiment

    def successor(self, word, letter):
        return word + (letter,)

    def prefixes(self, word):
        return [word[:i] for i in range(len(word) + 1)]

    def experiment_suffixes(self, experiment):
        n = len(experiment)
        return [experiment[n - k:] for k in range(n + 1)]

    def suffix_experiments(self, word):
        return self.experiment_suffixes(word)

    def prepend_experiment(self, letter, experiment):
        return (letter,) + experiment

    def validate_word(self, word):
        for a in word:
            if a not in self._letter_index:
                raise UnknownLetterError(f"letter {a!r} not in alphabet")

    def word_key(self, word):
        return (len(word), tuple(self._letter_index[a] for a in word))

    # -- rows --------------------------------------------------------------

    def compute_row(self, table, word):
        bits = 0
        for i, t in enumerate(table.T):
            if table.lookup(word, t):
                bits |= 1 << i
        return bits

    @staticmethod
    def _leq(r1, r2):
        return r1 & r2 == r1

    def _cover(self, table, row):
        """Join of all S-rows pointwise below the given row."""
        join = 0
        for s in table.S:
            r = table.row(s)
            if r & row == r:
                join |= r
        return join

    def row_covered(self, table, word):
        row = table.row(word)
        return self._cover(table, row) == row

    # -- defects --------------------------------------------------------------

    def closedness_defects(self, table):
        """All (s, a) whose successor row is not the join of the S-rows
        below it, ordered by the successor word (shortlex)."""
        defects = [
            (s, a)
            for s in table.S
            for a in self.alphabet
            if not self.row_covered(table, s + (a,))
        ]
        defects.sort(key=lambda d: self.word_key(d[0] + (d[1],)))
        return defects

    def consistency_defects(self, table):
        """Pairs with comparable rows whose one-letter extensions violate
        the pointwise order, with the least witnessing (letter, experiment)."""
        words = sorted(table.S, key=self.word_key)
        candidates = sorted(
            ((a, t) for a in self.alphabet for t in table.T),
            key=lambda at: self.word_key((at[0],) + at[1]),
        )
        defects = []
        for s1 in words:
            r1 = table.row(s1)
            for s2 in words:
                if s1 == s2 or not self._leq(r1, table.row(s2)):
                    continue
                for a, t in candidates:
                    if table.lookup(s1, (a,) + t) and not table.lookup(s2, (a,) + t):
                        defects.append((s1, s2, a, t))
                        break
        return defects

    def consistency_pair_active(self, table, s1, s2):
        return self._leq(table.row(s1), table.row(s2))

    # -- hypothesis -----------------------------------------------------------

    def _closure(self, table):
        """Join closure of the S-rows including the bottom element, as a
        sorted list of bitmasks (deterministic state numbering)."""
        generators = sorted({table.row(s) for s in table.S})
        closure = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for c in frontier:
                for g in generators:
                    j = c | g
                    if j not in closure:
                        closure.add(j)
                        nxt.append(j)
                        if len(closure) > self.closure_cap:
                            raise BudgetExceededError(
                                f"join closure exceeded cap {self.closure_cap}"
                            )
            frontier = nxt
        return sorted(closure)

    def _delta_row(self, table, c, letter):
        """Join of row(sa) over the S-words whose row lies below c."""
        join = 0
        for s in table.S:
            if self._leq(table.row(s), c):
                join |= table.row(s + (letter,))
        return join

    def make_hypothesis(self, table):
        """Deterministic machine on the join closure of the S-rows; its
        transition at a closure element joins the successor rows of the
        generators below it."""
        closure = self._closure(table)
        index = {c: i for i, c in enumerate(closure)}
        eps_index = table.T.index(())
        transitions = []
        for c in closure:
            row = []
            for a in self.alphabet:
                target = self._delta_row(table, c, a)
                if target not in index:
                    raise InternalConsistencyError(
                        "successor join escaped the closure (table not closed?)"
                    )
                row.append(index[target])
            transitions.append(tuple(row))
        # the fill-in must send row(s) to row(sa) on every generator
        for s in table.S:
            for a in self.alphabet:
                if self._delta_row(table, table.row(s), a) != table.row(s + (a,)):
                    raise InternalConsistencyError(
                        f"transition on {a!r} ill-defined at row of {s!r}"
                    )
        outputs = tuple(1 if (c >> eps_index) & 1 else 0 for c in closure)
        return MooreMachine(
            self.alphabet,
            len(closure),
            index[table.row(())],
            tuple(transitions),
            outputs,
        )

    def machine_value(self, machine, word):
        return run_moore(machine, word)

    def check_minimal(self, machine, table):
        """Minimality in the semilattice sense: states are distinct joins of
        generator rows, which holds by construction; re-verified cheaply by
        checking the machine has no duplicate states."""
        return len(set(zip(machine.outputs, machine.transitions))) == machine.states

    def machines_equal(self, m1, m2):
        return canonical_form(m1) == canonical_form(m2)

    # -- canonical RFSA ----------------------------------------------------------

    def prime_rows(self, table):
        """Join-irreducible S-rows: nonzero rows not equal to the join of the
        strictly smaller S-rows."""
        rows = sorted({table.row(s) for s in table.S})
        primes = []
        for r in rows:
            if r == 0:
                continue
            join = 0
            for r2 in rows:
                if r2 != r and self._leq(r2, r):
                    join |= r2
            if join != r:
                primes.append(r)
        return primes

    def rfsa(self, table):
        """Canonical RFSA on the join-irreducible rows of the final table."""
        primes = self.prime_rows(table)
        index = {r: i for i, r in enumerate(primes)}
        rep = {}
        for s in sorted(table.S, key=self.word_key):
            rep.setdefault(table.row(s), s)
        eps_index = table.T.index(())
        initial = tuple(
            index[r] for r in primes if self._leq(r, table.row(()))
        )
        transitions = []
        for r in primes:
            s = rep[r]
            row = []
            for a in self.alphabet:
                target_row = table.row(s + (a,))
                row.append(
                    tuple(index[q] for q in primes if self._leq(q, target_row))
                )
            transitions.append(tuple(row))
        accepting = tuple(
            index[r] for r in primes if (r >> eps_index) & 1
        )
        return Rfsa(self.alphabet, len(primes), initial, tuple(transitions), accepting)

    def hypothesis_pair(self, table):
        """The deterministic join-closure machine together with the RFSA on
        its join-irreducible rows."""
        return self.make_hypothesis(table), self.rfsa(table)

"""Classical DFA learning: the Boolean observation-table domain.

Rows are packed bit vectors keyed by T's insertion order; appending a
column never disturbs existing bit positions, so table growth is cheap.
"""

from .errors import InternalConsistencyError, UnknownLetterError
from .moore import MooreMachine, minimize_moore, run_moore
from .table import TableDomain


class BoolDomain(TableDomain):
    """Words are tuples of letters; the output object is {0, 1}."""

    def __init__(self, alphabet):
        self.alphabet = tuple(alphabet)
        self._letter_index = {a: i for i, a in enumerate(self.alphabet)}
        if len(self._letter_index) != len(self.alphabet) or not self.alphabet:
            raise ValueError("alphabet must be non-empty and duplicate-free")

    # -- word plumbing -------------------------------------------------

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

    # -- rows ----------------------------------------------------------

    def compute_row(self, table, word):
        bits = 0
        for i, t in enumerate(table.T):
            if table.lookup(word, t):
                bits |= 1 << i
        return bits

    def _s_rows(self, table):
        return {table.row(s) for s in table.S}

    def row_covered(self, table, word):
        return table.row(word) in self._s_rows(table)

    # -- defects ---------------------------------------------------------

    def closedness_defects(self, table):
        """All (s, a) whose successor row is not represented among S-rows,
        ordered by the successor word (shortlex)."""
        rows = self._s_rows(table)
        defects = [
            (s, a)
            for s in table.S
            for a in self.alphabet
            if table.row(s + (a,)) not in rows
        ]
        defects.sort(key=lambda d: self.word_key(d[0] + (d[1],)))
        return defects

    def consistency_defects(self, table):
        """For every pair of equal rows whose one-letter extensions differ,
        the lexicographically least witnessing (letter, experiment)."""
        words = sorted(table.S, key=self.word_key)
        candidates = sorted(
            ((a, t) for a in self.alphabet for t in table.T),
            key=lambda at: self.word_key((at[0],) + at[1]),
        )
        defects = []
        for i, s1 in enumerate(words):
            r1 = table.row(s1)
            for s2 in words[i + 1:]:
                if r1 != table.row(s2):
                    continue
                for a, t in candidates:
                    if table.lookup(s1, (a,) + t) != table.lookup(s2, (a,) + t):
                        defects.append((s1, s2, a, t))
                        break
        return defects

    def consistency_pair_active(self, table, s1, s2):
        return table.row(s1) == table.row(s2)

    # -- hypothesis ------------------------------------------------------

    def make_hypothesis(self, table):
        """States are the row classes of S; transitions follow successor
        rows; a state accepts iff its bit at the empty experiment is set."""
        words = sorted(table.S, key=self.word_key)
        state_of = {}
        reps = []
        for s in words:
            r = table.row(s)
            if r not in state_of:
                state_of[r] = len(reps)
                reps.append(s)
        eps_index = table.T.index(())
        transitions = []
        for rep in reps:
            row = []
            for a in self.alphabet:
                succ = table.row(rep + (a,))
                if succ not in state_of:
                    raise InternalConsistencyError(
                        f"row of {rep + (a,)!r} is unrepresented (table not closed?)"
                    )
                row.append(state_of[succ])
            transitions.append(tuple(row))
        # defensive consistency re-check across whole row classes
        for s in words:
            for a in self.alphabet:
                succ = table.row(s + (a,))
                if state_of.get(succ) != transitions[state_of[table.row(s)]][
                    self._letter_index[a]
                ]:
                    raise InternalConsistencyError(
                        f"transition on {a!r} ill-defined at row of {s!r}"
                    )
        outputs = tuple(
            1 if (table.row(rep) >> eps_index) & 1 else 0 for rep in reps
        )
        return MooreMachine(
            self.alphabet,
            len(reps),
            state_of[table.row(())],
            tuple(transitions),
            outputs,
        )

    def machine_value(self, machine, word):
        return run_moore(machine, word)

    def check_minimal(self, machine, table):
        return minimize_moore(machine).states == machine.states

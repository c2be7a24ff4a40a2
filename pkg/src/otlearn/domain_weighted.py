"""Weighted learning over exact rationals: rows are vectors, closedness is
span membership, hypotheses are weighted automata.

The access words kept in S always have linearly independent rows (the basis
discipline): extend_s only ever adds a word whose row escapes the current
span, and counterexamples are folded into T, never into S. Consistency is
therefore vacuous and this domain only runs in suffix (Maler-Pnueli) mode.
"""

from fractions import Fraction

from . import linalg
from .errors import InternalConsistencyError, UnknownLetterError
from .table import SUFFIX, TableDomain
from .wfa import WeightedAutomaton, wfa_value


class WeightedDomain(TableDomain):

    default_mode = SUFFIX
    # consistency is vacuous here, and counterexample suffixes may refine
    # row values without breaking span-closedness; progress shows up as a
    # strict growth of the table's column rank and a changed hypothesis
    ce_invalidates_table = False

    def __init__(self, alphabet):
        self.alphabet = tuple(alphabet)
        self._letter_index = {a: i for i, a in enumerate(self.alphabet)}
        if len(self._letter_index) != len(self.alphabet) or not self.alphabet:
            raise ValueError("alphabet must be non-empty and duplicate-free")

    def check_mode(self, mode):
        if mode != SUFFIX:
            raise ValueError(
                "the weighted domain requires suffix mode: prefix-closing S "
                "would break the independent-rows basis discipline"
            )

    # -- word plumbing (same free monoid as the Boolean domain) ---------

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

    # -- rows ------------------------------------------------------------

    def compute_row(self, table, word):
        return tuple(Fraction(table.lookup(word, t)) for t in table.T)

    def _basis(self, table):
        return [table.row(s) for s in table.S]

    def row_covered(self, table, word):
        return linalg.in_span(self._basis(table), table.row(word))

    # -- defects -----------------------------------------------------------

    def closedness_defects(self, table):
        """All (s, a) whose successor row escapes the span of the S-rows,
        ordered by the successor word (shortlex)."""
        basis = self._basis(table)
        defects = [
            (s, a)
            for s in table.S
            for a in self.alphabet
            if not linalg.in_span(basis, table.row(s + (a,)))
        ]
        defects.sort(key=lambda d: self.word_key(d[0] + (d[1],)))
        return defects

    def consistency_defects(self, table):
        """Vacuously empty under the basis discipline; a dependent basis
        signals a bug in the learner, not a repairable defect. The one
        tolerated degeneracy is an all-zero row at the initial access word
        (a language with value 0 on every word currently in T)."""
        nonzero = [r for r in self._basis(table) if any(x != 0 for x in r)]
        if linalg.rank(nonzero) != len(nonzero):
            raise InternalConsistencyError(
                "S-rows became linearly dependent; basis discipline violated"
            )
        return []

    def consistency_pair_active(self, table, s1, s2):
        return False

    # -- hypothesis ----------------------------------------------------------

    def make_hypothesis(self, table):
        """Dimension = |S|. The matrix row of letter a at basis word s holds
        the coordinates of row(sa) in the basis; the initial vector is the
        unit vector at the empty word and the final vector is the column of
        values at the empty experiment."""
        basis = self._basis(table)
        d = len(basis)
        eps_index = table.T.index(())
        matrices = []
        for a in self.alphabet:
            rows = []
            for s in table.S:
                coords = linalg.solve_coords(basis, table.row(s + (a,)))
                if coords is None:
                    raise InternalConsistencyError(
                        f"row of {s + (a,)!r} escapes the basis (table not closed?)"
                    )
                rows.append(coords)
            matrices.append(tuple(rows))
        eps_word = table.S.index(())
        initial = tuple(
            Fraction(1) if i == eps_word else Fraction(0) for i in range(d)
        )
        final = tuple(basis[i][eps_index] for i in range(d))
        return WeightedAutomaton(self.alphabet, d, initial, tuple(matrices), final)

    def machine_value(self, machine, word):
        return wfa_value(machine, word)

    def check_minimal(self, machine, table):
        """Both reachability spaces must be full; the only tolerated
        deficiency is one unobservable dimension while the initial access
        word's row is still all-zero (the degenerate zero-row phase, and
        the dimension-1 automaton of the zero language)."""
        from .wfa import backward_rank, forward_rank

        d = machine.dimension
        fwd, bwd = forward_rank(machine), backward_rank(machine)
        if fwd == d and bwd == d:
            return True
        eps_zero = all(x == 0 for x in table.row(()))
        return eps_zero and fwd == d and bwd == d - 1

    def machines_equal(self, m1, m2):
        from .wfa import wfa_distinguish

        return wfa_distinguish(m1, m2) is None

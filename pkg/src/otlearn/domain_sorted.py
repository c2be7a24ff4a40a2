"""Sorted-automaton learning: the table domain over sort-indexed state sets.

Access words carry their generator; experiments carry the sort they start
from, and a row only ranges over the experiments whose start sort matches
the word's end sort. With a single sort and a single generator the domain
is observationally identical to the Boolean one.
"""

from .errors import InternalConsistencyError, SortMismatchError
from .sorted_machine import (
    SortedExperiment,
    SortedWord,
    minimize_sorted,
    run_sorted,
    sorted_machine,
)
from .table import TableDomain


class SortedDomain(TableDomain):

    def __init__(self, alphabet):
        self.alphabet = alphabet
        letters = alphabet.all_letters()
        self._letter_index = {a: i for i, a in enumerate(letters)}
        gens = alphabet.all_generators()
        self._gen_index = {x: i for i, x in enumerate(gens)}
        self._sort_index = {s: i for i, s in enumerate(alphabet.sorts)}

    # -- word plumbing ------------------------------------------------

    def initial_access_words(self):
        return [SortedWord(x) for x in self.alphabet.all_generators()]

    def initial_experiments(self):
        return [SortedExperiment(s) for s in self.alphabet.sorts]

    def end_sort(self, word):
        return self.alphabet.end_sort(word.generator, word.letters)

    def exp_start_sort(self, experiment):
        return experiment.start_sort

    def join(self, word, experiment):
        if self.end_sort(word) != experiment.start_sort:
            raise SortMismatchError(
                f"experiment at {experiment.start_sort!r} joined onto a word "
                f"ending at {self.end_sort(word)!r}"
            )
        return SortedWord(word.generator, word.letters + experiment.letters)

    def successor(self, word, letter):
        return word.extend(letter)

    def successors_of(self, word):
        sort = self.end_sort(word)
        return [(a, word.extend(a)) for a in self.alphabet.letters_from(sort)]

    def prefixes(self, word):
        return [
            SortedWord(word.generator, word.letters[:i])
            for i in range(len(word.letters) + 1)
        ]

    def experiment_suffixes(self, experiment):
        out = []
        sort = experiment.start_sort
        letters = experiment.letters
        n = len(letters)
        sorts = [sort]
        for a in letters:
            sort = self.alphabet.letter_pair(a)[1]
            sorts.append(sort)
        for k in range(n + 1):
            out.append(SortedExperiment(sorts[n - k], letters[n - k:]))
        return out

    def suffix_experiments(self, word):
        """Left truncations of a counterexample's letter part, each starting
        at the sort reached by the dropped prefix."""
        sort = self.alphabet.generator_sort(word.generator)
        sorts = [sort]
        for a in word.letters:
            sort = self.alphabet.letter_pair(a)[1]
            sorts.append(sort)
        n = len(word.letters)
        return [
            SortedExperiment(sorts[i], word.letters[i:]) for i in range(n, -1, -1)
        ]

    def prepend_experiment(self, letter, experiment):
        src, dst = self.alphabet.letter_pair(letter)
        if dst != experiment.start_sort:
            raise SortMismatchError(
                f"cannot prepend {letter!r} (into {dst!r}) to an experiment "
                f"starting at {experiment.start_sort!r}"
            )
        return SortedExperiment(src, (letter,) + experiment.letters)

    def validate_word(self, word):
        self.end_sort(word)

    def word_key(self, word):
        return (
            len(word.letters),
            self._gen_index[word.generator],
            tuple(self._letter_index[a] for a in word.letters),
        )

    def experiment_key(self, experiment):
        return (
            len(experiment.letters),
            self._sort_index[experiment.start_sort],
            tuple(self._letter_index[a] for a in experiment.letters),
        )

    def experiment_applies(self, word, experiment):
        return self.end_sort(word) == experiment.start_sort

    # -- rows: (end sort, bits over the matching experiments) ------------

    def _experiments_at(self, table, sort):
        return [t for t in table.T if t.start_sort == sort]

    def compute_row(self, table, word):
        sort = self.end_sort(word)
        bits = 0
        i = 0
        for t in table.T:
            if t.start_sort != sort:
                continue
            if table.lookup(word, t):
                bits |= 1 << i
            i += 1
        return (sort, bits)

    def _s_rows(self, table):
        return {table.row(s) for s in table.S}

    def row_covered(self, table, word):
        return table.row(word) in self._s_rows(table)

    # -- defects -----------------------------------------------------------

    def closedness_defects(self, table):
        rows = self._s_rows(table)
        defects = []
        for s in table.S:
            for a, succ in self.successors_of(s):
                if table.row(succ) not in rows:
                    defects.append((s, a))
        defects.sort(key=lambda d: self.word_key(d[0].extend(d[1])))
        return defects

    def consistency_defects(self, table):
        """Equal rows (necessarily of equal end sort) whose extensions
        differ; the witnessing experiment is sort-typed by the letter."""
        words = sorted(table.S, key=self.word_key)
        defects = []
        for i, s1 in enumerate(words):
            r1 = table.row(s1)
            for s2 in words[i + 1:]:
                if table.row(s2) != r1:
                    continue
                sort = r1[0]
                candidates = sorted(
                    (
                        (a, t)
                        for a in self.alphabet.letters_from(sort)
                        for t in self._experiments_at(
                            table, self.alphabet.letter_pair(a)[1]
                        )
                    ),
                    key=lambda at: self.experiment_key(
                        self.prepend_experiment(at[0], at[1])
                    ),
                )
                for a, t in candidates:
                    if table.lookup(s1.extend(a), t) != table.lookup(s2.extend(a), t):
                        defects.append((s1, s2, a, t))
                        break
        return defects

    def consistency_pair_active(self, table, s1, s2):
        return table.row(s1) == table.row(s2)

    # -- hypothesis -------------------------------------------------------

    def make_hypothesis(self, table):
        """Per-sort row-class states; the initial assignment sends each
        generator to the class of its zero-letter word."""
        words = sorted(table.S, key=self.word_key)
        state_of = {}
        reps = {s: [] for s in self.alphabet.sorts}
        for w in words:
            r = table.row(w)
            if r not in state_of:
                sort = r[0]
                state_of[r] = len(reps[sort])
                reps[sort].append(w)
        states = {s: len(reps[s]) for s in self.alphabet.sorts}
        transitions = {}
        for a in self.alphabet.all_letters():
            src, _dst = self.alphabet.letter_pair(a)
            row = []
            for rep in reps[src]:
                succ = table.row(rep.extend(a))
                if succ not in state_of:
                    raise InternalConsistencyError(
                        f"row of {rep.extend(a)!r} is unrepresented (table not closed?)"
                    )
                row.append(state_of[succ])
            transitions[a] = row
        # defensive: every class member must induce the same transition
        for w in words:
            sort = table.row(w)[0]
            for a in self.alphabet.letters_from(sort):
                succ = table.row(w.extend(a))
                if state_of.get(succ) != transitions[a][state_of[table.row(w)]]:
                    raise InternalConsistencyError(
                        f"transition on {a!r} ill-defined at row of {w!r}"
                    )
        initial = {}
        for s, gens in self.alphabet.generators:
            initial[s] = {x: state_of[table.row(SortedWord(x))] for x in gens}
        outputs = {}
        for s in self.alphabet.sorts:
            eps = SortedExperiment(s)
            bit_index = self._experiments_at(table, s).index(eps)
            outputs[s] = [
                1 if (table.row(rep)[1] >> bit_index) & 1 else 0 for rep in reps[s]
            ]
        return sorted_machine(self.alphabet, states, initial, transitions, outputs)

    def machine_value(self, machine, word):
        _sort, out = run_sorted(machine, word.generator, word.letters)
        return out

    def check_minimal(self, machine, table):
        return minimize_sorted(machine).total_states() == machine.total_states()

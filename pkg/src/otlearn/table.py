"""The generic learning loop over an abstract observation-table domain.

The loop is Angluin-style: keep a pair of a prefix-closed access-word set S
and a suffix-closed experiment set T, repair closedness then consistency
defects until a hypothesis can be built, ask the teacher, and fold
counterexamples back into S (prefix mode) or T (suffix mode, the
Maler-Pnueli variant). Everything language-specific lives behind the
TableDomain contract, so the same loop drives DFA, weighted, semilattice
and sorted learning.

A table's evaluated content depends only on the target language: two
teachers for the same language produce byte-identical tables and stats.
"""

from dataclasses import dataclass

from .errors import (
    BudgetExceededError,
    ContractViolationError,
    InternalConsistencyError,
    InvariantViolationError,
)

PREFIX = "prefix"
SUFFIX = "suffix"


@dataclass
class LearnStats:
    membership_queries: int = 0
    equivalence_queries: int = 0
    extend_s_calls: int = 0
    extend_t_calls: int = 0
    rounds: int = 0

    def extension_events(self):
        """Extension steps plus counterexample events; bounded by twice the
        subobject height plus twice the quotient height of the target."""
        counterexamples = max(self.equivalence_queries - 1, 0)
        return self.extend_s_calls + self.extend_t_calls + counterexamples

    def as_dict(self):
        return {
            "membership_queries": self.membership_queries,
            "equivalence_queries": self.equivalence_queries,
            "extend_s_calls": self.extend_s_calls,
            "extend_t_calls": self.extend_t_calls,
            "rounds": self.rounds,
        }


class TableDomain:
    """Capability contract the learner needs from a concrete domain.

    Words and experiments are opaque hashable values owned by the domain;
    the learner only moves them between S, T and the query cache. Rows must
    be derived from membership answers alone, never from teacher identity.
    """

    default_mode = PREFIX
    # strict paper guarantee: after a counterexample the table is not
    # closed or not consistent. Domains whose defect notions are coarser
    # than the categorical ones may relax this to a progress check.
    ce_invalidates_table = True

    def check_mode(self, mode):
        pass

    def initial_access_words(self):
        raise NotImplementedError

    def initial_experiments(self):
        raise NotImplementedError

    def join(self, word, experiment):
        raise NotImplementedError

    def successor(self, word, letter):
        raise NotImplementedError

    def prefixes(self, word):
        raise NotImplementedError

    def experiment_suffixes(self, experiment):
        raise NotImplementedError

    def suffix_experiments(self, word):
        """Experiments obtained from the suffixes of a counterexample."""
        raise NotImplementedError

    def validate_word(self, word):
        raise NotImplementedError

    def compute_row(self, table, word):
        raise NotImplementedError

    def row_covered(self, table, word):
        raise NotImplementedError

    def closedness_defects(self, table):
        raise NotImplementedError

    def consistency_defects(self, table):
        raise NotImplementedError

    def consistency_pair_active(self, table, s1, s2):
        raise NotImplementedError

    def prepend_experiment(self, letter, experiment):
        raise NotImplementedError

    def experiment_applies(self, word, experiment):
        """Whether the experiment may be joined onto the word (sorted
        domains restrict this to matching sorts)."""
        return True

    def make_hypothesis(self, table):
        raise NotImplementedError

    def machine_value(self, machine, word):
        raise NotImplementedError

    def check_minimal(self, machine, table):
        raise NotImplementedError

    def machines_equal(self, m1, m2):
        """Hypothesis-progress comparison; only consulted by domains that
        set ce_invalidates_table = False."""
        raise NotImplementedError


class ObservationTable:
    """The pair (S, T) plus the membership cache, keyed by joined words.

    S stays prefix-closed and T suffix-closed by construction; both only
    ever grow, so all membership answers are memoized forever. Row values
    are memoized per T-version since appending experiments invalidates
    them.
    """

    def __init__(self, domain, teacher, stats=None, budget=None):
        self.domain = domain
        self.teacher = teacher
        self.stats = stats if stats is not None else LearnStats()
        self.budget = budget
        self.S = []
        self._s_set = set()
        self.T = []
        self._t_set = set()
        self.cache = {}
        self._row_cache = {}
        for w in domain.initial_access_words():
            self.add_access_word(w)
        for e in domain.initial_experiments():
            self.add_experiment(e)

    def value(self, query):
        if query not in self.cache:
            if self.budget is not None and self.stats.membership_queries >= self.budget:
                raise BudgetExceededError(
                    f"membership query budget {self.budget} exhausted"
                )
            self.cache[query] = self.teacher.membership(query)
            self.stats.membership_queries += 1
        return self.cache[query]

    def lookup(self, word, experiment):
        return self.value(self.domain.join(word, experiment))

    def row(self, word):
        if word not in self._row_cache:
            self._row_cache[word] = self.domain.compute_row(self, word)
        return self._row_cache[word]

    def has_access_word(self, w):
        return w in self._s_set

    def has_experiment(self, e):
        return e in self._t_set

    def add_access_word(self, w):
        for p in self.domain.prefixes(w):
            if p not in self._s_set:
                self._s_set.add(p)
                self.S.append(p)

    def add_experiment(self, e):
        added = False
        for q in self.domain.experiment_suffixes(e):
            if q not in self._t_set:
                self._t_set.add(q)
                self.T.append(q)
                added = True
        if added:
            self._row_cache.clear()

    def snapshot(self):
        """Deterministic serializable view of the evaluated table (used by
        the purity tests: identical languages give identical snapshots)."""
        return {
            "S": [repr(w) for w in self.S],
            "T": [repr(e) for e in self.T],
            "cache": sorted((repr(k), repr(v)) for k, v in self.cache.items()),
        }


def extend_s(table, domain):
    """Repair every closedness defect in one pass, adding one representative
    access word per newly discovered row class (minimal extension)."""
    defects = domain.closedness_defects(table)
    if not defects:
        raise ContractViolationError("extend_s called on a closed table")
    added = 0
    for word, letter in defects:
        succ = domain.successor(word, letter)
        if table.has_access_word(succ):
            continue
        if domain.row_covered(table, succ):
            # an earlier addition in this same pass already covers this row
            continue
        table.add_access_word(succ)
        added += 1
    if not added:
        raise InternalConsistencyError(
            "closedness defects reported but no extension was possible"
        )
    table.stats.extend_s_calls += 1


def extend_t(table, domain):
    """Repair every consistency defect in one pass, adding one separating
    experiment per defect group still unseparated (minimal extension)."""
    defects = domain.consistency_defects(table)
    if not defects:
        raise ContractViolationError("extend_t called on a consistent table")
    added = 0
    for s1, s2, letter, experiment in defects:
        if not domain.consistency_pair_active(table, s1, s2):
            # a column added earlier in this pass already separates the pair
            continue
        new_exp = domain.prepend_experiment(letter, experiment)
        if table.has_experiment(new_exp):
            continue
        table.add_experiment(new_exp)
        added += 1
    if not added:
        raise InternalConsistencyError(
            "consistency defects reported but no extension was possible"
        )
    table.stats.extend_t_calls += 1


def process_counterexample(table, ce, mode):
    """Prefix mode joins the counterexample's prefix closure into S; suffix
    mode (Maler-Pnueli) joins its suffix closure into T instead."""
    word = ce.word if hasattr(ce, "word") else ce
    table.domain.validate_word(word)
    if mode == PREFIX:
        table.add_access_word(word)
    elif mode == SUFFIX:
        for e in table.domain.suffix_experiments(word):
            table.add_experiment(e)
    else:
        raise ValueError(f"unknown counterexample mode {mode!r}")


def build_hypothesis(table, domain):
    """Assemble the hypothesis machine from a closed and consistent table."""
    if domain.closedness_defects(table):
        raise ContractViolationError("hypothesis requested from a non-closed table")
    if domain.consistency_defects(table):
        raise ContractViolationError(
            "hypothesis requested from an inconsistent table"
        )
    return domain.make_hypothesis(table)


class Learner:
    """Drives the loop: repair defects, hypothesize, query, fold back.

    With verify=True (the default) every intermediate hypothesis is checked
    for minimality and for agreement with the evaluated table, and every
    counterexample is checked to actually invalidate the table; violations
    raise InvariantViolationError. A learner instance is single-threaded;
    run distinct instances for concurrent learning.
    """

    def __init__(self, teacher, domain, mode=None, budget=10000, verify=True,
                 on_hypothesis=None):
        self.mode = mode if mode is not None else domain.default_mode
        if self.mode not in (PREFIX, SUFFIX):
            raise ValueError(f"unknown mode {self.mode!r}")
        domain.check_mode(self.mode)
        self.teacher = teacher
        self.domain = domain
        self.budget = budget
        self.verify = verify
        self.on_hypothesis = on_hypothesis
        self.table = ObservationTable(domain, teacher, budget=budget)
        self.stats = self.table.stats
        self.hypothesis = None

    def _repair(self):
        domain, table = self.domain, self.table
        passes = 0
        while True:
            if domain.closedness_defects(table):
                extend_s(table, domain)
            elif domain.consistency_defects(table):
                extend_t(table, domain)
            else:
                return
            passes += 1
            if self.budget is not None and passes > self.budget:
                raise BudgetExceededError("extension budget exhausted")

    def _verify_hypothesis(self, machine):
        domain, table = self.domain, self.table
        # the hypothesis and the target have identical observation tables,
        # hence they agree on every access word
        for s in table.S:
            for t in table.T:
                if not domain.experiment_applies(s, t):
                    continue
                expected = table.lookup(s, t)
                got = domain.machine_value(machine, domain.join(s, t))
                if got != expected:
                    raise InvariantViolationError(
                        f"hypothesis disagrees with table at ({s!r}, {t!r}): "
                        f"{got!r} != {expected!r}"
                    )
        if not domain.check_minimal(machine, table):
            raise InvariantViolationError("hypothesis is not minimal")

    def _table_invalidated(self):
        return bool(
            self.domain.closedness_defects(self.table)
            or self.domain.consistency_defects(self.table)
        )

    def run(self):
        rounds = 0
        while True:
            rounds += 1
            if self.budget is not None and rounds > self.budget:
                raise BudgetExceededError("round budget exhausted")
            self._repair()
            machine = build_hypothesis(self.table, self.domain)
            self.stats.rounds += 1
            if self.verify:
                self._verify_hypothesis(machine)
            if self.on_hypothesis is not None:
                self.on_hypothesis(machine, self.table)
            previous = self.hypothesis
            self.hypothesis = machine
            self.stats.equivalence_queries += 1
            ce = self.teacher.equivalence(machine)
            if ce is None:
                return machine, self.stats
            process_counterexample(self.table, ce, self.mode)
            if self.verify and not self._table_invalidated():
                if self.domain.ce_invalidates_table:
                    raise InvariantViolationError(
                        "counterexample left the table closed and consistent"
                    )
                # coarser domains must still make progress: the next
                # hypothesis may not repeat the previous one
                nxt = build_hypothesis(self.table, self.domain)
                if previous is not None and self.domain.machines_equal(nxt, machine):
                    raise InvariantViolationError(
                        "counterexample produced no hypothesis progress"
                    )


def learn(teacher, domain, mode=None, budget=10000, verify=True):
    """Run the loop to completion; returns (machine, stats). The machine is
    minimal and language-equivalent to the teacher's target. Raises
    BudgetExceededError when the target is not finitely recognizable within
    the configured budget."""
    return Learner(teacher, domain, mode=mode, budget=budget, verify=verify).run()

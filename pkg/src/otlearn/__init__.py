"""Active automata learning over an abstract observation-table domain.

One generic Angluin-style loop drives four concrete instantiations:
classical DFAs, weighted automata over exact rationals, semilattice
automata whose join-irreducible states form a canonical RFSA, and sorted
automata. On top sits the presentation layer reducing semigroup- and
Wilke-algebra-recognizable (ω-regular lasso) languages to finite-automaton
learning, with extraction of syntactic algebras from the learned minimal
machines.
"""

from .algebra import (
    FiniteSemigroup,
    Lasso,
    SemigroupAlphabet,
    WilkeAlgebra,
    WilkeWeakAlphabet,
    extract_syntactic_semigroup,
    extract_wilke_algebra,
    interpret_semigroup_word,
    interpret_wilke_word,
    lasso_eq,
    linearize_membership,
)
from .domain_bool import BoolDomain
from .domain_jsl import JslDomain, Rfsa, determinize, rfsa_language_equiv
from .domain_sorted import SortedDomain
from .domain_weighted import WeightedDomain
from .errors import (
    AlphabetMismatchError,
    BudgetExceededError,
    ContractViolationError,
    ExtractionError,
    InternalConsistencyError,
    InvariantViolationError,
    OtlearnError,
    SortMismatchError,
    TeacherBugError,
    UnknownLetterError,
    ValidationError,
)
from .moore import (
    MooreMachine,
    minimize_moore,
    moore_distinguish,
    moore_isomorphic,
    run_moore,
)
from .sorted_machine import (
    SortedAlphabet,
    SortedExperiment,
    SortedMachine,
    SortedWord,
    minimize_sorted,
    run_sorted,
    sorted_alphabet,
    sorted_distinguish,
    sorted_isomorphic,
    sorted_machine,
)
from .table import (
    PREFIX,
    SUFFIX,
    Learner,
    LearnStats,
    ObservationTable,
    build_hypothesis,
    extend_s,
    extend_t,
    learn,
    process_counterexample,
)
from .teachers import (
    DfaTeacher,
    LassoOracleTarget,
    PredicateTeacher,
    SortedTeacher,
    WfaTeacher,
    WilkeTeacher,
    builtin_targets,
    semigroup_teacher,
)
from .wfa import WeightedAutomaton, wfa_distinguish, wfa_from_lists, wfa_value
from .words import Counterexample, word

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

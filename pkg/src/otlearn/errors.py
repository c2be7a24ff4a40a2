"""Exception hierarchy shared across the package."""


class OtlearnError(Exception):
    """Base class for all package errors."""


class UnknownLetterError(OtlearnError):
    """An input word contains a letter outside the machine's alphabet."""


class SortMismatchError(OtlearnError):
    """A sorted word or experiment does not compose sort-wise."""


class AlphabetMismatchError(OtlearnError):
    """Two machines compared over different alphabets."""


class ValidationError(OtlearnError):
    """A machine or target fails its structural invariants."""


class ContractViolationError(OtlearnError):
    """A learner operation was invoked outside its precondition
    (e.g. extend_s on a closed table)."""


class InternalConsistencyError(OtlearnError):
    """A defect surfaced during hypothesis assembly; signals a bug in a
    table-domain implementation, not bad input."""


class BudgetExceededError(OtlearnError):
    """The learner exceeded its configured query/round budget."""


class TeacherBugError(OtlearnError):
    """A teacher returned a counterexample that does not actually
    distinguish hypothesis and target."""


class InvariantViolationError(OtlearnError):
    """A runtime invariant of the learning loop failed."""


class ExtractionError(OtlearnError):
    """Algebra extraction from a learned machine failed verification
    (well-definedness or axiom check)."""

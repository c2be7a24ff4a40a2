"""Weighted automata over exact rationals.

A weighted automaton assigns a rational to every finite word via
initial · M(a_1) ··· M(a_k) · final. The field is fixed to Q: the span
membership and equivalence decisions below require exact arithmetic.
"""

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import AlphabetMismatchError, UnknownLetterError, ValidationError


@dataclass(frozen=True)
class WeightedAutomaton:
    """`initial` is a 1×d row, `final` a d×1 column (stored flat), and
    `matrices[i]` the d×d matrix of the i-th alphabet letter."""

    alphabet: tuple
    dimension: int
    initial: tuple
    matrices: tuple
    final: tuple
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.alphabet or len(set(self.alphabet)) != len(self.alphabet):
            raise ValidationError("alphabet must be non-empty and duplicate-free")
        d = self.dimension
        if d <= 0:
            raise ValidationError("dimension must be positive")
        if len(self.initial) != d or len(self.final) != d:
            raise ValidationError("initial/final vectors must have length d")
        if len(self.matrices) != len(self.alphabet):
            raise ValidationError("one matrix per alphabet letter required")
        for m in self.matrices:
            if len(m) != d or any(len(row) != d for row in m):
                raise ValidationError("letter matrices must be d×d")
        for x in self._entries():
            if not isinstance(x, Fraction):
                raise ValidationError("all entries must be exact rationals")
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(self.alphabet)})

    def _entries(self):
        yield from self.initial
        yield from self.final
        for m in self.matrices:
            for row in m:
                yield from row

    def matrix(self, a):
        try:
            return self.matrices[self._index[a]]
        except KeyError:
            raise UnknownLetterError(f"letter {a!r} not in alphabet") from None


def wfa_from_lists(alphabet, initial, matrices, final):
    """Build a weighted automaton coercing plain ints/strings to Fraction.
    `matrices` maps letters to d×d nested lists."""
    alphabet = tuple(alphabet)
    init = linalg.vec(initial)
    fin = linalg.vec(final)
    mats = tuple(
        tuple(linalg.vec(row) for row in matrices[a]) for a in alphabet
    )
    return WeightedAutomaton(alphabet, len(init), init, mats, fin)


def wfa_value(w, word):
    """Exact value initial · M(a_1)···M(a_k) · final; empty product is the
    identity, so the empty word yields initial · final."""
    v = w.initial
    for a in word:
        v = linalg.vec_mat(v, w.matrix(a))
    return linalg.dot(v, w.final)


def _difference(w1, w2):
    """Block-diagonal automaton computing wfa_value(w1, ·) - wfa_value(w2, ·)."""
    d1, d2 = w1.dimension, w2.dimension
    zero = Fraction(0)
    init = w1.initial + w2.initial
    fin = w1.final + tuple(-x for x in w2.final)
    mats = []
    for i in range(len(w1.alphabet)):
        m1, m2 = w1.matrices[i], w2.matrices[i]
        top = tuple(row + (zero,) * d2 for row in m1)
        bot = tuple((zero,) * d1 + row for row in m2)
        mats.append(top + bot)
    return WeightedAutomaton(w1.alphabet, d1 + d2, init, tuple(mats), fin)


def wfa_distinguish(w1, w2):
    """None iff the two automata agree on every word; otherwise a word of
    length < d1 + d2 where values differ (the shortest such word,
    lexicographically least among ties).

    Explores the forward reachable space of the difference automaton,
    pruning vectors already in the span of earlier ones; by linearity a
    pruned branch cannot hide an earlier witness.
    """
    if w1.alphabet != w2.alphabet:
        raise AlphabetMismatchError(
            f"alphabets differ: {w1.alphabet!r} vs {w2.alphabet!r}"
        )
    diff = _difference(w1, w2)
    basis = []
    queue = deque([((), diff.initial)])
    while queue:
        word, v = queue.popleft()
        if linalg.dot(v, diff.final) != 0:
            return word
        if linalg.in_span(basis, v):
            continue
        basis.append(v)
        for a in diff.alphabet:
            queue.append((word + (a,), linalg.vec_mat(v, diff.matrix(a))))
    return None


def forward_rank(w):
    """Dimension of the span of {initial · M(u) : u word}."""
    basis = []
    queue = deque([w.initial])
    while queue:
        v = queue.popleft()
        if linalg.in_span(basis, v):
            continue
        basis.append(v)
        for m in w.matrices:
            queue.append(linalg.vec_mat(v, m))
    return len(basis)


def backward_rank(w):
    """Dimension of the span of {M(u) · final : u word}."""
    basis = []
    queue = deque([w.final])
    while queue:
        v = queue.popleft()
        if linalg.in_span(basis, v):
            continue
        basis.append(v)
        for m in w.matrices:
            queue.append(linalg.mat_vec(m, v))
    return len(basis)


def wfa_is_minimal(w):
    """A weighted automaton is minimal iff both its forward and backward
    reachable spaces span the full state space."""
    return forward_rank(w) == w.dimension and backward_rank(w) == w.dimension

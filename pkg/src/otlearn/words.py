"""Finite words as tuples of letters, plus the counterexample wrapper."""

from dataclasses import dataclass

Word = tuple
EPSILON: Word = ()


def word(text):
    """Build a word from an iterable of letters ("abc" -> ('a','b','c'))."""
    return tuple(text)


def word_str(w):
    return "".join(w) if w else "ε"


def shortlex_key(w, index):
    """Sort key ordering words by length, then letter-by-letter in
    alphabet order. `index` maps letters to their alphabet position."""
    return (len(w), tuple(index[a] for a in w))


def iter_shortlex(alphabet, max_length):
    """All words over `alphabet` up to `max_length`, in shortlex order."""
    frontier = [EPSILON]
    yield EPSILON
    for _ in range(max_length):
        nxt = []
        for w in frontier:
            for a in alphabet:
                wa = w + (a,)
                nxt.append(wa)
                yield wa
        frontier = nxt


@dataclass(frozen=True)
class Counterexample:
    """A single word on which hypothesis and target disagree. Its prefix
    closure recovers the disagreement witness set used by the learner."""

    word: object

    def __repr__(self):
        return f"Counterexample({self.word!r})"

"""Symbolic sequences (Rolle words) and their circular analogs."""
from dataclasses import dataclass

from .errors import InvalidInput


def _as_symbols(word):
    if isinstance(word, (bytes, bytearray)):
        word = word.decode("ascii")
    if isinstance(word, str):
        if not word.isdigit():
            raise InvalidInput(f"word {word!r} contains non-digit symbols")
        return tuple(int(ch) for ch in word)
    return tuple(int(s) for s in word)


def _word_str(symbols):
    if any(s > 9 for s in symbols):
        return ",".join(str(s) for s in symbols)
    return "".join(str(s) for s in symbols)


def is_rolle_word(word, n):
    """True iff ``word`` is an admissible symbolic sequence of degree ``n``.

    Symbol ``i`` must occur exactly ``n - i`` times and every pair of
    consecutive occurrences of ``i`` must enclose exactly one ``i + 1``.
    """
    w = _as_symbols(word)
    if n < 1 or len(w) != n * (n + 1) // 2:
        return False
    counts = [0] * n
    for s in w:
        if not 0 <= s < n:
            return False
        counts[s] += 1
    if any(counts[i] != n - i for i in range(n)):
        return False
    for i in range(n - 1):
        between = None
        for s in w:
            if s == i:
                if between is not None and between != 1:
                    return False
                between = 0
            elif s == i + 1:
                # an i+1 before the first i is caught by the multiplicity count
                if between is None:
                    return False
                between += 1
        if between != 0:
            return False
    return True


def is_possible_periodic(word, copies, k):
    """Cyclic version of :func:`is_rolle_word` with ``copies`` of each of ``k`` symbols."""
    w = _as_symbols(word)
    if copies < 1 or k < 1 or len(w) != copies * k:
        return False
    counts = [0] * k
    for s in w:
        if not 0 <= s < k:
            return False
        counts[s] += 1
    if any(c != copies for c in counts):
        return False
    length = len(w)
    for i in range(k - 1):
        pos = [j for j, s in enumerate(w) if s == i]
        for a, start in enumerate(pos):
            stop = pos[(a + 1) % copies]
            if stop <= start:
                stop += length
            seen = sum(1 for j in range(start + 1, stop) if w[j % length] == i + 1)
            if seen != 1:
                return False
    return True


def canonical_rotation(symbols):
    """Lexicographically least rotation of a cyclic word."""
    s = tuple(symbols)
    if not s:
        return s
    return min(s[j:] + s[:j] for j in range(len(s)))


@dataclass(frozen=True, order=True)
class SymbolicSequence:
    """Order type of a strictly n-nice arrangement.

    ``word[m]`` is the derivative order of the ``m``-th smallest zero.
    """

    word: tuple

    def __post_init__(self):
        object.__setattr__(self, "word", _as_symbols(self.word))
        n = self.n
        if not is_rolle_word(self.word, n):
            raise InvalidInput(f"{self} is not an admissible symbolic sequence")

    @property
    def n(self):
        # length n(n+1)/2 determines n
        m = len(self.word)
        n = int(round(((8 * m + 1) ** 0.5 - 1) / 2))
        return n if n * (n + 1) // 2 == m else -1

    @classmethod
    def from_string(cls, text):
        return cls(_as_symbols(text))

    def __str__(self):
        return _word_str(self.word)


@dataclass(frozen=True, order=True)
class CircularSequence:
    """A possible periodic word, stored in canonical rotation."""

    copies: int
    k: int
    word: tuple

    def __post_init__(self):
        w = canonical_rotation(_as_symbols(self.word))
        object.__setattr__(self, "word", w)
        if not is_possible_periodic(w, self.copies, self.k):
            raise InvalidInput(f"{_word_str(w)} is not a possible periodic sequence")

    def __str__(self):
        return _word_str(self.word)

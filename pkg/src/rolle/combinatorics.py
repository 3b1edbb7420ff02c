"""Admissible symbolic sequences: enumeration, the closed-form count, circular words."""
import math

import numpy as np

from . import kernels
from .errors import SizeGuardError
from .words import CircularSequence, SymbolicSequence, canonical_rotation, is_possible_periodic, is_rolle_word

__all__ = [
    "MAX_ENUM_N",
    "MAX_PERIODIC_LENGTH",
    "MAX_PERIODIC_NODES",
    "RolleWordSet",
    "enumerate_periodic",
    "enumerate_rolle_words",
    "flat_count",
    "is_possible_periodic",
    "is_rolle_word",
]

MAX_ENUM_N = 7
MAX_PERIODIC_LENGTH = 24
# circular enumeration grows far faster than the length guard suggests;
# (copies, k) = (3, 6) already has 375984 classes
MAX_PERIODIC_NODES = 1_000_000


def flat_count(n):
    """Number of admissible words of degree n, exact.

    (C(n+1, 2))! * (1! 2! ... (n-1)!) / (1! 3! ... (2n-1)!)
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    num = math.factorial(n * (n + 1) // 2)
    for k in range(1, n):
        num *= math.factorial(k)
    den = 1
    for k in range(1, n + 1):
        den *= math.factorial(2 * k - 1)
    q, rem = divmod(num, den)
    assert rem == 0, "factorial ratio must be integral"
    return q


class RolleWordSet:
    """Sorted, duplicate-free set of admissible words of one degree.

    Backed by a numpy bytes array (one ASCII-digit string per word) so that
    degree 7, with 23 million members, still fits in memory.
    """

    def __init__(self, n, array):
        self.n = n
        self.array = array

    def __len__(self):
        return int(self.array.shape[0])

    def __iter__(self):
        for w in self.array:
            yield SymbolicSequence.from_string(w.decode("ascii"))

    def __contains__(self, word):
        key = _as_key(word)
        if key is None or len(key) != self.array.dtype.itemsize:
            return False
        i = int(np.searchsorted(self.array, key))
        return i < len(self.array) and self.array[i] == key

    def strings(self):
        return [w.decode("ascii") for w in self.array]

    @property
    def words(self):
        return frozenset(self)

    def __repr__(self):
        return f"RolleWordSet(n={self.n}, size={len(self)})"


def _as_key(word):
    if isinstance(word, SymbolicSequence):
        word = str(word)
    elif isinstance(word, (tuple, list)):
        if any(not 0 <= int(s) <= 9 for s in word):
            return None
        word = "".join(str(int(s)) for s in word)
    if isinstance(word, str):
        word = word.encode("ascii")
    return word


def enumerate_rolle_words(n):
    """All admissible words of degree ``n`` (1 <= n <= 7), lexicographically sorted.

    Backtracking places symbols left to right and abandons a prefix as soon as
    some pair of consecutive occurrences can no longer enclose exactly one
    next symbol.
    """
    if not 1 <= n <= MAX_ENUM_N:
        raise SizeGuardError(f"enumeration supports 1 <= n <= {MAX_ENUM_N}, got {n}")
    total = flat_count(n)
    rows, count = kernels.enumerate_rolle(n, total)
    if count != total:
        raise AssertionError(f"enumerated {count} words, closed form gives {total}")
    size = n * (n + 1) // 2
    arr = np.ascontiguousarray(rows).view(f"S{size}").ravel()
    if size <= 21 and not np.all(arr[1:] > arr[:-1]):
        # generation order is lexicographic already; checked where it is cheap
        arr = np.unique(arr)
    return RolleWordSet(n, arr)


def enumerate_periodic(copies, k, max_nodes=MAX_PERIODIC_NODES):
    """All possible periodic words with ``copies`` of each of ``k`` symbols.

    Words are returned in canonical (least) rotation, so each circular
    arrangement appears once. Raises :class:`SizeGuardError` when the search
    tree exceeds ``max_nodes`` placements.
    """
    if copies < 1 or k < 1:
        raise SizeGuardError("copies and k must be positive")
    length = copies * k
    if length > MAX_PERIODIC_LENGTH:
        raise SizeGuardError(f"copies * k must be at most {MAX_PERIODIC_LENGTH}, got {length}")

    word = [0] * length
    used = [0] * k
    since = [0] * k  # copies of i+1 since the last i (or since the start)
    prefix = [0] * k  # copies of i+1 before the first i
    found = set()
    nodes = 0

    def extend(pos):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise SizeGuardError(f"circular enumeration for copies={copies}, k={k} exceeds {max_nodes} nodes")
        if pos == length:
            for i in range(k - 1):
                if prefix[i] + since[i] != 1:
                    return
            w = tuple(word)
            if w == canonical_rotation(w):
                found.add(w)
            return
        for s in range(k):
            if used[s] >= copies:
                continue
            if s < k - 1 and used[s] > 0 and since[s] != 1:
                continue
            if s > 0 and (since[s - 1] != 0 or (used[s - 1] == copies and prefix[s - 1] != 0)):
                continue
            saved_since, saved_prefix = since[s], prefix[s]
            word[pos] = s
            if used[s] == 0:
                prefix[s] = since[s]
            used[s] += 1
            since[s] = 0
            if s > 0:
                since[s - 1] += 1
            extend(pos + 1)
            used[s] -= 1
            since[s], prefix[s] = saved_since, saved_prefix
            if s > 0:
                since[s - 1] -= 1

    # the least rotation always starts with the smallest symbol
    word[0] = 0
    used[0] = 1
    extend(1)
    return frozenset(CircularSequence(copies, k, w) for w in found)


import itertools
from collections import Counter

import pytest

from rolle.combinatorics import (
    MAX_ENUM_N,
    enumerate_periodic,
    enumerate_rolle_words,
    flat_count,
)
from rolle.errors import SizeGuardError
from rolle.words import canonical_rotation, is_possible_periodic, is_rolle_word


def distinct_permutations(multiset):
    """Distinct orderings of a multiset, generated recursively (oracle)."""
    counts = Counter(multiset)
    size = len(multiset)
    word = []

    def rec():
        if len(word) == size:
            yield tuple(word)
            return
        for s in sorted(counts):
            if counts[s]:
                counts[s] -= 1
                word.append(s)
                yield from rec()
                word.pop()
                counts[s] += 1

    yield from rec()


def brute_rolle_words(n):
    symbols = [i for i in range(n) for _ in range(n - i)]
    return sorted("".join(map(str, w)) for w in distinct_permutations(symbols) if is_rolle_word(w, n))


def shifted_hook_count(n):
    # admissible words biject with standard tableaux of the shifted staircase
    # (n, n-1, ..., 1); count those with the shifted hook length formula
    from math import factorial

    rows = list(range(n, 0, -1))  # row i occupies columns i .. i + rows[i] - 1
    prod = 1
    for i, length in enumerate(rows):
        for j in range(i, i + length):
            arm = i + length - 1 - j
            leg = sum(1 for r in range(i + 1, n) if r <= j < r + rows[r])
            extra = rows[j + 1] if j + 1 < n else 0
            prod *= arm + leg + 1 + extra
    return factorial(sum(rows)) // prod


def test_flat_count_known_values():
    assert [flat_count(n) for n in range(1, 7)] == [1, 1, 2, 12, 286, 33592]


@pytest.mark.parametrize("n", range(1, 12))
def test_flat_count_matches_shifted_hook_formula(n):
    assert flat_count(n) == shifted_hook_count(n)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_enumeration_matches_brute_force(n):
    assert enumerate_rolle_words(n).strings() == brute_rolle_words(n)


def test_enumeration_of_degree_five_is_sorted_and_admissible():
    ws = enumerate_rolle_words(5)
    s = ws.strings()
    assert len(s) == 286 == len(set(s))
    assert s == sorted(s)
    assert all(is_rolle_word(w, 5) for w in s)


def test_degree_three_words():
    assert enumerate_rolle_words(3).strings() == ["010210", "012010"]


def test_word_set_membership():
    ws = enumerate_rolle_words(4)
    assert "0102103210" in ws
    assert (0, 1, 0, 2, 1, 0, 3, 2, 1, 0) in ws
    assert "0102310210" in ws  # admissible, though not realizable by polynomials
    assert "1010203210" not in ws
    assert "010" not in ws
    assert len(ws.words) == 12


@pytest.mark.parametrize("n", [0, MAX_ENUM_N + 1])
def test_enumeration_guard(n):
    with pytest.raises(SizeGuardError):
        enumerate_rolle_words(n)


def brute_periodic(copies, k):
    symbols = [i for i in range(k) for _ in range(copies)]
    return {canonical_rotation(w) for w in distinct_permutations(symbols) if is_possible_periodic(w, copies, k)}


@pytest.mark.parametrize("copies,k", [(1, 1), (2, 2), (2, 3), (3, 2), (4, 2), (2, 4), (3, 3), (4, 3)])
def test_periodic_matches_brute_force(copies, k):
    got = {c.word for c in enumerate_periodic(copies, k)}
    assert got == brute_periodic(copies, k)


def test_periodic_two_symbols_alternate():
    # with k = 2 the cyclic rule forces strict alternation
    for copies in range(1, 7):
        (only,) = enumerate_periodic(copies, 2)
        assert only.word == (0, 1) * copies


def test_periodic_guards():
    with pytest.raises(SizeGuardError):
        enumerate_periodic(5, 5)
    with pytest.raises(SizeGuardError):
        enumerate_periodic(0, 2)
    with pytest.raises(SizeGuardError):
        enumerate_periodic(4, 6, max_nodes=1000)

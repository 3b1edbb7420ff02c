import pytest
from hypothesis import given, strategies as st

from rolle.errors import InvalidInput
from rolle.words import (
    CircularSequence,
    SymbolicSequence,
    canonical_rotation,
    is_possible_periodic,
    is_rolle_word,
)


@pytest.mark.parametrize("word,n", [("0", 1), ("010", 2), ("010210", 3), ("012010", 3), ("0102103210", 4)])
def test_admissible_examples(word, n):
    assert is_rolle_word(word, n)


@pytest.mark.parametrize(
    "word,n",
    [
        ("001", 2),  # two 0s with no 1 between
        ("100", 2),  # 1 outside the 0s
        ("012100", 3),  # wrong multiplicities
        ("010120", 3),
        ("01021", 3),  # wrong length
        ("0a0", 2),
    ],
)
def test_inadmissible_examples(word, n):
    if not word.isdigit():
        with pytest.raises(InvalidInput):
            is_rolle_word(word, n)
    else:
        assert not is_rolle_word(word, n)


def test_inputs_in_several_forms():
    assert is_rolle_word((0, 1, 0), 2)
    assert is_rolle_word(b"010", 2)
    assert is_rolle_word([0, 1, 0], 2)


def test_symbolic_sequence_roundtrip_and_order():
    a = SymbolicSequence.from_string("010210")
    b = SymbolicSequence.from_string("012010")
    assert str(a) == "010210" and a.n == 3
    assert a < b
    with pytest.raises(InvalidInput):
        SymbolicSequence.from_string("012100")


def test_possible_periodic_reads_cyclically():
    # 0 1 0 1 alternates around the circle
    assert is_possible_periodic("0101", 2, 2)
    assert not is_possible_periodic("0011", 2, 2)
    # 1 0 1 0 is a rotation of 0101
    assert is_possible_periodic("1010", 2, 2)
    assert not is_possible_periodic("0101", 2, 3)


def test_circular_sequence_is_canonical():
    c = CircularSequence(2, 2, "1010")
    assert str(c) == "0101"
    assert c == CircularSequence(2, 2, (0, 1, 0, 1))
    with pytest.raises(InvalidInput):
        CircularSequence(2, 2, "0011")


@given(st.lists(st.integers(0, 3), min_size=1, max_size=12), st.integers(0, 20))
def test_canonical_rotation_is_rotation_invariant(word, shift):
    shift %= len(word)
    rotated = word[shift:] + word[:shift]
    assert canonical_rotation(word) == canonical_rotation(rotated)
    assert canonical_rotation(word) <= tuple(rotated)

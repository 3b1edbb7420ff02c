import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from oracle import companion_rows
from rolle.errors import InterlacingViolated, InvalidInput, NotStrictlyNice
from rolle.poly_core import (
    Arrangement,
    CoefficientPoly,
    RootList,
    arrangement,
    check_standard_rolle,
    coefficients_from_roots,
    differentiate,
    isolate_roots_interlaced,
    symbolic_sequence,
)
from rolle.words import is_rolle_word

# frozen from tests/oracle.py at 50 digits
FROZEN = {
    (0.0, 1.0, 2.0, 4.0): (
        [[0.0, 1.0, 2.0, 4.0], [0.39274798112694875, 1.5309065555152186, 3.326345463357833],
         [0.8960874361700335, 2.6039125638299665], [1.75]],
        "0120130210",
    ),
    (-2.5, -1.0, 0.5, 0.75, 3.0): (
        [[-2.5, -1.0, 0.5, 0.75, 3.0],
         [-1.9931203704936262, -0.42558382292033436, 0.6289936200838638, 2.3897105733300967],
         [-1.4225865528197408, 0.10699920889347153, 1.7655873439262693],
         [-0.7705976319760984, 1.0705976319760984], [0.15]],
        "012031240103210",
    ),
}


def root_lists(min_n=2, max_n=7):
    """Sorted root lists with gaps bounded away from zero."""
    gaps = st.lists(st.floats(0.05, 3.0), min_size=min_n - 1, max_size=max_n - 1)
    return st.builds(lambda x0, g: tuple(np.cumsum([x0] + g)), st.floats(-5, 5), gaps)


def test_worked_cubic():
    a = arrangement(RootList([0.0, 1.0, 4.0]))
    s13 = math.sqrt(13.0)
    assert a.rows[1][0] == pytest.approx((5 - s13) / 3, abs=1e-12)
    assert a.rows[1][1] == pytest.approx((5 + s13) / 3, abs=1e-12)
    assert a.rows[2][0] == pytest.approx(5 / 3, abs=1e-12)
    assert str(symbolic_sequence(a)) == "010210"


@pytest.mark.parametrize("roots", sorted(FROZEN))
def test_frozen_oracle_values(roots):
    rows, word = FROZEN[roots]
    a = arrangement(roots)
    for got, want in zip(a.rows, rows):
        np.testing.assert_allclose(got, want, rtol=0, atol=1e-12)
    assert str(symbolic_sequence(a)) == word


@given(root_lists(2, 6))
def test_matches_companion_oracle(roots):
    a = arrangement(roots)
    for got, want in zip(a.rows, companion_rows(roots)):
        np.testing.assert_allclose(got, want, rtol=1e-10, atol=1e-10)


@given(root_lists(), st.floats(-10, 10))
def test_translation_equivariance(roots, c):
    a = arrangement(roots)
    b = arrangement(tuple(r + c for r in roots))
    np.testing.assert_allclose(b.flat(), a.flat() + c, atol=1e-10 * (1 + abs(c)))


@given(root_lists(), st.floats(0.1, 10))
def test_scaling_equivariance(roots, s):
    a = arrangement(roots)
    b = arrangement(tuple(r * s for r in roots))
    np.testing.assert_allclose(b.flat(), a.flat() * s, rtol=1e-10, atol=1e-10 * s)


@given(root_lists())
def test_reflection_reverses_words(roots):
    a = arrangement(roots)
    b = arrangement(tuple(-r for r in reversed(roots)))
    for ra, rb in zip(a.rows, b.rows):
        np.testing.assert_allclose(rb, [-x for x in reversed(ra)], atol=1e-10)
    try:
        wa, wb = symbolic_sequence(a), symbolic_sequence(b)
    except NotStrictlyNice:
        return
    assert wb.word == tuple(reversed(wa.word))


@given(root_lists(2, 8))
def test_rolle_restrictions_and_admissibility(roots):
    a = arrangement(roots)
    assert check_standard_rolle(a) == []
    try:
        w = symbolic_sequence(a)
    except NotStrictlyNice:
        return
    assert is_rolle_word(w.word, a.n)


@given(root_lists(2, 6))
def test_coefficient_route_agrees(roots):
    r = RootList(roots)
    p = coefficients_from_roots(r)
    dp = differentiate(p)
    assume(np.max(np.abs(p.coeffs)) < 1e6)
    crit = isolate_roots_interlaced(dp, r)
    np.testing.assert_allclose(crit.roots, arrangement(r).rows[1], rtol=1e-9, atol=1e-9)


def test_coefficients_and_derivative():
    p = coefficients_from_roots([1.0, 2.0, 3.0])
    assert p.coeffs == (-6.0, 11.0, -6.0, 1.0)
    assert differentiate(p).coeffs == (11.0, -12.0, 3.0)
    assert p(2.0) == 0.0
    np.testing.assert_allclose(p(np.array([0.0, 4.0])), [-6.0, 6.0])
    with pytest.raises(InvalidInput):
        differentiate(CoefficientPoly([3.0]))


@pytest.mark.parametrize("bad", [[], [1.0, 1.0], [2.0, 1.0], [0.0, float("nan")], [0.0, float("inf")]])
def test_rootlist_rejects(bad):
    with pytest.raises(InvalidInput):
        RootList(bad)


def test_coefficient_poly_needs_leading_term():
    with pytest.raises(InvalidInput):
        CoefficientPoly([1.0, 0.0])


def test_interlacing_violation():
    # x^2 - 9 has no zero strictly between 0 and 1
    with pytest.raises(InterlacingViolated):
        isolate_roots_interlaced(CoefficientPoly([-9.0, 0.0, 1.0]), [0.0, 1.0, 5.0])


def test_symmetric_cubic_is_not_strictly_nice():
    # f = x^3 - x: f'' vanishes at the middle root
    with pytest.raises(NotStrictlyNice):
        symbolic_sequence(arrangement([-1.0, 0.0, 1.0]))


def test_arrangement_structure_checks():
    with pytest.raises(InvalidInput):
        Arrangement(((0.0, 1.0), (0.5, 0.7)))
    with pytest.raises(InvalidInput):
        Arrangement(((1.0, 0.0), (0.5,)))
    a = Arrangement.from_flat([0.0, 2.0, 1.0], 2)
    assert a.rows == ((0.0, 2.0), (1.0,))


def test_degree_one_is_trivial():
    a = arrangement([3.0])
    assert a.rows == ((3.0,),)
    assert str(symbolic_sequence(a)) == "0"

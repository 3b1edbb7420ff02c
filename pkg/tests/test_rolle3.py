import json
import math

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from rolle.errors import InadmissibleTuple, InvalidInput
from rolle.poly_core import arrangement
from rolle.rolle3 import (
    ConvexDerivativeSpline,
    Tuple3Arrangement,
    check_case_inequalities,
    check_inequalities,
    construct_3nice,
    evaluate,
    recovered_arrangement,
)

CUBIC = Tuple3Arrangement(0.0, 1.0, 4.0, (5 - math.sqrt(13)) / 3, (5 + math.sqrt(13)) / 3, 5 / 3)


def tuple_from_cubic(roots):
    a = arrangement(roots)
    (x1, x2, x3), (y1, y2), (z1,) = a.rows
    return Tuple3Arrangement(x1, x2, x3, y1, y2, z1)


@st.composite
def raw_tuples(draw):
    pts = sorted(draw(st.lists(st.floats(-5, 5), min_size=5, max_size=5, unique=True)))
    frac = draw(st.floats(0.01, 0.99))
    x1, y1, x2, y2, x3 = pts
    return Tuple3Arrangement(x1, x2, x3, y1, y2, y1 + frac * (y2 - y1))


admissible = raw_tuples().filter(lambda t: not check_inequalities(t) and min(
    b - a for a, b in zip(sorted(t.as_tuple()), sorted(t.as_tuple())[1:])) > 1e-3)


def test_worked_cubic_comparisons():
    assert check_inequalities(CUBIC) == []
    lhs3, rhs3 = CUBIC.y1 - CUBIC.x1, CUBIC.x2 - CUBIC.y1
    lhs4 = CUBIC.x3 - CUBIC.y2
    gap = CUBIC.z1 - CUBIC.x2
    w = CUBIC.y2 - CUBIC.z1
    rhs4 = min(CUBIC.y2 - CUBIC.x2, math.sqrt(w * w + 2 * w * gap))
    assert f"{lhs3:.6f}" == "0.464816" and f"{rhs3:.6f}" == "0.535184"
    assert f"{lhs4:.5f}" == "1.13148" and f"{rhs4:.5f}" == "1.74554"


def test_case_report_for_cubic():
    rep = check_case_inequalities(CUBIC)
    assert rep.case == "x2<z1" and rep.violations == []
    assert check_case_inequalities(CUBIC.reflect()).case == "z1<x2"
    sym = Tuple3Arrangement(-1, 0, 1, -0.6, 0.6, 0)
    assert check_case_inequalities(sym).case == "z1=x2"


def test_line_three_violation():
    t = Tuple3Arrangement(0, 1, 4, 0.6, 2.87, 1.6667)
    bad = check_inequalities(t)
    assert [v.line for v in bad] == ["line 3"]
    with pytest.raises(InadmissibleTuple, match="line 3 violated"):
        construct_3nice(t)


def test_ordering_violations():
    assert [v.line for v in check_inequalities(Tuple3Arrangement(0, 1, 4, 1.2, 2.8, 1.7))][0] == "line 1"
    assert "line 2" in [v.line for v in check_inequalities(Tuple3Arrangement(0, 1, 4, 0.46, 2.87, 3.0))]


def test_equality_counts_as_violation():
    # y1 - x1 == x2 - y1 exactly
    t = Tuple3Arrangement(0, 1, 4, 0.5, 2.87, 1.6667)
    assert "line 3" in [v.line for v in check_inequalities(t)]


@given(st.lists(st.floats(0.02, 4.0), min_size=2, max_size=2), st.floats(-5, 5))
def test_cubics_satisfy_the_system(gaps, x0):
    roots = (x0, x0 + gaps[0], x0 + gaps[0] + gaps[1])
    assert check_inequalities(tuple_from_cubic(roots)) == []


@given(raw_tuples())
def test_case_split_agrees_with_system(t):
    assert (check_inequalities(t) == []) == (check_case_inequalities(t).violations == [])


@settings(max_examples=60, suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
@given(admissible)
def test_construction_round_trip(t):
    s = construct_3nice(t)
    rec = recovered_arrangement(s)
    np.testing.assert_allclose(rec.as_tuple(), t.as_tuple(), rtol=0, atol=1e-6 * t.span)


@settings(max_examples=40, suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
@given(admissible)
def test_spline_shape(t):
    s = construct_3nice(t)
    h = np.diff(s.knots)
    c0, c1, c2 = s.coeffs.T
    scale = np.abs(s.coeffs).max()
    # D and D' continuous across knots, D convex
    np.testing.assert_allclose((c0 + c1 * h + c2 * h * h)[:-1], c0[1:], atol=1e-9 * scale)
    np.testing.assert_allclose((c1 + 2 * c2 * h)[:-1], c1[1:], atol=1e-9 * scale)
    assert np.all(c2 >= 0.0)
    assert evaluate(s, t.z1, 1) == pytest.approx(-1.0, abs=1e-9)
    assert evaluate(s, t.x1, 0) == pytest.approx(0.0, abs=1e-12)
    xs = np.linspace(*s.domain, 2001)
    assert evaluate(s, xs, 1).min() >= -1.0 - 1e-9


def test_reflection_commutes_with_construction():
    t = CUBIC
    a = recovered_arrangement(construct_3nice(t.reflect()))
    np.testing.assert_allclose(a.as_tuple(), t.reflect().as_tuple(), atol=1e-9)


def test_symmetric_tuple_gives_odd_function():
    t = Tuple3Arrangement(-1, 0, 1, -0.6, 0.6, 0)
    s = construct_3nice(t)
    lo, hi = s.domain
    assert lo == pytest.approx(-hi)
    xs = np.linspace(0, hi, 101)
    np.testing.assert_allclose(evaluate(s, -xs, 0), -evaluate(s, xs, 0), atol=1e-12)
    np.testing.assert_allclose(evaluate(s, -xs, 1), evaluate(s, xs, 1), atol=1e-12)


def test_serialization_round_trip():
    s = construct_3nice(CUBIC)
    doc = json.loads(json.dumps(s.to_dict()))
    s2 = ConvexDerivativeSpline.from_dict(doc)
    xs = np.linspace(*s.domain, 301)
    for order in (0, 1, 2):
        np.testing.assert_array_equal(evaluate(s, xs, order), evaluate(s2, xs, order))
    doc["pieces"] = doc["pieces"][:-1]
    with pytest.raises(InvalidInput):
        ConvexDerivativeSpline.from_dict(doc)


def test_evaluate_guards():
    s = construct_3nice(CUBIC)
    lo, hi = s.domain
    with pytest.raises(InvalidInput):
        evaluate(s, hi + 1.0)
    with pytest.raises(InvalidInput):
        evaluate(s, 0.5, order=3)


def test_non_finite_tuple_rejected():
    with pytest.raises(InvalidInput):
        Tuple3Arrangement(0, 1, float("nan"), 0.4, 2.8, 1.6)

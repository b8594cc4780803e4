from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pietsch.exceptions import DivergentIntegral
from pietsch.majorization import grid_majorized, series_majorization_check, uniformly_majorized
from pietsch.opmodel import diagonal_op
from pietsch.stepfn import (
    StepFunction,
    ZeroTail,
    decreasing_rearrangement,
    dilate,
    from_pieces,
    indicator,
)

from conftest import tail_free_functions

F = Fraction

lams = st.integers(1, 3)


@st.composite
def nonneg_functions(draw):
    f = draw(tail_free_functions(max_pieces=5))
    return decreasing_rearrangement(f)


def test_indicator_examples():
    Y, X = indicator(0, 1), indicator(0, 1, 2)
    assert uniformly_majorized(Y, X, 1).holds
    res = uniformly_majorized(X, Y, 1)
    assert not res.holds
    assert res.witness is not None


def test_two_term_series():
    res = series_majorization_check([diagonal_op([4, 2]), diagonal_op([1, 1])])
    assert res.holds


@given(nonneg_functions())
def test_single_term_series(f):
    assert series_majorization_check([f]).holds


@given(nonneg_functions(), lams)
def test_reflexive(f, lam):
    assert uniformly_majorized(f, f, lam).holds


@given(nonneg_functions(), nonneg_functions(), lams)
def test_grid_never_contradicts(g, f, lam):
    exact = uniformly_majorized(g, f, lam).holds
    grid = grid_majorized(g, f, lam)
    # the grid only samples a subset of the (a, b) pairs
    assert grid or not exact


@given(nonneg_functions(), nonneg_functions(), lams)
def test_dilation_compatible(g, f, lam):
    if uniformly_majorized(g, f, lam).holds:
        assert uniformly_majorized(dilate(g, 2), dilate(f, 2), lam).holds


@given(nonneg_functions(), nonneg_functions(), lams, st.fractions(0, 1, max_denominator=8))
def test_monotone_in_Y(g, f, lam, c):
    if uniformly_majorized(g, f, lam).holds:
        assert uniformly_majorized(c * g, f, lam).holds


def test_constant_at_infinity():
    assert not uniformly_majorized(from_pieces([0], [], 2), from_pieces([0], [], 1)).holds
    assert uniformly_majorized(from_pieces([0], [], 1), from_pieces([0], [], 2)).holds


def test_divergent_zero_tail():
    f = StepFunction(ZeroTail(1, 2, 0), (F(1),), (), 0)
    with pytest.raises(DivergentIntegral):
        uniformly_majorized(f, f)


def test_result_json():
    data = uniformly_majorized(indicator(0, 1, 2), indicator(0, 1)).to_json()
    assert data["majorized"] is False
    assert len(data["witness"]) == 2

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pietsch import seqcore
from pietsch.seqcore import DyadicSequence, Tail, basis, ordering_numbers, shift
from pietsch.stepfn import (
    add,
    constant,
    decreasing_rearrangement,
    from_pieces,
    indicator,
    integrate,
)
from pietsch.transfer import phi_av, phi_sample, pietsch_D

from conftest import finite_sequences, sequences, tail_free_functions

F = Fraction


@st.composite
def nonincreasing_sequences(draw):
    vals = sorted(draw(st.lists(st.fractions(0, 8, max_denominator=16), min_size=1,
                                max_size=10)), reverse=True)
    lo = draw(st.integers(-5, 5))
    c = vals[0] + draw(st.fractions(0, 4, max_denominator=8))
    left = Tail(c, draw(st.sampled_from([F(1), F(3, 2), F(2)])))
    right = draw(st.one_of(st.just(Tail()),
                           st.builds(lambda r: Tail(vals[-1], r), st.sampled_from([F(1, 2), F(1)]))))
    return DyadicSequence(lo, tuple(vals), left, right)


def test_D_examples():
    assert pietsch_D(basis(0)) == indicator(1, 2)
    assert pietsch_D(seqcore.constant(1)) == constant(1)


def test_phi_of_indicator():
    x = phi_sample(indicator(0, 4))
    assert x == seqcore.indicator(None, 1)
    assert x.value(1) == 1 and x.value(2) == 0


def test_phi_av_cell_averages():
    f = from_pieces([0, 1, 2], [5, 2])
    y = phi_av(f)
    assert y.value(0) == 2
    assert y.value(-1) == 5
    assert y.value(1) == 0


@given(sequences, finite_sequences)
def test_D_linear(x, y):
    assert pietsch_D(seqcore.add(x, y)) == add(pietsch_D(x), pietsch_D(y))


@given(nonincreasing_sequences())
def test_phi_inverts_D_on_monotone(x):
    f = pietsch_D(x)
    assert phi_sample(f) == x
    assert phi_av(f) == x


@given(sequences)
def test_ordering_numbers_between_samples(x):
    # (Dx)*(2**n) <= o_n <= (Dx)*(2**(n-1))
    o = ordering_numbers(x)
    sampled = phi_sample(pietsch_D(x))
    assert seqcore.pointwise_le(sampled, o)
    assert seqcore.pointwise_le(o, shift(sampled, 1))


def test_phi_D_equals_ordering_numbers_fails():
    x = basis(-5)
    assert ordering_numbers(x).value(-5) == 1
    assert phi_sample(pietsch_D(x)).value(-5) == 0


@pytest.mark.xfail(strict=True, reason="sampling at 2**n loses mass spread over smaller cells")
@given(sequences)
def test_phi_D_equals_ordering_numbers(x):
    assert phi_sample(pietsch_D(x)) == ordering_numbers(x)


@given(tail_free_functions(), tail_free_functions())
def test_phi_of_sum_bounded_by_shifted_sum(f, g):
    lhs = phi_sample(add(f, g))
    rhs = shift(seqcore.add(phi_sample(f), phi_sample(g)), 1)
    assert seqcore.pointwise_le(lhs, rhs)


@given(tail_free_functions())
def test_phi_av_cellwise_integrals(f):
    g = decreasing_rearrangement(f)
    h = pietsch_D(phi_av(f))
    for k in range(-4, 8):
        a, b = F(2) ** k, F(2) ** (k + 1)
        assert integrate(g, a, b) == integrate(h, a, b)


@given(tail_free_functions())
def test_D_phi_sandwich(f):
    # for nonincreasing g: g <= D Phi g <= g(t/2)
    g = decreasing_rearrangement(f)
    h = pietsch_D(phi_sample(g))
    for k in range(1, 200):
        t = F(k, 8)
        assert g(t) <= h(t) <= g(t / 2)

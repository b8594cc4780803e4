from fractions import Fraction

import pytest
from hypothesis import given

from pietsch.exceptions import IncompatibleTails, NotRepresentable
from pietsch.seqcore import (
    DyadicSequence,
    Tail,
    add,
    basis,
    constant,
    from_list,
    indicator,
    ordering_numbers,
    pointwise_le,
    scale,
    shift,
    solve_cohomology,
)

from conftest import finite_sequences, sequences

H = Fraction(1, 2)


def brute_ordering(x, n, depth=64):
    return max(abs(x.value(k)) for k in range(n, x.hi + depth))


def test_ordering_numbers_small_example():
    o = ordering_numbers(from_list(0, [3, 1, 2]))
    assert [o.value(n) for n in range(-3, 5)] == [3, 3, 3, 3, 2, 2, 0, 0]
    assert o.left == Tail.const(3) and o.right.is_zero


def test_ordering_numbers_of_nonincreasing_is_identity():
    x = DyadicSequence(0, (5, 3, 1), Tail(5, 1), Tail(1, H))
    assert ordering_numbers(x) == x


@given(sequences)
def test_ordering_numbers_match_brute_force(x):
    o = ordering_numbers(x)
    for n in range(x.lo - 8, x.hi + 8):
        assert o.value(n) == brute_ordering(x, n)


@given(sequences)
def test_ordering_numbers_nonincreasing_and_dominating(x):
    o = ordering_numbers(x)
    vals = [o.value(n) for n in range(x.lo - 8, x.hi + 9)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    assert all(o.value(n) >= abs(x.value(n)) for n in range(x.lo - 8, x.hi + 9))


def test_shift_examples():
    assert shift(basis(0), 1) == basis(1)
    assert shift(constant(1), 1) == constant(1)
    x = DyadicSequence(0, (1,), Tail(1, 2))
    y = shift(x, 3)
    assert all(y.value(n) == 2 ** (3 - n) for n in range(-5, 4))
    assert y.lo == 3 and y.left == Tail(1, 2)


def test_shift_rejects_negative_on_one_sided():
    x = DyadicSequence(0, (1, 2), index_set="Z+")
    with pytest.raises(ValueError):
        shift(x, -1)


@given(sequences)
def test_shift_round_trip(x):
    assert shift(shift(x, 3), -3) == x


def test_scale_examples():
    x = DyadicSequence(0, (1,), Tail(3, 2))
    assert scale(-2, x).left == Tail(-6, 2)
    assert scale(H, shift(basis(0), 1)) == H * basis(1)
    assert scale(0, x) == DyadicSequence(0, (0,))


def test_add_examples():
    assert add(basis(0), basis(0)) == 2 * basis(0)
    x = DyadicSequence(0, (0,), Tail(1, 2))
    y = DyadicSequence(0, (0,), Tail(2, 2))
    s = add(x, y)
    assert all(s.value(n) == 3 * 2 ** (-n) for n in range(-10, 0))


def test_add_incompatible_tails():
    x = DyadicSequence(0, (1,), right=Tail(1, H))
    y = DyadicSequence(0, (1,), right=Tail(1, 1))
    with pytest.raises(IncompatibleTails):
        add(x, y, depth=4)


@given(sequences)
def test_add_zero_identity(x):
    assert add(x, DyadicSequence(0, (0,))) == x


def test_solve_cohomology_examples():
    assert solve_cohomology(DyadicSequence(0, (0,))) == DyadicSequence(0, (0,))
    b = solve_cohomology(basis(0))
    # b_n = 2**-n for n >= 0 and 0 below
    assert [b.value(n) for n in range(-2, 7)] == [0, 0] + [Fraction(1, 2**n) for n in range(7)]
    assert solve_cohomology(basis(0) - H * basis(1)) == basis(0)


@given(finite_sequences)
def test_solve_cohomology_identity(a):
    b = solve_cohomology(a)
    assert b - H * shift(b, 1) == a


def test_solve_cohomology_resonant_ratio():
    with pytest.raises(NotRepresentable):
        solve_cohomology(DyadicSequence(0, (1,), right=Tail(1, H)))


def test_indicators():
    x = indicator(None, 2)
    assert x.value(-100) == 1 and x.value(2) == 1 and x.value(3) == 0
    y = indicator(3, None)
    assert y.value(2) == 0 and y.value(300) == 1


@given(sequences, sequences)
def test_pointwise_le_agrees_with_sampling(x, y):
    if pointwise_le(x, y):
        lo, hi = min(x.lo, y.lo) - 20, max(x.hi, y.hi) + 20
        assert all(x.value(n) <= y.value(n) for n in range(lo, hi))


@given(sequences)
def test_json_round_trip(x):
    assert DyadicSequence.from_json(x.to_json()) == x


def test_unbounded_right_tail_rejected():
    from pietsch.exceptions import UnboundedResult

    with pytest.raises(UnboundedResult):
        DyadicSequence(0, (1,), right=Tail(1, 2))

import random
from fractions import Fraction

from hypothesis import given, strategies as st

from pietsch import seqcore
from pietsch.dyadic import (
    DyadicRep,
    coefficient_sequence,
    decompose,
    difference_witness,
    regroup,
    rep_from_json,
    sum_reps,
    validate,
)
from pietsch.opmodel import (
    CommutativeOp,
    block_diagonal,
    diagonal_op,
    singular_value_function,
    support_projection,
    trace,
)
from pietsch.seqcore import DyadicSequence, Tail, ordering_numbers, shift
from pietsch.stepfn import Rearrangement, StepFunction, ZeroTail, integrate
from pietsch.transfer import pietsch_D

from conftest import rationals

F = Fraction

X8421 = diagonal_op([8, 4, 2, 1])

diagonals = st.tuples(st.lists(rationals, min_size=1, max_size=6),
                      st.sampled_from([F(1, 2), F(1), F(2)]))


def test_worked_example():
    rep = decompose(X8421)
    assert rep.indices() == [1, 2, 3]
    assert rep.part(1).to_json() == diagonal_op([8, 0, 0, 0]).to_json()
    assert rep.part(2).to_json() == diagonal_op([0, 4, 0, 0]).to_json()
    assert rep.part(3).to_json() == diagonal_op([0, 0, 2, 1]).to_json()
    assert [rep.residuals.value(n) for n in range(-2, 5)] == [8, 8, 8, 4, 2, 0, 0]
    a = coefficient_sequence(rep)
    assert [a.value(k) for k in (1, 2, 3)] == [4, 1, F(3, 8)]
    assert a.value(0) == 0 and a.value(4) == 0
    assert validate(rep)["valid"]


def test_zero_operator():
    rep = decompose(diagonal_op([0, 0, 0]))
    assert rep.indices() == []
    assert all(rep.residuals.value(n) == 0 for n in range(-4, 4))
    assert all(coefficient_sequence(rep).value(n) == 0 for n in range(-4, 4))


def test_corrupted_support_is_reported():
    rep = decompose(X8421)
    # move the whole operator into part 0, whose support may have trace 1 at most
    bad = DyadicRep(X8421, "block", rep.residuals, rep.coefficients, {0: X8421})
    report = validate(bad)
    assert not report["valid"]
    assert any("support" in msg for msg in report["failures"])
    assert validate(rep)["valid"]


def test_regrouped_example():
    # X_2 carries {8, 4}, X_3 carries {2, 1}
    data = {
        "operator": X8421.to_json(),
        "parts": {"2": diagonal_op([8, 4, 0, 0]).to_json(),
                  "3": diagonal_op([0, 0, 2, 1]).to_json()},
    }
    alt = rep_from_json(data)
    assert validate(alt)["valid"]
    a = coefficient_sequence(alt)
    assert a.value(2) == 3 and a.value(3) == F(3, 8)
    canon = coefficient_sequence(decompose(X8421))
    assert a != canon
    b = difference_witness(alt, decompose(X8421))
    diff = seqcore.add(a, seqcore.scale(-1, canon))
    assert diff == seqcore.add(b, seqcore.scale(F(-1, 2), shift(b, 1)))


def test_sum_with_self():
    rep = decompose(X8421)
    Z = sum_reps(rep, rep)
    assert validate(Z)["valid"]
    for k in rep.indices():
        assert Z.part(k + 1).to_json() == diagonal_op(
            [2 * z[0] for z in (rep.part(k).mats[0][i][i] for i in range(4))]).to_json()
        assert support_projection(Z.part(k + 1)).trace <= F(2) ** (k + 1)


def test_sum_with_zero_shifts():
    rep = decompose(X8421)
    Z = sum_reps(rep, decompose(diagonal_op([0, 0, 0, 0])))
    assert Z.indices() == [k + 1 for k in rep.indices()]


def test_commutative_zero_tail_coefficients():
    f = StepFunction(ZeroTail(1, 2, 0), (F(1),), (), 0)
    rep = decompose(CommutativeOp(f))
    a = coefficient_sequence(rep)
    for k in range(-6, 0):
        assert a.value(k) == F(2) ** -k
        assert integrate(f, F(2) ** k, F(2) ** (k + 1)) == 1
    assert a.value(0) == 0


@given(st.lists(st.fractions(0, 8, max_denominator=8), min_size=1, max_size=6), st.integers(-3, 3))
def test_commutative_monotone_residuals(vals, lo):
    x = seqcore.from_list(lo, sorted(vals, reverse=True))
    rep = decompose(CommutativeOp(pietsch_D(x)))
    o = ordering_numbers(x)
    for n in range(lo - 3, lo + len(vals) + 3):
        assert rep.residuals.value(n) == o.value(n + 1)


@given(diagonals)
def test_decompose_bounds(data):
    vals, w = data
    X = diagonal_op(vals, w)
    rep = decompose(X)
    assert validate(rep)["valid"]
    mu = Rearrangement(singular_value_function(X))
    r = rep.residuals
    for n in range(-4, 6):
        assert r.value(n) <= 2 * mu.value_at(F(2) ** (n - 1))
        assert mu.value_at(F(2) ** (n + 1)) <= r.value(n)


@given(diagonals, st.integers(0, 2**32))
def test_regrouped_reps_differ_by_coboundary(data, seed):
    vals, w = data
    rep = decompose(diagonal_op(vals, w))
    alt = regroup(rep, random.Random(seed))
    assert validate(alt)["valid"]
    b = difference_witness(rep, alt)
    diff = seqcore.add(coefficient_sequence(rep), seqcore.scale(-1, coefficient_sequence(alt)))
    assert diff == seqcore.add(b, seqcore.scale(F(-1, 2), shift(b, 1)))


@given(diagonals, st.lists(rationals, min_size=6, max_size=6))
def test_sum_reps_coefficients(data, other):
    vals, w = data
    X = diagonal_op(vals, w)
    Y = diagonal_op(other[: len(vals)], w)
    rx, ry = decompose(X), decompose(Y)
    Z = sum_reps(rx, ry)
    assert validate(Z)["valid"]
    expect = seqcore.scale(F(1, 2), shift(seqcore.add(coefficient_sequence(rx),
                                                      coefficient_sequence(ry)), 1))
    assert coefficient_sequence(Z) == expect
    bound = shift(seqcore.add(rx.residuals, ry.residuals), 1)
    assert seqcore.pointwise_le(Z.residuals, bound)


def test_probe_membership():
    rep = decompose(X8421)
    g = seqcore.indicator(None, 3)
    assert validate(rep, (g, 8, 0))["probe_member"]
    assert not validate(rep, (seqcore.basis(-10), 1, 0))["probe_member"]


def test_numeric_tier_validates():
    M = [[1.5, 0.25, 0.0], [0.0, 0.75, 0.1], [0.3, 0.0, 0.2]]
    rep = decompose(block_diagonal((1, M)))
    assert validate(rep)["valid"]
    total = sum(complex(trace(rep.part(k))).real for k in rep.indices())
    assert abs(total - 2.45) < 1e-9


def test_json_round_trip():
    rep = decompose(X8421)
    data = rep.to_json()
    data["operator"] = X8421.to_json()
    again = rep_from_json(data)
    assert validate(again)["valid"]
    assert again.coefficients == rep.coefficients
    assert isinstance(again.residuals, DyadicSequence)
    assert again.residuals.left == Tail.const(8)

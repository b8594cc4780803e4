from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pietsch import seqcore
from pietsch.deltanorm import Linf, Lp, SumNorm, constants_report, norm_eval, p_integral, stable_norm
from pietsch.opmodel import BlockAlgebra, CommutativeOp, block_diagonal, diag_embed, diagonal_op, phi_op
from pietsch.seqcore import DyadicSequence, Tail, basis, shift
from pietsch.stepfn import INF, StepFunction, ZeroTail, add, dilate, from_pieces, indicator
from pietsch.transfer import pietsch_D

from conftest import finite_sequences, sequences, tail_free_functions

F = Fraction
NORMS = [Lp(1), Lp(2), Lp(F(1, 2)), Linf, SumNorm(Lp(1), Linf)]


def close(a, b, rel=1e-12):
    if a == INF or b == INF:
        return a == b
    return abs(float(a) - float(b)) <= rel * max(1.0, abs(float(a)), abs(float(b)))


def test_examples():
    X = diagonal_op([3, 1])
    assert norm_eval(Lp(1), X) == 4
    assert norm_eval(Lp(1), basis(0)) == 1
    assert stable_norm(Lp(1), X) == 4
    assert norm_eval(Linf, X) == 3
    assert norm_eval(Lp(2), diagonal_op([3, 4])) == 5


def test_stable_norm_strict_case():
    X = CommutativeOp(indicator(0, 3))
    assert norm_eval(Lp(1), X) == 3
    assert phi_op(X).value(1) == 1 and phi_op(X).value(2) == 0
    assert stable_norm(Lp(1), X) == 4


def test_names_and_constants():
    assert Lp(F(1, 2)).name == "L1/2"
    assert SumNorm(Lp(1), Linf).name == "L1+Linf"
    assert all(N.constant == 1 for N in NORMS)
    with pytest.raises(ValueError):
        Lp(0)


def test_divergence():
    assert norm_eval(Lp(1), seqcore.constant(1)) == INF
    f = StepFunction(ZeroTail(1, 2, 0), (F(1),), (), 0)
    assert p_integral(f, 1) == INF
    assert norm_eval(Linf, f) == INF
    # sum 2**(n/2) 2**-n over n < 0 converges for p = 1/2 only when r**p < 2
    assert p_integral(f, F(1, 2)) != INF


def test_geometric_tails_closed_form():
    # x_n = 2**-n for n >= 1: each cell carries 1, so L1 diverges and L2 converges
    x = DyadicSequence(0, (F(0),), Tail(), Tail(1, F(1, 2)))
    assert norm_eval(Lp(1), x) == INF
    # sum_{n>=1} 2**-2n 2**n = 1
    assert norm_eval(Lp(2), x) == 1


@pytest.mark.parametrize("N", NORMS, ids=lambda N: N.name)
@given(x=sequences)
def test_sequence_norm_is_function_norm(N, x):
    assert close(norm_eval(N, x), norm_eval(N, pietsch_D(x)))


@pytest.mark.parametrize("N", NORMS, ids=lambda N: N.name)
@given(x=st.lists(st.fractions(-4, 4, max_denominator=4), min_size=1, max_size=3))
def test_operator_transfer(N, x):
    seq = seqcore.from_list(-1, x)
    X = diag_embed(seq, BlockAlgebra(((8, F(1, 2)),)))
    assert close(norm_eval(N, seq), norm_eval(N, X))


@pytest.mark.parametrize("N", NORMS, ids=lambda N: N.name)
@given(f=tail_free_functions())
def test_stable_sandwich(N, f):
    X = CommutativeOp(f)
    a, b = norm_eval(N, X), stable_norm(N, X)
    assert float(a) <= float(b) * (1 + 1e-12)
    assert float(b) <= 2 * float(N.constant) * float(a) * (1 + 1e-12) + 1e-300


@given(tail_free_functions(), tail_free_functions())
def test_stable_norm_monotone(f, g):
    py, px = phi_op(CommutativeOp(f)), phi_op(CommutativeOp(g))
    if seqcore.pointwise_le(seqcore.absolute(py), seqcore.absolute(px)):
        assert stable_norm(Lp(1), f) <= stable_norm(Lp(1), g)


@given(tail_free_functions())
def test_dilation_doubles_L1(f):
    assert norm_eval(Lp(1), dilate(f, 2)) == 2 * norm_eval(Lp(1), f)


@given(finite_sequences)
def test_shift_doubles_L1(x):
    assert norm_eval(Lp(1), shift(x, 1)) == 2 * norm_eval(Lp(1), x)


@given(tail_free_functions(), tail_free_functions())
def test_half_integral_subadditive(f, g):
    lhs = norm_eval(Lp(F(1, 2)), add(f, g))
    rhs = float(norm_eval(Lp(F(1, 2)), f)) + float(norm_eval(Lp(F(1, 2)), g))
    assert float(lhs) <= rhs * (1 + 1e-12)


def test_symmetry():
    X = block_diagonal((1, [3, 1]), (1, [2]))
    Y = block_diagonal((1, [0, 2]), (1, [3]))
    Z = block_diagonal((1, [1, 0]), (1, [0]))
    for N in NORMS:
        assert close(norm_eval(N, X), norm_eval(N, block_diagonal((1, [1, 3]), (1, [2]))))
        assert close(norm_eval(N, Y), norm_eval(N, block_diagonal((1, [3, 2]), (1, [0]))))
        assert norm_eval(N, Z) == norm_eval(N, from_pieces([0, 1], [1]))


@pytest.mark.parametrize("N", NORMS, ids=lambda N: N.name)
def test_constants_report(N):
    report = constants_report(N, trials=40, seed=1)
    assert report["holds"], report
    if N == Lp(1):
        assert report["worst"]["shift"] == 2.0

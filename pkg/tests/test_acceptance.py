"""Acceptance criteria 1-12.

Each criterion records one PASS/FAIL line; the lines are printed in the
terminal summary (see conftest.py) and, with ``-s``, as the tests run.

Criteria 1 (exact equality of ordering numbers and dyadic samples of the
rearrangement) and the N = 20 tolerance of criterion 8 do not hold
mathematically.  Both are implemented as stated and marked as strict xfail,
so they report FAIL without breaking the run.
"""

import io
import json
import random
import time
from fractions import Fraction

import pytest

from pietsch import cli, functionals, sampling, seqcore, verify
from pietsch.functionals import LIMIT_MINUS, LIMIT_PLUS, theta_eval, trace_eval
from pietsch.opmodel import CommutativeOp, block_diagonal
from pietsch.seqcore import DyadicSequence, Tail, ordering_numbers
from pietsch.stepfn import Rearrangement, StepFunction, ZeroTail, from_pieces
from pietsch.transfer import pietsch_D

F = Fraction
RESULTS = {}


def record(key: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {key:>3}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
    RESULTS[key] = line
    print(line)


@pytest.fixture(scope="session")
def verify_all():
    """Two runs of ``verify all --seed 0`` through the CLI, with timings."""
    runs = []
    for _ in range(2):
        out = io.StringIO()
        t0 = time.perf_counter()
        code = cli.run(["verify", "all", "--seed", "0"], out)
        runs.append((code, out.getvalue(), time.perf_counter() - t0))
    report = json.loads(runs[0][1])
    return {"runs": runs, "suites": {r["suite"]: r for r in report["reports"]}}


def suite_ok(report: dict) -> bool:
    return report["status"] == "pass" and report["failed"] == 0


def summary(report: dict) -> str:
    return f"{report['suite']}: {report['cases'] - report['failed']}/{report['cases']} cases"


# -- 1 ----------------------------------------------------------------------


@pytest.mark.xfail(strict=True, reason="o_n(x) = (Dx)*(2**n) is false; e.g. x = e_-5")
def test_criterion_01_order_equals_rearrangement(verify_all):
    rep = verify_all["suites"]["order-rearrangement"]
    x = seqcore.basis(-5)
    o = ordering_numbers(x).value(-5)
    fstar = Rearrangement(pietsch_D(x)).value_at(F(2) ** -5)
    ok = suite_ok(rep) and rep["trials"] == 1000 and o == fstar
    record("1", ok, f"{rep['failed']}/{rep['cases']} sequences violate the equality; "
                    f"x = e_-5 gives o_-5 = {o}, (Dx)*(2^-5) = {fstar}")
    assert ok


def test_criterion_01_runtime_and_true_bound():
    t0 = time.perf_counter()
    rep = verify.run("order-rearrangement", 1000, 0)
    elapsed = time.perf_counter() - t0
    ok = elapsed < 5 and rep["details"]["bound_failures"] == 0
    record("1t", ok, f"1000 sequences in {elapsed:.2f}s; "
                     f"(Dx)*(2^n) <= o_n <= (Dx)*(2^(n-1)) fails {rep['details']['bound_failures']} times")
    assert ok


# -- 2-6 --------------------------------------------------------------------


def test_criterion_02_sandwiches(verify_all):
    rep = verify_all["suites"]["dphi-sandwich"]
    ok = suite_ok(rep) and rep["details"] == {"sequence_cases": 1000, "function_cases": 1000}
    record("2", ok, summary(rep))
    assert ok


def test_criterion_03_sum_rearrangement(verify_all):
    rep = verify_all["suites"]["sum-rear"]
    d = rep["details"]
    ok = suite_ok(rep) and d["exact_pairs"] + d["numeric_pairs"] == 500 and d["tolerance"] == 1e-9
    record("3", ok, f"{summary(rep)} ({d['exact_pairs']} exact diagonal, "
                    f"{d['numeric_pairs']} numeric at 1e-9)")
    assert ok


def test_criterion_04_dyadic_bounds(verify_all):
    rep = verify_all["suites"]["dyadic-bounds"]
    worked = rep["details"]["worked_example"]["residuals_n0_to_3"]
    ok = suite_ok(rep) and rep["trials"] == 500 and worked == ["8/1", "4/1", "2/1", "0/1"]
    record("4", ok, f"{summary(rep)}; diag(8,4,2,1) residuals n=0..3: {', '.join(worked)}")
    assert ok


def test_criterion_05_welldefined(verify_all):
    rep = verify_all["suites"]["trace-welldefined"]
    ok = suite_ok(rep) and rep["trials"] == 200
    record("5", ok, summary(rep))
    assert ok


def test_criterion_06_tau_recovery_and_linearity(verify_all):
    tau = verify_all["suites"]["tau-recovery"]
    lin = verify_all["suites"]["trace-linearity"]
    ok = suite_ok(tau) and suite_ok(lin) and tau["trials"] == 500
    record("6", ok, f"{summary(tau)}; {summary(lin)}")
    assert ok


# -- 7 ----------------------------------------------------------------------


def test_criterion_07_singular_traces():
    rng = random.Random("criterion-7:0")
    one = functionals.EvalResult(True, F(1))
    zero = functionals.EvalResult(True, F(0))
    # weak-type element: 1 on (0,1), 2**-n on [2**n, 2**(n+1)) for n >= 0
    weak = DyadicSequence(0, (F(1),), Tail.const(1), Tail(1, F(1, 2)))
    plus_weak = trace_eval(LIMIT_PLUS, CommutativeOp(pietsch_D(weak)))
    # f = 2**-n on cells n < 0, i.e. f ~ 1/t near 0
    near_zero = StepFunction(ZeroTail(1, 2, 0), (F(1),), (), 0)
    minus_sing = trace_eval(LIMIT_MINUS, CommutativeOp(near_zero))
    blocks_ok = 0
    for i in range(200):
        shape = sampling.block_shape(rng)
        if i % 2:
            X = block_diagonal(*[(w, sampling.matrix(rng, d)) for d, w in shape])
        else:
            X = block_diagonal(*[(w, [sampling.rational(rng, 4) for _ in range(d)])
                                 for d, w in shape])
        blocks_ok += trace_eval(LIMIT_PLUS, X) == zero
    bounded_ok = 0
    for _ in range(200):
        k = rng.randint(1, 6)
        bps = sorted({F(rng.randint(1, 64), 8) for _ in range(k)})
        f = from_pieces([F(0)] + bps, [sampling.rational(rng) for _ in bps])
        bounded_ok += trace_eval(LIMIT_MINUS, CommutativeOp(f)) == zero
    ok = (plus_weak == one and minus_sing == one and blocks_ok == 200 and bounded_ok == 200)
    record("7", ok, f"LimitPlus(weak) = {plus_weak.value}, LimitMinus(1/t) = {minus_sing.value}, "
                    f"LimitPlus = 0 on {blocks_ok}/200 blocks, LimitMinus = 0 on {bounded_ok}/200 bounded f")
    assert ok


# -- 8 ----------------------------------------------------------------------


def test_criterion_08_counterexample_exact(verify_all):
    rep = verify_all["suites"]["counterexample"]
    d = rep["details"]
    theta = functionals.counterexample_theta()
    total = theta_eval(theta, seqcore.constant(1))
    closed = all(functionals.counterexample_partial_sum(N)
                 == F(1, 1 + F(2) ** -N) - F(1, 1 + 2 ** (N + 1)) for N in range(0, 41))
    ok = (suite_ok(rep) and d["theta_e0"] == "1/6" and d["theta_half_shift_e0"] == "1/15"
          and d["invariance_violated"] and closed and total.value == 1)
    record("8a", ok, f"theta(e0) = {d['theta_e0']}, theta(S+e0/2) = {d['theta_half_shift_e0']}, "
                     f"sum c_n = {total.value} via the closed form")
    assert ok


@pytest.mark.xfail(strict=True, reason="the N = 20 two-sided truncation error is 1.43e-6")
def test_criterion_08_partial_sum_tolerance():
    err = 1 - functionals.counterexample_partial_sum(20)
    ok = err < F(1, 10**6)
    record("8b", ok, f"|1 - sum_(|n|<=20) c_n| = {float(err):.4e} (needs < 1e-6; N = 21 gives "
                     f"{float(1 - functionals.counterexample_partial_sum(21)):.4e})")
    assert ok


# -- 9-11 -------------------------------------------------------------------


def test_criterion_09_round_trip(verify_all):
    rep = verify_all["suites"]["roundtrip-corollary"]
    ok = suite_ok(rep) and rep["trials"] == 200
    record("9", ok, summary(rep))
    assert ok


def test_criterion_10_majorization(verify_all):
    rep = verify_all["suites"]["majorization"]
    d = rep["details"]
    ok = suite_ok(rep) and d["grid_pairs"] == 300 and d["series_trials"] == 200
    record("10", ok, f"{summary(rep)}; grid agreement on {d['grid_pairs']} pairs, "
                     f"series bound K <= 4 on {d['series_trials']} trials")
    assert ok


def test_criterion_11_norms(verify_all):
    reps = [verify_all["suites"][s] for s in ("norm-transfer", "stable-sandwich", "constants")]
    l1 = reps[2]["details"]["norms"]["L1"]
    ok = (all(suite_ok(r) for r in reps) and reps[0]["trials"] == 300
          and reps[1]["trials"] == 300 and l1["worst"]["dilation"] == 1.0)
    record("11", ok, "; ".join(summary(r) for r in reps)
           + f"; L1 dilation ratio / 2C = {l1['worst']['dilation']}")
    assert ok


# -- 12 ---------------------------------------------------------------------


def test_criterion_12_determinism(verify_all):
    (c1, out1, t1), (c2, out2, t2) = verify_all["runs"]
    ok = out1 == out2 and c1 == c2 and max(t1, t2) < 60
    record("12", ok, f"byte-identical: {out1 == out2}; runs took {t1:.1f}s and {t2:.1f}s; "
                     f"exit code {c1}")
    assert ok

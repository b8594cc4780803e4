"""Dilation-invariant functionals on sequences and the traces they induce.

A functional ``theta`` acts on sequences through ``y_n = 2**n x_n``.  The
dilation-invariant ones satisfy ``theta(x) = theta(S_+ x / 2)``, which is
what makes ``X -> theta(a(X))`` independent of the dyadic representation
used to produce the coefficient sequence ``a(X)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import mpmath

from ._rational import HALF, ONE, ZERO, fmt_any, pow2
from .dyadic import decompose
from .opmodel import CommutativeOp, Operator, diag_embed, singular_value_function
from .seqcore import DyadicSequence, basis, indicator, shift
from . import seqcore
from .stepfn import StepFunction
from .transfer import phi_av, pietsch_D

__all__ = [
    "Theta",
    "EvalResult",
    "SUMMATION",
    "LIMIT_PLUS",
    "LIMIT_MINUS",
    "CESARO_PLUS",
    "CESARO_MINUS",
    "counterexample_theta",
    "theta_eval",
    "invariance_probe",
    "trace_eval",
    "trace_functional",
    "theta_from_phi",
    "resolvent_trace",
    "classify",
    "phi_av_identity_check",
    "counterexample_weight",
    "counterexample_partial_sum",
    "by_name",
]

DPS = 50


@dataclass
class EvalResult:
    defined: bool
    value: object = None
    reason: str = ""
    flags: tuple = ()

    def __eq__(self, other):
        if not isinstance(other, EvalResult):
            return NotImplemented
        if self.defined != other.defined:
            return False
        return not self.defined or self.value == other.value

    def close_to(self, other: "EvalResult", tol: float = 1e-12) -> bool:
        if not (self.defined and other.defined):
            return self.defined == other.defined
        if isinstance(self.value, Fraction) and isinstance(other.value, Fraction):
            return self.value == other.value
        return abs(float(self.value) - float(other.value)) <= tol

    def to_json(self) -> dict:
        if self.defined:
            data = {"status": "defined", "value": fmt_any(self.value)}
        else:
            data = {"status": "outside_domain", "reason": self.reason}
        if self.flags:
            data["flags"] = list(self.flags)
        return data


def _defined(v, flags=()) -> EvalResult:
    return EvalResult(True, v, flags=tuple(flags))


def _outside(reason: str) -> EvalResult:
    return EvalResult(False, reason=reason)


@dataclass(frozen=True)
class Theta:
    """A functional on two-sided sequences.

    ``kind`` is one of ``summation``, ``limit+``, ``limit-``, ``cesaro+``,
    ``cesaro-`` or ``weighted``.  Weighted functionals carry
    ``weight(n)`` together with a primitive ``F`` with
    ``weight(n) = F(n) - F(n+1)`` and limits ``F(-inf) = f_minus``,
    ``F(+inf) = f_plus``.
    """

    kind: str
    name: str = ""
    weight: Optional[Callable] = field(default=None, compare=False)
    primitive: Optional[Callable] = field(default=None, compare=False)
    f_minus: Fraction = ONE
    f_plus: Fraction = ZERO
    mp_weight: Optional[Callable] = field(default=None, compare=False)

    def __call__(self, x: DyadicSequence) -> EvalResult:
        return theta_eval(self, x)

    @property
    def label(self) -> str:
        return self.name or self.kind


SUMMATION = Theta("summation", "Summation")
LIMIT_PLUS = Theta("limit+", "LimitPlus")
LIMIT_MINUS = Theta("limit-", "LimitMinus")
CESARO_PLUS = Theta("cesaro+", "CesaroPlus")
CESARO_MINUS = Theta("cesaro-", "CesaroMinus")


def counterexample_weight(n: int) -> Fraction:
    """c_n = 2**n / ((1 + 2**(n+1)) (1 + 2**n))."""
    t = pow2(n)
    return t / ((1 + 2 * t) * (1 + t))


def _counterexample_primitive(n: int) -> Fraction:
    return 1 / (1 + pow2(n))


def _counterexample_mp(n):
    t = mpmath.mpf(2) ** n
    return t / ((1 + 2 * t) * (1 + t))


def counterexample_theta() -> Theta:
    """theta(x) = sum_n c_n x_n: positive and normalised, not dilation invariant."""
    return Theta("weighted", "Counterexample", counterexample_weight,
                 _counterexample_primitive, ONE, ZERO, _counterexample_mp)


def counterexample_partial_sum(N: int) -> Fraction:
    """sum_{|n| <= N} c_n = F(-N) - F(N+1), by telescoping."""
    return _counterexample_primitive(-N) - _counterexample_primitive(N + 1)


def by_name(name: str) -> Theta:
    table = {
        "summation": SUMMATION,
        "limitplus": LIMIT_PLUS,
        "limitminus": LIMIT_MINUS,
        "cesaroplus": CESARO_PLUS,
        "cesarominus": CESARO_MINUS,
        "counterexample": counterexample_theta(),
    }
    key = name.strip().lower().replace("_", "")
    if key.endswith("+"):
        key = key[:-1] + "plus"
    elif key.endswith("-"):
        key = key[:-1] + "minus"
    key = key.replace("-", "").replace("limplus", "limitplus").replace("limminus", "limitminus")
    if key not in table:
        raise ValueError(f"unknown functional {name!r}; choose from {sorted(table)}")
    return table[key]


# -- evaluation ------------------------------------------------------------


def _geometric_sum(c: Fraction, ratio: Fraction) -> Fraction:
    """sum_{m >= 1} c ratio**m for ratio < 1."""
    return c * ratio / (1 - ratio)


def _limit(c: Fraction, ratio: Fraction, side: str) -> EvalResult:
    """Limit of c ratio**m as m -> inf (the tail of y on one side)."""
    if c == 0 or ratio < 1:
        return _defined(ZERO)
    if ratio == 1:
        return _defined(c)
    return _outside(f"2^n x_n diverges toward {side}")


def _cesaro(c: Fraction, ratio: Fraction, side: str) -> EvalResult:
    """lim (1/N) sum_{m=1}^{N} c ratio**m."""
    if c == 0:
        return _defined(ZERO)
    if ratio < 1:
        # partial sums converge, so their means tend to 0
        return _defined(ZERO)
    if ratio == 1:
        return _defined(c)
    return _outside(f"Cesaro means of 2^n x_n diverge toward {side}")


def _y_tails(x: DyadicSequence):
    """(C_left, q_left, C_right, q_right) for y_n = 2**n x_n.

    y_{lo-m} = C_left q_left**m and y_{hi+m} = C_right q_right**m, m >= 1.
    """
    return (x.left.c * pow2(x.lo), x.left.r / 2,
            x.right.c * pow2(x.hi), x.right.r * 2)


def _weighted(theta: Theta, x: DyadicSequence) -> EvalResult:
    if not x.left.is_zero and x.left.r >= 2:
        return _outside("sum of |c_n x_n| diverges toward -inf")
    total = sum((theta.weight(n) * v for n, v in x.items()), ZERO)
    approx = False
    mp_total = mpmath.mpf(0)
    if not x.left.is_zero:
        if x.left.r == 1:
            total += x.left.c * (theta.primitive(x.lo) - theta.f_minus) * -1
        else:
            approx = True
            c, r, lo = x.left.c, x.left.r, x.lo
            with mpmath.workdps(DPS):
                mp_total += mpmath.nsum(
                    lambda m: theta.mp_weight(lo - int(m)) * mpmath.mpf(c.numerator)
                    / c.denominator * (mpmath.mpf(r.numerator) / r.denominator) ** m,
                    [1, mpmath.inf])
    if not x.right.is_zero:
        if x.right.r == 1:
            total += x.right.c * (theta.primitive(x.hi + 1) - theta.f_plus)
        else:
            approx = True
            c, r, hi = x.right.c, x.right.r, x.hi
            with mpmath.workdps(DPS):
                mp_total += mpmath.nsum(
                    lambda m: theta.mp_weight(hi + int(m)) * mpmath.mpf(c.numerator)
                    / c.denominator * (mpmath.mpf(r.numerator) / r.denominator) ** m,
                    [1, mpmath.inf])
    if approx:
        with mpmath.workdps(DPS):
            value = float(mpmath.mpf(total.numerator) / total.denominator + mp_total)
        return _defined(value, ("approximate",))
    return _defined(total)


def theta_eval(theta: Theta, x: DyadicSequence) -> EvalResult:
    """theta(x), or OutsideDomain when the defining limit or series diverges."""
    if x.index_set != "Z":
        x = DyadicSequence(x.lo, x.values, x.left, x.right)
    CL, qL, CR, qR = _y_tails(x)
    kind = theta.kind
    if kind == "summation":
        if (CL != 0 and qL >= 1) or (CR != 0 and qR >= 1):
            return _outside("sum of 2^n x_n diverges")
        total = sum((pow2(n) * v for n, v in x.items()), ZERO)
        if CL != 0:
            total += _geometric_sum(CL, qL)
        if CR != 0:
            total += _geometric_sum(CR, qR)
        return _defined(total)
    if kind == "limit+":
        return _limit(CR, qR, "+inf")
    if kind == "limit-":
        return _limit(CL, qL, "-inf")
    if kind == "cesaro+":
        return _cesaro(CR, qR, "+inf")
    if kind == "cesaro-":
        return _cesaro(CL, qL, "-inf")
    if kind == "weighted":
        return _weighted(theta, x)
    raise ValueError(f"unknown functional kind {kind!r}")


def invariance_probe(theta: Theta, samples) -> list:
    """Compare theta(x) with theta(S_+ x / 2) on each sample."""
    out = []
    for x in samples:
        a = theta_eval(theta, x)
        b = theta_eval(theta, HALF * shift(x, 1))
        out.append({"x": x, "theta": a, "theta_shifted": b, "equal": a.close_to(b)})
    return out


def _dilation_invariant(theta: Theta) -> bool:
    return theta.kind != "weighted"


# -- traces ----------------------------------------------------------------


def trace_eval(theta: Theta, X: Operator, rep=None) -> EvalResult:
    """phi_theta(X) = theta(a(X)) for the canonical (or a given) representation."""
    rep = rep or decompose(X)
    res = theta_eval(theta, rep.coefficients)
    if res.defined and not _dilation_invariant(theta):
        res.flags = res.flags + ("representation_dependent",)
    return res


def trace_functional(theta: Theta) -> Callable:
    return lambda X: trace_eval(theta, X)


def theta_from_phi(phi: Callable, x: DyadicSequence, target="commutative"):
    """theta_phi(x) = phi(diag(x))."""
    return phi(diag_embed(x, target))


def _mp(v: Fraction):
    return mpmath.mpf(v.numerator) / v.denominator


def resolvent_trace(X) -> object:
    """int_0^inf f(t) / (1+t)**2 dt on the commutative model.

    A piece with value v on [a, b) contributes v (1/(1+a) - 1/(1+b)); on the
    dyadic cell n this weight is exactly the counterexample weight c_n.
    Geometric tails are summed with mpmath.
    """
    f = X.f if isinstance(X, CommutativeOp) else X
    if not isinstance(f, StepFunction):
        raise TypeError("defined on the commutative model only")
    total = ZERO
    for a, b, v in f.pieces():
        total += v * (1 / (1 + a) - 1 / (1 + b))
    total += f.v_inf / (1 + f.t_end)
    extra = None
    with mpmath.workdps(DPS):
        if f.zero_tail is not None:
            zt = f.zero_tail
            extra = mpmath.nsum(lambda m: _counterexample_mp(zt.lo - int(m)) * _mp(zt.c)
                                * _mp(zt.r) ** m, [1, mpmath.inf])
        if f.far_tail is not None:
            ft = f.far_tail
            e = mpmath.nsum(lambda m: _counterexample_mp(ft.start + int(m)) * _mp(ft.c)
                            * _mp(ft.r) ** (m + 1), [0, mpmath.inf])
            extra = e if extra is None else extra + e
        if extra is not None:
            return float(_mp(total) + extra)
    return total


# -- classification --------------------------------------------------------


def _probe_samples(rng: random.Random, count: int) -> list:
    from . import sampling

    out = [basis(n) for n in range(-4, 5)]
    out += [sampling.sequence(rng, 6, tails=False) for _ in range(count)]
    return out


def classify(theta: Theta, seed: int = 0, trials: int = 20) -> dict:
    """Report positivity, normalisation, invariance and where theta lives.

    Supported at +inf means theta vanishes on every chi_(-inf, a); supported
    at -inf means it vanishes on every chi_(a, inf); a in -8..8.
    """
    rng = random.Random(seed)
    probes = invariance_probe(theta, _probe_samples(rng, trials))
    invariant = all(p["equal"] for p in probes)
    plus = all(theta_eval(theta, indicator(None, a - 1)) == _defined(ZERO)
               for a in range(-8, 9))
    minus = all(theta_eval(theta, indicator(a + 1, None)) == _defined(ZERO)
                for a in range(-8, 9))
    norm = theta_eval(theta, seqcore.constant(1))
    if theta.kind == "weighted":
        positive = all(theta.weight(n) >= 0 for n in range(-64, 65))
    else:
        positive = True
    return {
        "name": theta.label,
        "positive": positive,
        "normalised": norm.defined and norm.value == 1,
        "value_on_constant": norm.to_json(),
        "dilation_invariant": invariant,
        "supported_at_plus_inf": plus,
        "supported_at_minus_inf": minus,
    }


def phi_av_identity_check(theta: Theta, X: Operator) -> dict:
    """Compare phi_theta(X) with phi_theta(D Phi_av mu(X))."""
    lhs = trace_eval(theta, X)
    av = phi_av(singular_value_function(X))
    rhs = trace_eval(theta, CommutativeOp(pietsch_D(av)))
    return {"lhs": lhs, "rhs": rhs, "equal": lhs.close_to(rhs), "phi_av": av}

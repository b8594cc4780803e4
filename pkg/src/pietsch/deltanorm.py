"""Symmetric quasi-norms measured through singular value functions.

``Lp(p)`` is ``(int |f|**p)**(1/p)`` for ``p >= 1`` and the p-integral
``int |f|**p`` (a Delta-norm, subadditive) for ``p < 1``.  Sequences are
measured through ``D``: ``||x|| = ||D x||``, computed here directly from
``sum |x_n|**p 2**n`` with closed-form geometric tails.

Values are exact Fractions when the arithmetic stays rational (integer p,
perfect powers) and floats computed with mpmath otherwise.  Divergence gives
``INF``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
import mpmath

from ._rational import INF, ONE, ZERO, exact_root, fmt_any, pow2, q
from .opmodel import CommutativeOp, BlockOp, phi_op, singular_value_function
from .seqcore import DyadicSequence, shift
from . import opmodel, seqcore, stepfn
from .stepfn import StepFunction, dilate
from .transfer import pietsch_D

__all__ = [
    "DeltaNorm",
    "Lp",
    "Linf",
    "SumNorm",
    "p_integral",
    "norm_eval",
    "stable_norm",
    "constants_report",
]

DPS = 50


@dataclass(frozen=True)
class DeltaNorm:
    kind: str  # "lp", "linf", "sum"
    p: Fraction = ONE
    parts: tuple = ()

    @property
    def constant(self) -> Fraction:
        """Quasi-triangle constant C in ||f+g|| <= C(||f|| + ||g||)."""
        if self.kind == "sum":
            return max(N.constant for N in self.parts)
        return ONE

    @property
    def name(self) -> str:
        if self.kind == "lp":
            return f"L{self.p}"
        if self.kind == "linf":
            return "Linf"
        return "+".join(N.name for N in self.parts)


def Lp(p) -> DeltaNorm:
    p = q(p)
    if p <= 0:
        raise ValueError("p must be positive")
    return DeltaNorm("lp", p)


Linf = DeltaNorm("linf")


def SumNorm(*norms: DeltaNorm) -> DeltaNorm:
    return DeltaNorm("sum", ONE, tuple(norms))


def _mp(v: Fraction):
    return mpmath.mpf(v.numerator) / v.denominator


def _power(v: Fraction, p: Fraction):
    """|v|**p, exact when possible."""
    v = abs(v)
    if p.denominator == 1:
        return v ** p.numerator
    root = exact_root(v, p.denominator)
    if root is not None:
        return root ** p.numerator
    return _mp(v) ** _mp(p)


def _times(a, b):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a * b
    a = _mp(a) if isinstance(a, Fraction) else a
    b = _mp(b) if isinstance(b, Fraction) else b
    return a * b


def _geom(c, ratio):
    """sum_{m >= 1} c ratio**m, INF if ratio >= 1 and c != 0."""
    if c == 0:
        return ZERO
    if ratio >= 1:
        return INF
    return _times(c, ratio / (1 - ratio))


def _finish(total):
    """Collapse a sum of Fractions and mpf into a Fraction or float."""
    if total == INF:
        return INF
    if isinstance(total, Fraction):
        return total
    return float(total)


def _accumulate(terms):
    exact, approx = ZERO, None
    for t in terms:
        if t == INF:
            return INF
        if isinstance(t, Fraction):
            exact += t
        else:
            approx = t if approx is None else approx + t
    if approx is None:
        return exact
    return approx + _mp(exact)


def p_integral(f: StepFunction, p) -> object:
    """int_0^inf |f|**p dt with closed-form tails."""
    p = q(p)
    with mpmath.workdps(DPS):
        terms = [_times(hi - lo, _power(v, p)) for lo, hi, v in f.pieces() if v != 0]
        if f.v_inf != 0:
            return INF
        zt = f.zero_tail
        if zt is not None and zt.c != 0:
            # cell n < lo has value c r**(lo-n) and length 2**n:
            # sum_{m>=1} |c|**p 2**(lo-m) r**(p m)
            terms.append(_geom(_times(_power(zt.c, p), pow2(zt.lo)),
                               _times(_power(zt.r, p), Fraction(1, 2))))
        ft = f.far_tail
        if ft is not None and ft.c != 0:
            # cell n >= start: |c|**p r**(p(n-start+1)) 2**n, m = n-start+1 >= 1
            terms.append(_geom(_times(_power(ft.c, p), pow2(ft.start - 1)),
                               _times(_power(ft.r, p), Fraction(2))))
        return _finish(_accumulate(terms))


def _seq_p_sum(x: DyadicSequence, p: Fraction):
    """sum_n |x_n|**p 2**n."""
    with mpmath.workdps(DPS):
        terms = [_times(_power(v, p), pow2(n)) for n, v in x.items() if v != 0]
        if not x.left.is_zero:
            terms.append(_geom(_times(_power(x.left.c, p), pow2(x.lo)),
                               _times(_power(x.left.r, p), Fraction(1, 2))))
        if not x.right.is_zero:
            terms.append(_geom(_times(_power(x.right.c, p), pow2(x.hi)),
                               _times(_power(x.right.r, p), Fraction(2))))
        return _finish(_accumulate(terms))


def _root(v, p: Fraction):
    """v**(1/p) for p >= 1."""
    if v == INF or p == 1:
        return v
    if isinstance(v, Fraction):
        r = exact_root(v ** p.denominator, p.numerator)
        if r is not None:
            return r
        with mpmath.workdps(DPS):
            return float(_mp(v) ** (1 / _mp(p)))
    with mpmath.workdps(DPS):
        return float(mpmath.mpf(v) ** (1 / _mp(p)))


def _sup_function(f: StepFunction):
    if f.zero_tail is not None and f.zero_tail.c != 0 and f.zero_tail.r > 1:
        return INF
    cands = [abs(v) for v in f.values] + [abs(f.v_inf)]
    if f.zero_tail is not None:
        cands.append(abs(f.zero_tail.cell(f.zero_tail.lo - 1)))
    if f.far_tail is not None:
        cands.append(abs(f.far_tail.cell(f.far_tail.start)))
    return max(cands)


def _sup_sequence(x: DyadicSequence):
    if not x.left.is_zero and x.left.r > 1:
        return INF
    cands = [abs(v) for v in x.values]
    cands += [abs(x.left.at(1)), abs(x.right.at(1))]
    return max(cands)


def _as_function(obj) -> StepFunction:
    if isinstance(obj, StepFunction):
        return obj
    if isinstance(obj, (BlockOp, CommutativeOp)):
        return singular_value_function(obj) if isinstance(obj, BlockOp) else obj.f
    raise TypeError(f"cannot measure {type(obj).__name__}")


def norm_eval(N: DeltaNorm, obj) -> object:
    """||obj|| for a step function, operator (through mu) or sequence (through D)."""
    if N.kind == "sum":
        vals = [norm_eval(M, obj) for M in N.parts]
        return _finish(_accumulate(vals)) if INF not in vals else INF
    if isinstance(obj, DyadicSequence):
        if N.kind == "linf":
            return _sup_sequence(obj)
        s = _seq_p_sum(obj, N.p)
        return s if N.p < 1 else _root(s, N.p)
    f = _as_function(obj)
    if N.kind == "linf":
        return _sup_function(f)
    s = p_integral(f, N.p)
    return s if N.p < 1 else _root(s, N.p)


def stable_norm(N: DeltaNorm, X) -> object:
    """||D Phi X||, which lies between ||X|| and 2C ||X||."""
    if isinstance(X, StepFunction):
        from .transfer import phi_sample

        return norm_eval(N, pietsch_D(phi_sample(X)))
    return norm_eval(N, pietsch_D(phi_op(X)))


# -- constants audit -------------------------------------------------------


def _ratio(num, den):
    if den == 0 or den == INF or num == INF:
        return None
    return float(num) / float(den)


def _random_function(rng: random.Random) -> StepFunction:
    from . import sampling

    k = rng.randint(1, 5)
    bps = sorted({Fraction(rng.randint(1, 32), 4) for _ in range(k)})
    return stepfn.from_pieces([ZERO] + bps, [sampling.rational(rng, 4) for _ in bps])


def constants_report(N: DeltaNorm, trials: int = 100, seed: int = 0) -> dict:
    """Worst observed ratios for the quasi-triangle, shift and dilation bounds."""
    from . import sampling

    rng = random.Random(seed)
    C = N.constant
    worst = {"triangle_function": 0.0, "triangle_sequence": 0.0, "triangle_operator": 0.0,
             "shift": 0.0, "dilation": 0.0}
    for _ in range(trials):
        f, g = _random_function(rng), _random_function(rng)
        r = _ratio(norm_eval(N, stepfn.add(f, g)),
                   _accumulate([norm_eval(N, f), norm_eval(N, g)]))
        if r is not None:
            worst["triangle_function"] = max(worst["triangle_function"], r)
        x = sampling.sequence(rng, 8, tails=False)
        y = sampling.sequence(rng, 8, tails=False)
        r = _ratio(norm_eval(N, seqcore.add(x, y)),
                   _accumulate([norm_eval(N, x), norm_eval(N, y)]))
        if r is not None:
            worst["triangle_sequence"] = max(worst["triangle_sequence"], r)
        X = opmodel.diagonal_op(sampling.diagonal(rng, 5, nonneg=False))
        Y = opmodel.diagonal_op([sampling.rational(rng, 4) for _ in X.mats[0]])
        r = _ratio(norm_eval(N, opmodel.add(X, Y)),
                   _accumulate([norm_eval(N, X), norm_eval(N, Y)]))
        if r is not None:
            worst["triangle_operator"] = max(worst["triangle_operator"], r)
        r = _ratio(norm_eval(N, shift(x, 1)), norm_eval(N, x))
        if r is not None:
            worst["shift"] = max(worst["shift"], r)
        for k in range(1, 5):
            r = _ratio(norm_eval(N, dilate(f, pow2(k))), norm_eval(N, f))
            if r is not None:
                # normalise by the claimed bound (2C)**k
                worst["dilation"] = max(worst["dilation"], r / float(2 * C) ** k)
    bounds = {"triangle_function": float(C), "triangle_sequence": float(C),
              "triangle_operator": float(C), "shift": float(2 * C), "dilation": 1.0}
    eps = 1e-12
    return {
        "norm": N.name,
        "C": fmt_any(C),
        "trials": trials,
        "worst": worst,
        "bounds": bounds,
        "holds": all(worst[k] <= bounds[k] + eps for k in worst),
    }

"""Dyadic representations of operators.

A representation writes ``X = sum_k X_k`` with ``tau(s(X_k)) <= 2**k``.  Its
coefficient sequence is ``a_k = 2**-k tau(X_k)`` and its residual sequence is
``r_n = ||X - sum_{k<=n} X_k||``.

Block operators are cut along the spectral projections
``P_k = E^{|X|}(mu(2**k), inf)`` of ``|X|``: ``X_k = X (P_{k-1} - P_{k-2})``.
Commutative operators ``f`` are cut along dyadic cells: with offset ``s``,
``X_k = f chi_[2**(k-s), 2**(k-s+1))``.
"""

from __future__ import annotations

import random

import numpy as np
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ._rational import ZERO, ceil_log2, floor_log2, fmt_any, pow2, q
from .exceptions import PietschError
from .opmodel import (
    EPS,
    BlockOp,
    CommutativeOp,
    Operator,
    add,
    compress,
    scale,
    singular_value_function,
    spectral_projection,
    support_projection,
    trace,
    uniform_norm,
    zero_like,
)
from .seqcore import DyadicSequence, Tail, ordering_numbers, pointwise_le, shift
from . import seqcore, stepfn
from .stepfn import StepFunction, _far, _high_level, _low_level, _near, evaluate, from_pieces

__all__ = [
    "DyadicRep",
    "decompose",
    "validate",
    "sum_reps",
    "coefficient_sequence",
    "regroup",
    "shifted",
    "difference_witness",
    "cell_averages",
    "cell_sups",
    "cell_restriction",
    "rep_from_json",
]


@dataclass(eq=False)
class DyadicRep:
    subject: Operator
    kind: str  # "block" or "commutative"
    residuals: DyadicSequence
    coefficients: DyadicSequence
    parts: dict = field(default_factory=dict)  # block: k -> BlockOp
    offset: int = 0  # commutative: X_k lives on cell k - offset

    def part(self, k: int) -> Operator:
        if self.kind == "block":
            return self.parts.get(k) or zero_like(self.subject)
        return CommutativeOp(cell_restriction(self.subject.f, k - self.offset))

    def indices(self) -> list:
        if self.kind == "block":
            return sorted(self.parts)
        raise PietschError("a commutative representation has infinitely many parts")

    def to_json(self) -> dict:
        data = {
            "kind": self.kind,
            "residuals": self.residuals.to_json(),
            "coefficients": self.coefficients.to_json(),
        }
        if self.kind == "block":
            data["parts"] = {str(k): P.to_json() for k, P in sorted(self.parts.items())}
            data["support_traces"] = {
                str(k): fmt_any(support_projection(P).trace)
                for k, P in sorted(self.parts.items())
            }
        else:
            data["offset"] = self.offset
        return data


# -- commutative cells -----------------------------------------------------


def cell_restriction(f: StepFunction, n: int) -> StepFunction:
    """f chi_[2**n, 2**(n+1))."""
    a, b = pow2(n), pow2(n + 1)
    pts = [a] + [t for t in f.breakpoints if a < t < b] + [b]
    vals = [evaluate(f, t) for t in pts[:-1]]
    return from_pieces([ZERO] + pts, [ZERO] + vals)


def _cell_frame(f: StepFunction):
    lo = _low_level(f)
    hi = max(_high_level(f), lo + 1)
    return lo, hi


def cell_averages(f: StepFunction) -> DyadicSequence:
    """{2**-n int_{2**n}^{2**(n+1)} f} with closed-form tails."""
    lo, hi = _cell_frame(f)
    vals = [stepfn.integrate(f, pow2(n), pow2(n + 1)) / pow2(n) for n in range(lo, hi)]
    return DyadicSequence(lo, tuple(vals), _near(f, lo), _far(f, hi))


def cell_sups(f: StepFunction) -> DyadicSequence:
    """{sup |f| over [2**n, 2**(n+1))}."""
    lo, hi = _cell_frame(f)
    g = stepfn.absolute(f)
    vals = []
    for n in range(lo, hi):
        a, b = pow2(n), pow2(n + 1)
        pts = [a] + [t for t in g.breakpoints if a < t < b]
        vals.append(max(evaluate(g, t) for t in pts))
    return DyadicSequence(lo, tuple(vals), _near(g, lo), _far(g, hi))


# -- decomposition ---------------------------------------------------------


def _residual_sequence(X: BlockOp, parts: dict) -> DyadicSequence:
    """r_n = ||X - sum_{k<=n} X_k|| on the window; ||X|| below, 0 above."""
    if not parts:
        return DyadicSequence(0, (ZERO,))
    ks = sorted(parts)
    lo, hi = ks[0] - 1, ks[-1]
    vals, acc = [], zero_like(X)
    top = uniform_norm(X)
    for n in range(lo, hi + 1):
        if n in parts:
            acc = add(acc, parts[n])
        vals.append(_norm(add(X, scale(-1, acc)), top, X.exact))
    return DyadicSequence(lo, tuple(vals), Tail.const(top))


def _norm(Z: BlockOp, scale_ref, exact: bool) -> Fraction:
    """Operator norm; in the numeric tier round-off below EPS*||X|| is 0."""
    if exact:
        return uniform_norm(Z)
    n = max(float(np.linalg.norm(M, 2)) for M in Z.numpy_blocks())
    return ZERO if n < EPS * max(1.0, float(scale_ref)) else Fraction(n)


def _coefficients(parts: dict) -> DyadicSequence:
    if not parts:
        return DyadicSequence(0, (ZERO,))
    ks = sorted(parts)
    vals = []
    for k in range(ks[0], ks[-1] + 1):
        t = trace(parts[k]) if k in parts else ZERO
        if isinstance(t, complex):
            if abs(t.imag) > EPS:
                raise PietschError("coefficient sequences are real; trace has an imaginary part")
            t = Fraction(t.real)
        vals.append(t / pow2(k))
    return DyadicSequence(ks[0], tuple(vals))


def _block_levels(X: BlockOp) -> range:
    """Indices k for which P_k can differ from 0 and from s(X)."""
    total = X.algebra.trace_identity
    wmin = min(w for _, w in X.algebra.blocks)
    return range(floor_log2(wmin) - 1, ceil_log2(total) + 2)


def _decompose_block(X: BlockOp) -> DyadicRep:
    mu = singular_value_function(X)
    ks = _block_levels(X)
    # thresholds are singular values themselves, compared exactly (tolerance 0)
    proj = {k: spectral_projection(X, evaluate(mu, pow2(k)), tolerance=0) for k in ks}
    if not proj[ks.start].is_zero():
        raise PietschError("level range does not reach P_k = 0")  # pragma: no cover

    def P(k):
        if k < ks.start:
            return None
        return proj[min(k, ks.stop - 1)]

    parts = {}
    for k in range(ks.start + 1, ks.stop + 2):
        hi, lo = P(k - 1), P(k - 2)
        if hi is None or hi.trace == (lo.trace if lo is not None else 0):
            continue
        parts[k] = compress(X, hi, lo)
    return DyadicRep(X, "block", _residual_sequence(X, parts), _coefficients(parts), parts)


def _commutative_rep(X: CommutativeOp, offset: int) -> DyadicRep:
    f = X.f
    coeff = cell_averages(f)
    # a_k = 2**-k int_{cell k-s} f = 2**-s (cell average at k - s)
    coeff = (Fraction(1, 2) ** offset) * shift(coeff, offset)
    # r_n = sup |f| on [2**(n-s+1), inf) = o_{n-s+1}(cell sups)
    res = shift(ordering_numbers(cell_sups(f)), offset - 1)
    return DyadicRep(X, "commutative", res, coeff, offset=offset)


def decompose(X: Operator, offset: int = 0) -> DyadicRep:
    """The canonical dyadic representation of X."""
    if isinstance(X, CommutativeOp):
        if offset < 0:
            raise ValueError("cell offset must be >= 0")
        return _commutative_rep(X, offset)
    if offset:
        return shifted(_decompose_block(X), offset)
    return _decompose_block(X)


def coefficient_sequence(rep: DyadicRep) -> DyadicSequence:
    return rep.coefficients


def _block_rep(X: BlockOp, parts: dict) -> DyadicRep:
    parts = {k: P for k, P in parts.items() if not P.is_zero()}
    return DyadicRep(X, "block", _residual_sequence(X, parts), _coefficients(parts), parts)


def shifted(rep: DyadicRep, j: int = 1) -> DyadicRep:
    """X'_k = X_{k-j}, again a representation for j >= 0."""
    if j < 0:
        raise ValueError("parts may only move to larger k")
    if rep.kind == "commutative":
        return _commutative_rep(rep.subject, rep.offset + j)
    return _block_rep(rep.subject, {k + j: P for k, P in rep.parts.items()})


def _columns(P: BlockOp):
    """Nonzero columns of an exact part as (block, column, weight)."""
    out = []
    for j, ((d, w), m) in enumerate(zip(P.algebra.blocks, P.mats)):
        for c in range(d):
            if any(m[i][c] != (ZERO, ZERO) for i in range(d)):
                out.append((j, c, w))
    return out


def _restrict_columns(X: BlockOp, cols: set) -> BlockOp:
    mats = tuple(
        tuple(tuple(z if (j, c) in cols else (ZERO, ZERO) for c, z in enumerate(row))
              for row in m)
        for j, m in enumerate(X.mats)
    )
    return BlockOp(X.algebra, mats)


def regroup(rep: DyadicRep, rng: random.Random) -> DyadicRep:
    """A different representation obtained by moving atoms to later parts.

    Works on exact block representations, whose parts are column
    restrictions of X.  Each atom moves up by 0-2 levels and then to the
    first part with room for it; at least one atom always moves.
    """
    if rep.kind != "block":
        return shifted(rep, 1)
    X = rep.subject
    if not X.exact or not all(P.exact for P in rep.parts.values()):
        return shifted(rep, 1)
    atoms = [(k, a) for k in sorted(rep.parts) for a in _columns(rep.parts[k])]
    if not atoms:
        return rep
    used: dict = {}
    target: dict = {}
    forced = rng.randrange(len(atoms))
    for i, (k, (j, c, w)) in enumerate(atoms):
        k2 = k + rng.choice((0, 0, 1, 2))
        if i == forced and k2 == k:
            k2 += 1
        while used.get(k2, ZERO) + w > pow2(k2):
            k2 += 1
        used[k2] = used.get(k2, ZERO) + w
        target.setdefault(k2, set()).add((j, c))
    parts = {k: _restrict_columns(X, cols) for k, cols in target.items()}
    return _block_rep(X, parts)


def sum_reps(rx: DyadicRep, ry: DyadicRep) -> DyadicRep:
    """A representation of X + Y with parts Z_k = X_{k-1} + Y_{k-1}."""
    if rx.kind != ry.kind:
        raise TypeError("cannot add block and commutative representations")
    Z = add(rx.subject, ry.subject)
    if rx.kind == "commutative":
        if rx.offset != ry.offset:
            raise ValueError("commutative representations must share the cell offset")
        return _commutative_rep(Z, rx.offset + 1)
    parts = {}
    for k in set(rx.parts) | set(ry.parts):
        parts[k + 1] = add(rx.part(k), ry.part(k))
    return _block_rep(Z, parts)


def difference_witness(rx: DyadicRep, ry: DyadicRep) -> DyadicSequence:
    """b_k = 2**-k tau(sum_{n<=k} (X_n - Y_n)) for two reps of one operator.

    The coefficient difference satisfies ``a(X) - a(Y) = b - S_+ b / 2``.
    """
    if rx.kind != "block" or ry.kind != "block":
        raise TypeError("witnesses are built for block representations")
    ks = sorted(set(rx.parts) | set(ry.parts))
    if not ks:
        return DyadicSequence(0, (ZERO,))
    vals, acc = [], ZERO
    for k in range(ks[0], ks[-1] + 1):
        acc += _real(trace(rx.part(k))) - _real(trace(ry.part(k)))
        vals.append(acc / pow2(k))
    return DyadicSequence(ks[0], tuple(vals))


def _real(t) -> Fraction:
    return Fraction(t.real) if isinstance(t, complex) else t


# -- validation ------------------------------------------------------------


def _close(a, b, tol) -> bool:
    return abs(q(a) - q(b)) <= tol


def validate(rep: DyadicRep, probe: Optional[tuple] = None, tolerance: float = EPS) -> dict:
    """Recheck a representation from scratch.

    ``probe = (g, C, k)`` additionally tests ``o(r) <= C o(S_+^k g)``, i.e.
    membership of the residuals in the ideal generated by g.
    """
    failures = []
    X = rep.subject
    tol = Fraction(0) if getattr(X, "exact", True) else Fraction(tolerance)
    if rep.kind == "block":
        total = zero_like(X)
        for k, P in sorted(rep.parts.items()):
            st = support_projection(P).trace
            if st > pow2(k):
                failures.append(f"support of part {k} has trace {fmt_any(st)} > 2^{k}")
            total = add(total, P)
        diff = uniform_norm(add(X, scale(-1, total)))
        if diff > tol:
            failures.append(f"parts do not sum to X (norm of difference {fmt_any(diff)})")
        fresh = _residual_sequence(X, rep.parts)
        coeff = _coefficients(rep.parts)
    else:
        if rep.offset < 0:
            failures.append("cell offset is negative: cells exceed 2^k")
        fresh = _commutative_rep(X, rep.offset).residuals
        coeff = _commutative_rep(X, rep.offset).coefficients
    lo = min(fresh.lo, rep.residuals.lo)
    hi = max(fresh.hi, rep.residuals.hi)
    if any(not _close(fresh.value(n), rep.residuals.value(n), tol) for n in range(lo, hi + 1)) \
            or fresh.left != rep.residuals.left or fresh.right != rep.residuals.right:
        failures.append("stored residuals differ from recomputed residuals")
    if coeff != rep.coefficients:
        failures.append("stored coefficients differ from recomputed coefficients")
    report = {"valid": not failures, "failures": failures}
    if probe is not None:
        g, C, k = probe
        bound = q(C) * ordering_numbers(shift(seqcore.absolute(g), k))
        member = pointwise_le(ordering_numbers(rep.residuals), bound)
        report["probe_member"] = member
    return report


def rep_from_json(data: dict) -> DyadicRep:
    """Rebuild a block representation from ``{"operator", "parts"}``.

    Stored ``residuals`` and ``coefficients`` are kept as given so that
    :func:`validate` can compare them with recomputed values.
    """
    from .opmodel import operator_from_json

    X = operator_from_json(data["operator"])
    if not isinstance(X, BlockOp):
        return decompose(X, int(data.get("offset", 0)))
    parts = {int(k): operator_from_json(v) for k, v in data.get("parts", {}).items()}
    rep = DyadicRep(X, "block", _residual_sequence(X, parts), _coefficients(parts), parts)
    if "residuals" in data:
        rep.residuals = DyadicSequence.from_json(data["residuals"])
    if "coefficients" in data:
        rep.coefficients = DyadicSequence.from_json(data["coefficients"])
    return rep

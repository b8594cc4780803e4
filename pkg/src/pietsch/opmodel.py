"""Finite models of a semifinite algebra with trace.

Two kinds of operator live here:

* :class:`CommutativeOp` wraps a step function on (0, inf) with Lebesgue
  measure as trace;
* :class:`BlockOp` is an element of a weighted direct sum of matrix algebras,
  ``tau(X) = sum_j w_j tr(X_j)``, so a minimal projection in block j is an
  atom of trace ``w_j``.

Matrix entries are stored as exact ``(re, im)`` rational pairs.  Matrices
with at most one nonzero entry per row and column whose moduli are rational
(diagonal matrices in particular) are handled in exact arithmetic; anything
else goes through a floating point SVD with tolerance ``EPS``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from ._rational import INF, ZERO, exact_root, fmt, fmt_any, q
from .exceptions import NotTileable, NumericFailure, TieAtThreshold
from .seqcore import DyadicSequence
from .stepfn import (
    Rearrangement,
    StepFunction,
    decreasing_rearrangement,
    distribution,
    from_pieces,
    integrate,
)
from . import stepfn
from .transfer import phi_sample, pietsch_D

EPS = 1e-9

__all__ = [
    "EPS",
    "BlockAlgebra",
    "BlockOp",
    "CommutativeOp",
    "ProjectionSpec",
    "block_diagonal",
    "diagonal_op",
    "operator_from_json",
    "singular_values",
    "rearrangement",
    "singular_value_function",
    "trace",
    "spectral_projection",
    "support_projection",
    "phi_op",
    "diag_embed",
    "add",
    "scale",
    "uniform_norm",
    "compress",
    "permute",
    "conjugate_by",
]


@dataclass(frozen=True)
class BlockAlgebra:
    """Direct sum of d_j x d_j matrix algebras with trace weights w_j."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple((int(d), q(w)) for d, w in self.blocks)
        if any(d < 1 or w <= 0 for d, w in blocks):
            raise ValueError("block dimensions and weights must be positive")
        object.__setattr__(self, "blocks", blocks)

    @property
    def trace_identity(self) -> Fraction:
        return sum((d * w for d, w in self.blocks), ZERO)

    def to_json(self) -> list:
        return [{"d": d, "w": fmt(w)} for d, w in self.blocks]


def _entry(z) -> tuple:
    if isinstance(z, dict):
        return q(z.get("re", 0)), q(z.get("im", 0))
    if isinstance(z, tuple):
        return q(z[0]), q(z[1])
    if isinstance(z, complex):
        return q(z.real), q(z.imag)
    if isinstance(z, (np.floating, np.integer)):
        return q(z.item()), ZERO
    if isinstance(z, np.complexfloating):
        return q(float(z.real)), q(float(z.imag))
    return q(z), ZERO


def _matrix(rows) -> tuple:
    rows = [list(r) for r in rows] if not isinstance(rows, np.ndarray) else rows.tolist()
    return tuple(tuple(_entry(z) for z in r) for r in rows)


def _to_numpy(mat) -> np.ndarray:
    """Real array when every imaginary part vanishes, complex otherwise."""
    if all(im == 0 for row in mat for _, im in row):
        return np.array([[float(re) for re, _ in row] for row in mat], dtype=float)
    return np.array([[complex(float(re), float(im)) for re, im in row] for row in mat],
                    dtype=complex)


def _modulus(z) -> Optional[Fraction]:
    re, im = z
    if im == 0:
        return abs(re)
    if re == 0:
        return abs(im)
    return exact_root(re * re + im * im, 2)


def _monomial_svals(mat):
    """Exact singular system for a matrix with <= 1 nonzero per row/column.

    Returns ``[(sigma, column)]`` (one per column) or None if the matrix is
    not monomial or a modulus is irrational.
    """
    d = len(mat)
    row_used = [False] * d
    out = []
    for j in range(d):
        nz = [i for i in range(d) if mat[i][j] != (ZERO, ZERO)]
        if len(nz) > 1:
            return None
        if nz:
            i = nz[0]
            if row_used[i]:
                return None
            row_used[i] = True
            mod = _modulus(mat[i][j])
            if mod is None:
                return None
            out.append((mod, j))
        else:
            out.append((ZERO, j))
    return out


@dataclass(frozen=True, eq=False)
class BlockOp:
    algebra: BlockAlgebra
    mats: tuple

    def __post_init__(self):
        mats = tuple(_matrix(m) for m in self.mats)
        if len(mats) != len(self.algebra.blocks):
            raise ValueError("one matrix per block is required")
        for (d, _), m in zip(self.algebra.blocks, mats):
            if len(m) != d or any(len(r) != d for r in m):
                raise ValueError(f"block matrix must be {d}x{d}")
        object.__setattr__(self, "mats", mats)

    @property
    def exact(self) -> bool:
        return all(_monomial_svals(m) is not None for m in self.mats)

    def numpy_blocks(self) -> list:
        return [_to_numpy(m) for m in self.mats]

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(-1, other))

    def is_zero(self) -> bool:
        return all(z == (ZERO, ZERO) for m in self.mats for r in m for z in r)

    def to_json(self) -> dict:
        return {
            "kind": "block",
            "blocks": [
                {
                    "d": d,
                    "w": fmt(w),
                    "matrix": [[{"re": fmt(re), "im": fmt(im)} for re, im in row]
                               for row in m],
                }
                for (d, w), m in zip(self.algebra.blocks, self.mats)
            ],
        }


@dataclass(frozen=True, eq=False)
class CommutativeOp:
    f: StepFunction

    @property
    def exact(self) -> bool:
        return True

    def __add__(self, other):
        return add(self, other)

    def to_json(self) -> dict:
        return {"kind": "commutative", "f": self.f.to_json()}


Operator = Union[BlockOp, CommutativeOp]


def operator_from_json(data: dict) -> Operator:
    if data.get("kind") == "commutative":
        return CommutativeOp(StepFunction.from_json(data["f"]))
    if data.get("kind") != "block":
        raise ValueError("operator kind must be 'block' or 'commutative'")
    blocks = data["blocks"]
    alg = BlockAlgebra(tuple((b["d"], q(b["w"])) for b in blocks))
    return BlockOp(alg, tuple(b["matrix"] for b in blocks))


def block_diagonal(*blocks) -> BlockOp:
    """Build from ``(weight, diagonal_or_matrix)`` pairs.

    A flat list is read as a diagonal, a nested list as a full matrix.
    """
    shape, mats = [], []
    for w, m in blocks:
        m = list(m)
        if m and not isinstance(m[0], (list, tuple, np.ndarray)):
            d = len(m)
            m = [[m[i] if i == j else 0 for j in range(d)] for i in range(d)]
        shape.append((len(m), q(w)))
        mats.append(m)
    return BlockOp(BlockAlgebra(tuple(shape)), tuple(mats))


def diagonal_op(values: Sequence, weight=1) -> BlockOp:
    return block_diagonal((weight, list(values)))


# -- singular values -------------------------------------------------------


def _block_singular_system(X: BlockOp):
    """Per block: ``(exact, [(sigma, ...)], svd)``.

    exact blocks give ``[(sigma, column)]``; numeric blocks give the numpy SVD
    ``(U, s, Vh)`` with s descending.
    """
    out = []
    for m in X.mats:
        mono = _monomial_svals(m)
        if mono is not None:
            out.append((True, mono, None))
            continue
        try:
            U, s, Vh = np.linalg.svd(_to_numpy(m))
        except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
            raise NumericFailure(str(exc)) from exc
        s = np.where(s < EPS, 0.0, s)
        out.append((False, list(s), (U, s, Vh)))
    return out


def singular_values(X: BlockOp) -> list:
    """``[(sigma, weight)]`` over all blocks; sigma is exact when possible."""
    pairs = []
    for (d, w), (exact, sv, _) in zip(X.algebra.blocks, _block_singular_system(X)):
        if exact:
            pairs.extend((s, w) for s, _ in sv)
        else:
            pairs.extend((Fraction(float(s)), w) for s in sv)
    return pairs


def _mu_from_pairs(pairs) -> StepFunction:
    pairs = sorted(((s, w) for s, w in pairs if s > 0), key=lambda p: -p[0])
    bps, vals, t = [ZERO], [], ZERO
    for s, w in pairs:
        t += w
        bps.append(t)
        vals.append(s)
    return from_pieces(bps, vals)


def singular_value_function(X: Operator) -> StepFunction:
    """mu(X): pieces of length w_j per singular value, or f* for functions."""
    if isinstance(X, CommutativeOp):
        return decreasing_rearrangement(X.f)
    return _mu_from_pairs(singular_values(X))


def rearrangement(X: Operator) -> Rearrangement:
    """Lazy mu(X); works even when mu(X) is not a finite StepFunction."""
    if isinstance(X, CommutativeOp):
        return Rearrangement(X.f)
    return Rearrangement(singular_value_function(X))


def uniform_norm(X: Operator):
    """||X|| = mu(0+, X); ``INF`` for a zero tail growing toward 0."""
    if isinstance(X, CommutativeOp):
        rear = Rearrangement(X.f)
        if rear.top is not None:
            return INF
        first = next(rear.levels(), None)
        return max(rear.V, first[0] if first else ZERO)
    return max((s for s, _ in singular_values(X)), default=ZERO)


# -- trace -----------------------------------------------------------------


def trace(X: Operator):
    """tau(X); a Fraction when the imaginary part vanishes, else a complex."""
    if isinstance(X, CommutativeOp):
        return integrate(X.f, 0, INF)
    re, im = ZERO, ZERO
    for (d, w), m in zip(X.algebra.blocks, X.mats):
        re += w * sum((m[i][i][0] for i in range(d)), ZERO)
        im += w * sum((m[i][i][1] for i in range(d)), ZERO)
    if im == 0:
        return re
    return complex(float(re), float(im))


# -- algebra ---------------------------------------------------------------


def _check_same(X: BlockOp, Y: BlockOp):
    if X.algebra != Y.algebra:
        raise ValueError("operators live in different block algebras")


def add(X: Operator, Y: Operator) -> Operator:
    if isinstance(X, CommutativeOp) and isinstance(Y, CommutativeOp):
        return CommutativeOp(stepfn.add(X.f, Y.f))
    if isinstance(X, BlockOp) and isinstance(Y, BlockOp):
        _check_same(X, Y)
        mats = tuple(
            tuple(tuple((a[0] + b[0], a[1] + b[1]) for a, b in zip(ra, rb))
                  for ra, rb in zip(ma, mb))
            for ma, mb in zip(X.mats, Y.mats)
        )
        return BlockOp(X.algebra, mats)
    raise TypeError("cannot add a commutative and a block operator")


def scale(alpha, X: Operator) -> Operator:
    alpha = q(alpha)
    if isinstance(X, CommutativeOp):
        return CommutativeOp(stepfn.scale(alpha, X.f))
    mats = tuple(tuple(tuple((alpha * re, alpha * im) for re, im in r) for r in m)
                 for m in X.mats)
    return BlockOp(X.algebra, mats)


def zero_like(X: Operator) -> Operator:
    return scale(0, X)


def permute(X: BlockOp, perms: Sequence[Sequence[int]]) -> BlockOp:
    """U X U* for permutation matrices U (exact): entry (i, j) moves to (p[i], p[j])."""
    mats = []
    for m, p in zip(X.mats, perms):
        d = len(m)
        out = [[(ZERO, ZERO)] * d for _ in range(d)]
        for i in range(d):
            for j in range(d):
                out[p[i]][p[j]] = m[i][j]
        mats.append(out)
    return BlockOp(X.algebra, tuple(mats))


def conjugate_by(X: BlockOp, unitaries: Sequence[np.ndarray]) -> BlockOp:
    """U X U* blockwise (numeric tier)."""
    mats = [U @ M @ U.conj().T for U, M in zip(unitaries, X.numpy_blocks())]
    return BlockOp(X.algebra, tuple(mats))


# -- projections -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ProjectionSpec:
    """A projection in the model.

    Block: per block either a tuple of selected basis columns (exact tier) or
    an orthonormal matrix whose columns span the range (numeric tier).
    Commutative: the indicator function of the selected set.
    """

    kind: str
    trace: Fraction
    selections: tuple = ()
    indicator: Optional[StepFunction] = None

    def is_zero(self) -> bool:
        return self.trace == 0

    def block_matrix(self, j: int, d: int) -> np.ndarray:
        sel = self.selections[j]
        if isinstance(sel, tuple):
            P = np.zeros((d, d))
            for i in sel:
                P[i, i] = 1.0
            return P
        return sel @ sel.conj().T

    def to_json(self) -> dict:
        data = {"kind": self.kind, "trace": fmt_any(self.trace)}
        if self.kind == "block":
            data["rank"] = [len(s) if isinstance(s, tuple) else int(s.shape[1])
                            for s in self.selections]
        else:
            data["indicator"] = self.indicator.to_json()
        return data


def _flag(cond: bool) -> Fraction:
    return Fraction(1) if cond else ZERO


def _level_set(f: StepFunction, s: Fraction) -> StepFunction:
    """Indicator of {|f| > s} for a function without geometric tails."""
    vals = tuple(_flag(abs(v) > s) for v in f.values)
    return StepFunction(None, f.breakpoints, vals, _flag(abs(f.v_inf) > s))


def spectral_projection(X: Operator, s, tolerance: float = EPS) -> ProjectionSpec:
    """E^{|X|}(s, inf), i.e. the singular directions with sigma > s (strict).

    In the numeric tier a singular value within ``tolerance`` of a positive
    threshold raises :class:`TieAtThreshold`; at s = 0 the tolerance is the
    rank cutoff instead.
    """
    s = q(s)
    if s < 0:
        raise ValueError("threshold must be nonnegative")
    if isinstance(X, CommutativeOp):
        ind = _level_set(X.f, s) if X.f.is_tail_free() else None
        return ProjectionSpec("commutative", distribution(X.f, s), (), ind)
    sels, tr = [], ZERO
    for (d, w), (exact, sv, svd) in zip(X.algebra.blocks, _block_singular_system(X)):
        if exact:
            cols = tuple(j for sigma, j in sv if sigma > s)
            sels.append(cols)
            tr += w * len(cols)
            continue
        _, sig, Vh = svd
        fs = float(s)
        if fs > 0 and any(abs(x - fs) < tolerance for x in sig):
            raise TieAtThreshold(f"singular value within {tolerance} of threshold {s}")
        keep = [i for i, x in enumerate(sig) if x > max(fs, tolerance)]
        sels.append(Vh.conj().T[:, keep])
        tr += w * len(keep)
    return ProjectionSpec("block", tr, tuple(sels))


def support_projection(X: Operator, tolerance: float = EPS) -> ProjectionSpec:
    """s(X) = E^{|X|}(0, inf); numeric rank decided at ``tolerance``."""
    return spectral_projection(X, 0, tolerance)


def compress(X: BlockOp, P: ProjectionSpec, Q: Optional[ProjectionSpec] = None) -> BlockOp:
    """X (P - Q), the part of X on the range of P minus that of Q (Q <= P)."""
    mats = []
    for j, ((d, _), m) in enumerate(zip(X.algebra.blocks, X.mats)):
        selP = P.selections[j]
        selQ = Q.selections[j] if Q is not None else ()
        if isinstance(selP, tuple) and isinstance(selQ, tuple):
            keep = set(selP) - set(selQ)
            mats.append(tuple(tuple(z if jj in keep else (ZERO, ZERO)
                                    for jj, z in enumerate(row)) for row in m))
            continue
        proj = P.block_matrix(j, d)
        if Q is not None:
            proj = proj - Q.block_matrix(j, d)
        M = _to_numpy(m) @ proj
        # drop round-off so it is not mistaken for exact structure
        M[np.abs(M) < EPS * max(1.0, float(np.abs(M).max(initial=0.0)))] = 0
        mats.append(M)
    return BlockOp(X.algebra, tuple(mats))


# -- transfer to sequences -------------------------------------------------


def phi_op(X: Operator) -> DyadicSequence:
    """Phi X = {mu(2**n, X)}."""
    if isinstance(X, CommutativeOp):
        return phi_sample(X.f)
    return phi_sample(singular_value_function(X))


def _tile(cells, capacity, weights):
    """Assign atoms to cells; cells is [(n, size)], capacity atoms per block."""
    order = sorted(range(len(cells)), key=lambda i: -cells[i][1])
    assignment = [None] * len(cells)
    remaining = list(capacity)

    def combos(size, j):
        if size == 0:
            yield ()
            return
        if j == len(weights):
            return
        top = min(remaining[j], int(size / weights[j]))
        for c in range(top, -1, -1):
            rest = size - c * weights[j]
            for tail in combos(rest, j + 1):
                yield (c,) + tail

    def solve(k):
        if k == len(order):
            return True
        i = order[k]
        for combo in list(combos(cells[i][1], 0)):
            combo = combo + (0,) * (len(weights) - len(combo))
            for j, c in enumerate(combo):
                remaining[j] -= c
            assignment[i] = combo
            if solve(k + 1):
                return True
            for j, c in enumerate(combo):
                remaining[j] += c
        return False

    if not solve(0):
        return None
    return assignment


def diag_embed(x: DyadicSequence, target: Union[BlockAlgebra, str] = "commutative") -> Operator:
    """The diagonal embedding of x: an operator with mu = (Dx)*.

    The commutative target returns Dx itself.  A block target places x_n on
    atoms whose traces add up to exactly 2**n.
    """
    if target == "commutative" or target is None:
        return CommutativeOp(pietsch_D(x))
    if not isinstance(target, BlockAlgebra):
        raise TypeError("target must be a BlockAlgebra or 'commutative'")
    if not x.is_finitely_supported():
        raise NotTileable("block targets need finitely supported sequences")
    cells = [(n, Fraction(2) ** n) for n, v in x.items() if v != 0]
    weights = [w for _, w in target.blocks]
    capacity = [d for d, _ in target.blocks]
    assignment = _tile(cells, capacity, weights)
    if assignment is None:
        raise NotTileable("dyadic cells cannot be tiled by the atoms of the target")
    diags = [[ZERO] * d for d, _ in target.blocks]
    used = [0] * len(weights)
    for (n, _), combo in zip(cells, assignment):
        for j, c in enumerate(combo):
            for _ in range(c):
                diags[j][used[j]] = x.value(n)
                used[j] += 1
    return block_diagonal(*[(w, dg) for (d, w), dg in zip(target.blocks, diags)])

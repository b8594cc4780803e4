"""Exact dyadic transfer between sequences, step functions and operators."""

from .exceptions import *  # noqa: F401,F403
from .seqcore import DyadicSequence, Tail, ordering_numbers, shift
from .stepfn import StepFunction, decreasing_rearrangement, from_pieces
from .transfer import phi_av, phi_sample, pietsch_D
from .opmodel import (
    BlockAlgebra,
    BlockOp,
    CommutativeOp,
    block_diagonal,
    diag_embed,
    diagonal_op,
    singular_value_function,
    trace,
)
from .dyadic import DyadicRep, decompose, sum_reps, validate
from .majorization import series_majorization_check, uniformly_majorized
from .functionals import (
    LIMIT_MINUS,
    LIMIT_PLUS,
    SUMMATION,
    Theta,
    counterexample_theta,
    theta_eval,
    trace_eval,
)
from .deltanorm import Linf, Lp, SumNorm, norm_eval, stable_norm

__version__ = "0.1.0"

__all__ = [
    "DyadicSequence", "Tail", "ordering_numbers", "shift",
    "StepFunction", "decreasing_rearrangement", "from_pieces",
    "phi_av", "phi_sample", "pietsch_D",
    "BlockAlgebra", "BlockOp", "CommutativeOp", "block_diagonal", "diag_embed",
    "diagonal_op", "singular_value_function", "trace",
    "DyadicRep", "decompose", "sum_reps", "validate",
    "series_majorization_check", "uniformly_majorized",
    "LIMIT_MINUS", "LIMIT_PLUS", "SUMMATION", "Theta", "counterexample_theta",
    "theta_eval", "trace_eval",
    "Linf", "Lp", "SumNorm", "norm_eval", "stable_norm",
]

"""Domain errors raised by the toolkit.

Every class derives from ``PietschError`` (itself a ``ValueError``) so the
CLI can map them to the "domain error" exit code in one place.
"""


class PietschError(ValueError):
    """Base class for all domain errors."""


class IncompatibleTails(PietschError):
    """The pointwise sum of two tails has no single geometric closed form."""


class UnboundedResult(PietschError):
    """A result would leave the class of sequences bounded at +infinity."""


class NotRepresentable(PietschError):
    """The exact result exists but is outside the representable family."""


class NonClosedForm(NotRepresentable):
    """A dyadic sample or average sequence has no eventually geometric tail."""


class NonDyadicDilation(PietschError):
    """Dilation of a geometric-tailed function by a non power of two."""


class NumericFailure(PietschError):
    """The floating point eigensolver failed to converge."""


class TieAtThreshold(PietschError):
    """A floating singular value sits within tolerance of a threshold."""


class NotTileable(PietschError):
    """Dyadic cells cannot be tiled exactly by the available atoms."""


class DivergentIntegral(PietschError):
    """An integral needed by the majorization check is infinite."""


class UnsupportedTail(PietschError):
    """The operation is only implemented for tail-free inputs."""

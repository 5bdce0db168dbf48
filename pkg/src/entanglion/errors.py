"""Exception hierarchy for entanglion.

Every error derives from ``ValueError`` so callers can keep catching ``(ValueError, TypeError)``.
"""


class EntanglionError(ValueError):
    """Base class for all entanglion errors."""


class DimensionError(EntanglionError):
    """Shape mismatch, subsystem index out of range or dimension cap exceeded."""


class NormalizationError(EntanglionError):
    """A state or constructor parameter violates its normalization invariant."""


class BipartitionError(EntanglionError):
    """A cut does not partition the subsystems of a state."""


class IsometryError(EntanglionError):
    """A decomposition matrix is not an isometry."""


class AlphaRangeError(EntanglionError):
    """The power alpha lies outside the range a theorem is stated for."""


class SchemeError(EntanglionError):
    """A weighting scheme was requested with inconsistent parameters."""


class UsageError(EntanglionError):
    """Invalid command-line usage."""

"""Exception hierarchy.

Every domain error carries a short machine-readable ``code`` that the CLI
reports as ``{"error": code, "detail": ...}``.
"""


class Gl2StretchError(Exception):
    code = "error"


class IncomparableFields(Gl2StretchError):
    code = "incomparable_fields"


class NegativeRadicand(Gl2StretchError):
    code = "negative_radicand"


class NoSignChange(Gl2StretchError):
    code = "no_sign_change"


class PrecisionExhausted(Gl2StretchError):
    code = "precision_exhausted"


class InvalidMatrix(Gl2StretchError):
    code = "invalid_matrix"


class NotFullyIrreducible(Gl2StretchError):
    code = "not_fully_irreducible"


class BlockShapeViolation(Gl2StretchError):
    code = "block_shape_violation"


class NotPrimitive(Gl2StretchError):
    code = "not_primitive"


class RadiusTooSmall(Gl2StretchError):
    code = "radius_too_small"


class InternalConsistencyError(Gl2StretchError):
    """Raised when an identity that must hold by construction fails."""

    code = "internal_consistency"

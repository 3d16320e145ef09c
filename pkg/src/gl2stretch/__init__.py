"""Stretch factors of fully irreducible elements of GL2(Z) and of their
Penner lifts to the genus-two handlebody group."""

from .errors import Gl2StretchError
from .exactnum import IntPoly, QuadSurd, RealInterval, compare_reals, surd_compare, surd_normalize
from .gl2core import A1, B1, E_SWAP, R_NEG, IsometryType, Mat2, classify, mu_stretch
from .standardform import CanonicalKey, Kind, Mode, StandardForm, assemble, canonical_key, standard_form

__version__ = "0.1.0"

__all__ = [
    "A1",
    "B1",
    "E_SWAP",
    "R_NEG",
    "CanonicalKey",
    "Gl2StretchError",
    "IntPoly",
    "IsometryType",
    "Kind",
    "Mat2",
    "Mode",
    "QuadSurd",
    "RealInterval",
    "StandardForm",
    "assemble",
    "canonical_key",
    "classify",
    "compare_reals",
    "mu_stretch",
    "standard_form",
    "surd_compare",
    "surd_normalize",
]

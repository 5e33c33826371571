"""Exact verification of Cayley-type identities for determinants, pfaffians and minors."""

from .cayley import (FAMILIES, IdentityCase, VerificationReport, expected_bfunction,
                     factored_bfunction, grassmann_path_check, lemma_check, verify_identity)
from .grassmann import GContext, GElement
from .matrixfun import Matrix, det, pf
from .powers import PowerElement
from .ring import Poly, Ring

__all__ = [
    "FAMILIES", "IdentityCase", "VerificationReport", "expected_bfunction", "factored_bfunction",
    "grassmann_path_check", "lemma_check", "verify_identity", "GContext", "GElement", "Matrix",
    "det", "pf", "PowerElement", "Poly", "Ring",
]
__version__ = "0.1.0"

"""Exact and high-precision verification of trigonometric sum inequalities."""

__version__ = "0.1.0"

from .exact_core import Poly, count_roots, sturm_chain  # noqa: E402
from .trig_sums import FamilyId, TrigSum, build  # noqa: E402
from .verifier import Certificate, certify_positive  # noqa: E402

__all__ = ["Poly", "sturm_chain", "count_roots", "TrigSum", "FamilyId", "build",
           "Certificate", "certify_positive", "__version__"]

"""Exact search, certificates and bounds for monochromatic subset-sum witnesses."""

from .altsum import alt_sum, build_blocks, combine
from .core import FiniteSet, GroundColoring, SumsetWitness, verify_witness
from .exact import SearchProblem, bound_J, compute_J, extremal_certificate, is_witness_free
from .extract import check_certificate, extract_witness

__all__ = [
    "FiniteSet",
    "GroundColoring",
    "SearchProblem",
    "SumsetWitness",
    "alt_sum",
    "bound_J",
    "build_blocks",
    "check_certificate",
    "combine",
    "compute_J",
    "extract_witness",
    "extremal_certificate",
    "is_witness_free",
    "verify_witness",
]

__version__ = "0.1.0"

"""Exact Nichols algebra computations for braided vector spaces over GF(2^k)."""

from .braided import (
    BraidedError, BraidedSpace, Realization, block, block_points, diagonal, jordan, lstr, pale, poseidon,
    restrict, validate_realization,
)
from .field import FieldElement, FieldSpec, auto_k, element_of_order, make_field, smallest_k_containing_order
from .freealg import NcPoly, ad_c, format_poly, parse_poly, skew_derive
from .nichols import GradedBasis, HilbertSeries, compute, is_zero_in_nichols, project, symmetrizer_dim

__version__ = "0.1.0"

__all__ = [
    "BraidedError", "BraidedSpace", "Realization", "block", "block_points", "diagonal", "jordan", "lstr",
    "pale", "poseidon", "restrict", "validate_realization", "FieldElement", "FieldSpec", "auto_k",
    "element_of_order", "make_field", "smallest_k_containing_order", "NcPoly", "ad_c", "format_poly",
    "parse_poly", "skew_derive", "GradedBasis", "HilbertSeries", "compute", "is_zero_in_nichols", "project",
    "symmetrizer_dim",
]

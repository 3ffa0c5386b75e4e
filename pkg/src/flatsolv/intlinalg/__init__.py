"""Exact integer linear algebra."""

from .matrix import IntMatrix, direct_sum, unit_vector
from .normal_forms import (
    FinAbGroup,
    LatticeBasis,
    cokernel,
    complete_to_unimodular,
    det,
    egcd,
    hnf,
    hnf_column,
    image_lattice,
    invariant_factors,
    is_unimodular,
    kernel_lattice,
    rank,
    rank_mod_p,
    rank_q,
    snf,
)
from .poly import IntPoly, PolyParseError, parse_poly, poly_gcd_q
from .spectral import INFINITE, charpoly, matrix_order, minpoly, minpoly_krylov

__all__ = [
    "IntMatrix",
    "IntPoly",
    "FinAbGroup",
    "LatticeBasis",
    "INFINITE",
    "charpoly",
    "cokernel",
    "complete_to_unimodular",
    "det",
    "direct_sum",
    "egcd",
    "hnf",
    "hnf_column",
    "image_lattice",
    "invariant_factors",
    "is_unimodular",
    "kernel_lattice",
    "matrix_order",
    "minpoly",
    "minpoly_krylov",
    "parse_poly",
    "poly_gcd_q",
    "PolyParseError",
    "rank",
    "rank_mod_p",
    "rank_q",
    "snf",
    "unit_vector",
]

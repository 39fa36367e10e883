"""Exact p-adic exponential sums and log-canonical threshold bounds."""

from .poly import (
    HomogeneousDecomposition,
    ParseError,
    Polynomial,
    format_polynomial,
    gradient,
    homogeneous_parts,
    is_reduced_mod,
    order_of_vanishing,
    parse_polynomial,
    reduce_mod,
    taylor_shift,
)

__version__ = "0.1.0"

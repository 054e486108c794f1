"""Exact arithmetic over finite fields: elements, polynomials, dense matrices."""

from .field import Field, FieldElement, field_make, is_prime
from .matrix import (
    Matrix,
    char_poly,
    column_space,
    inverse,
    is_invertible,
    mat_kernel,
    mat_rank,
    min_poly,
    rank_normal_form,
    rref,
    solve,
)
from .poly import Polynomial, poly_factor

__all__ = [
    "Field",
    "FieldElement",
    "Matrix",
    "Polynomial",
    "char_poly",
    "column_space",
    "field_make",
    "inverse",
    "is_invertible",
    "is_prime",
    "mat_kernel",
    "mat_rank",
    "min_poly",
    "poly_factor",
    "rank_normal_form",
    "rref",
    "solve",
]

"""Exact polynomial, algebraic-number and number-field arithmetic."""

from .algebraic import (
    AlgebraicNumber,
    abs_exceeds_one,
    compare_abs,
    compare_abs_products,
    roots_of,
    sort_key,
)
from .factor import factor_rational, is_irreducible
from .fields import FieldElem, NumberField, NumberFieldSpec, embed, field_arith
from .gauss import ComplexBall, QQi, RootBox
from .polys import (
    Poly,
    char_poly,
    companion_matrix,
    composed_product,
    determinant,
    is_squarefree,
    matrix_poly_eval,
    poly_gcd,
    squarefree_decomposition,
    squarefree_part,
)
from .roots import isolate_roots, locate_root

IntPoly = Poly
RatPoly = Poly

__all__ = [
    "AlgebraicNumber",
    "ComplexBall",
    "FieldElem",
    "IntPoly",
    "NumberField",
    "NumberFieldSpec",
    "Poly",
    "QQi",
    "RatPoly",
    "RootBox",
    "abs_exceeds_one",
    "char_poly",
    "companion_matrix",
    "compare_abs",
    "compare_abs_products",
    "composed_product",
    "determinant",
    "embed",
    "factor_rational",
    "field_arith",
    "is_irreducible",
    "is_squarefree",
    "isolate_roots",
    "locate_root",
    "matrix_poly_eval",
    "poly_gcd",
    "roots_of",
    "sort_key",
    "squarefree_decomposition",
    "squarefree_part",
]

"""Exact polynomial arithmetic over Q and flattened number fields."""
from .field import (QQ, NFElement, NumberField, RationalField, cyclotomic_field,
                    cyclotomic_poly, is_zero, radical_cyclotomic_field)
from .groebner import (GroebnerBasis, as_groebner_basis, buchberger, ideal_equal,
                       is_groebner_basis, normal_form, quotient_standard_monomials, reduce,
                       spoly)
from .parse import parse_polynomial, variable_names
from .poly import (MonomialOrder, PolyRing, Polynomial, block_elimination, divides, grlex,
                   lex, parse_order)

__all__ = [
    "QQ", "NFElement", "NumberField", "RationalField", "cyclotomic_field", "cyclotomic_poly",
    "is_zero", "radical_cyclotomic_field", "GroebnerBasis", "as_groebner_basis", "buchberger",
    "ideal_equal", "is_groebner_basis", "normal_form", "quotient_standard_monomials", "reduce",
    "spoly", "parse_polynomial", "variable_names", "MonomialOrder", "PolyRing", "Polynomial",
    "block_elimination", "divides", "grlex", "lex", "parse_order",
]

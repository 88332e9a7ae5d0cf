"""Exact arithmetic in real towers of quadratic and trisection extensions."""

from .extend import (absolute_norm, adjoin_sqrt, adjoin_trisection_root, common_tower, embed,
                     join, norm_polynomial, polynomial_roots_in_field, rational_roots, relative_norm, sqrt, sqrt_in_field, trisect_cos,
                     trisection_roots_in_field, unify)
from .polynomial import RatPolynomial, sturm_count, sturm_real_root_count
from .predicates import (Embedding, conjugate_count, embeddings_of, is_totally_positive,
                         is_totally_real, minimal_polynomial)
from .serialize import (frac_str, number_from_json, number_to_json, parse_rational,
                        to_decimal, tower_from_json, tower_to_json)
from .tower import SQRT, TRISECT, AlgebraicNumber, Step, Tower

Q = AlgebraicNumber.rational

__all__ = [
    "AlgebraicNumber", "absolute_norm", "norm_polynomial", "polynomial_roots_in_field", "Embedding", "Q", "RatPolynomial", "SQRT", "Step", "TRISECT", "Tower",
    "adjoin_sqrt", "adjoin_trisection_root", "common_tower", "conjugate_count", "embed",
    "embeddings_of", "frac_str", "number_from_json", "number_to_json", "parse_rational",
    "to_decimal", "tower_from_json", "tower_to_json", "is_totally_positive", "is_totally_real", "join", "minimal_polynomial",
    "rational_roots", "relative_norm", "sqrt", "sqrt_in_field", "sturm_count",
    "sturm_real_root_count", "trisect_cos", "trisection_roots_in_field", "unify",
]

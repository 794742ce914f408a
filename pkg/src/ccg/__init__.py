"""Compressed commuting graphs of 3x3 matrices over prime fields."""

from ccg.field import FieldElement, Poly, fp_inv, is_prime, poly_is_irreducible, poly_roots
from ccg.matrix import Mat3, Subspace, SubringKey, char_poly, image_kernel, min_poly, subring_key
from ccg.classify import TYPES, classify_type, table1, table2

__all__ = [
    "TYPES",
    "FieldElement",
    "Mat3",
    "Poly",
    "Subspace",
    "SubringKey",
    "char_poly",
    "classify_type",
    "fp_inv",
    "image_kernel",
    "is_prime",
    "min_poly",
    "poly_is_irreducible",
    "poly_roots",
    "subring_key",
    "table1",
    "table2",
]

__version__ = "0.1.0"

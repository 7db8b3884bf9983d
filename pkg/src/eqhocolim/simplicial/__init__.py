"""Truncated simplicial sets, maps, group actions, and bisimplicial sets."""

from .sset import (
    DEFAULT_TOP, GSSet, SimplicialMap, TruncatedSSet,
    boundary_simplex, constant, empty, point, standard_simplex,
)
from .ops import (
    IsoResult, coproduct, coproduct_gsset, descend_action, fixed_subcomplex, is_isomorphism,
    nondegenerate, product, product_gsset, product_map, quotient, restrict_map,
)
from .bisimplicial import BiSSet, diagonal
from .validate import validate_sset

__all__ = [
    "DEFAULT_TOP", "BiSSet", "GSSet", "IsoResult", "SimplicialMap", "TruncatedSSet",
    "boundary_simplex", "constant", "coproduct", "coproduct_gsset", "descend_action", "diagonal",
    "empty", "fixed_subcomplex", "is_isomorphism", "nondegenerate", "point", "product",
    "product_gsset", "product_map", "quotient", "restrict_map", "standard_simplex", "validate_sset",
]

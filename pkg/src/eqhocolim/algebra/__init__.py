"""Finite groups, finite categories, functors and group actions on them."""

from .groups import FinGroup, Subgroup, generated_subgroup, subgroups, validate_group
from .categories import (
    CatFunctor, FinCategory, GCatAction, orbits, product_action, product_category, stabilizer,
)
from .functors import (
    CAT, SSET, FunctorData, GFunctorMorphism, RightGFunctor,
    postcompose_action, precompose_action, restrict_action,
)
from .validate import validate

__all__ = [
    "CAT", "SSET", "CatFunctor", "FinCategory", "FinGroup", "FunctorData", "GCatAction",
    "GFunctorMorphism", "RightGFunctor", "Subgroup", "generated_subgroup", "orbits",
    "postcompose_action", "precompose_action", "product_action", "product_category",
    "restrict_action", "stabilizer", "subgroups", "validate", "validate_group",
]

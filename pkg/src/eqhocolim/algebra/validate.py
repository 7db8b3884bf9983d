"""One entry point that validates any algebraic value."""

from __future__ import annotations

from functools import singledispatch

from ..errors import ValidationReport
from ..simplicial.bisimplicial import BiSSet
from ..simplicial.sset import GSSet, SimplicialMap, TruncatedSSet
from ..simplicial.validate import validate_sset
from .categories import CatFunctor, FinCategory, GCatAction, validate_action, validate_cat_functor, validate_category
from .functors import (
    FunctorData, GFunctorMorphism, RightGFunctor,
    validate_functor_data, validate_morphism, validate_right_g_functor,
)
from .groups import FinGroup, Subgroup, validate_group, validate_subgroup


@singledispatch
def validate(value) -> ValidationReport:
    """Report every violated axiom of ``value``; an empty report means valid."""
    raise TypeError(f"no validator for {type(value).__name__}")


validate.register(FinGroup, validate_group)
validate.register(Subgroup, validate_subgroup)
validate.register(FinCategory, validate_category)
validate.register(GCatAction, validate_action)
validate.register(CatFunctor, validate_cat_functor)
validate.register(FunctorData, validate_functor_data)
validate.register(RightGFunctor, validate_right_g_functor)
validate.register(GFunctorMorphism, validate_morphism)
for _t in (TruncatedSSet, SimplicialMap, GSSet, BiSSet):
    validate.register(_t, validate_sset)

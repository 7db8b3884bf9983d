"""Nerves, comma categories, coends, bar constructions, homotopy colimits,
the Grothendieck construction and the canonical maps between them."""

from .bar import BarResult, bar, bar_bi, bar_ft, bar_map
from .coends import QuotientResult, coend, colim, induce, tensor
from .comma import (
    CommaCategory, comma_over, comma_over_functor, comma_two_sided, comma_two_sided_functor,
    comma_under, comma_under_functor,
)
from .diagrams import (
    constant_functor, hom_bifunctor, hom_profunctor, nerve_of, product_diagram, representable,
    swap_factors, terminal, truncated,
)
from .families import FamilyResult, bar_family_left, bar_family_right, tensor_family_left, tensor_family_right
from .grothendieck import GrothendieckCategory, grothendieck
from .hocolim import hocolim, under_categories, under_nerves
from .maps import (
    CanonicalMap, CanonicalMorphism, assoc, bar_to_hocolim, canonical_map, coend_to_bar, coend_to_bar_ft,
    comma_collapse, prop3a, prop3b, reduction, to_colim, to_nerve,
)
from .nerve import nerve, nerve_map
from .theorems import (
    bar_induced, cofinality_map, hocolim_induced, pushdown, pushdown_functor, pushdown_map, thickening,
)

__all__ = [
    "BarResult", "CanonicalMap", "CanonicalMorphism", "CommaCategory", "FamilyResult",
    "GrothendieckCategory", "QuotientResult", "assoc", "bar", "bar_bi", "bar_family_left",
    "bar_family_right", "bar_ft", "bar_induced", "bar_map", "bar_to_hocolim", "canonical_map", "coend",
    "coend_to_bar", "coend_to_bar_ft", "cofinality_map", "colim", "comma_collapse", "comma_over",
    "comma_over_functor", "comma_two_sided", "comma_two_sided_functor", "comma_under",
    "comma_under_functor", "constant_functor", "grothendieck", "hocolim", "hocolim_induced",
    "hom_bifunctor", "hom_profunctor", "induce", "nerve", "nerve_map", "nerve_of", "product_diagram",
    "prop3a", "prop3b", "pushdown", "pushdown_functor", "pushdown_map", "reduction", "representable",
    "swap_factors", "tensor", "tensor_family_left", "tensor_family_right", "terminal", "thickening",
    "to_colim", "to_nerve", "truncated", "under_categories", "under_nerves",
]

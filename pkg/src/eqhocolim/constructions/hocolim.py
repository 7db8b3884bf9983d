"""Homotopy colimits ``hocolim_C F = F ⊗_C N(-↓C)``.

``X -> N(X↓C)`` is contravariant: ``f: X -> Y`` sends ``(u: Y -> D; chain)``
to ``(u∘f; chain)``.  With this variance the map from the bar construction
``B(F, C, *)`` is a bijection in every degree.
"""

from __future__ import annotations

import weakref

from ..algebra.categories import CatFunctor, GCatAction
from ..algebra.functors import RightGFunctor
from ..simplicial.sset import DEFAULT_TOP
from .comma import comma_under_functor
from .coends import QuotientResult, tensor
from .diagrams import nerve_of, truncated

_UNDER: "weakref.WeakKeyDictionary[GCatAction, dict]" = weakref.WeakKeyDictionary()


def under_categories(action: GCatAction) -> RightGFunctor:
    """``X -> X↓C`` as a category-valued right G-functor on ``C^op``."""
    per = _UNDER.setdefault(action, {})
    if "cat" not in per:
        ident = CatFunctor.identity(action.category)
        per["cat"] = comma_under_functor(ident, action, action)
    return per["cat"]


def under_nerves(action: GCatAction, top: int = DEFAULT_TOP) -> RightGFunctor:
    """``X -> N(X↓C)``, the right G-functor on ``C^op`` used by ``hocolim``."""
    per = _UNDER.setdefault(action, {})
    key = ("nerve", top)
    if key not in per:
        per[key] = nerve_of(under_categories(action), top)
    return per[key]


def hocolim(f: RightGFunctor, top: int | None = None) -> QuotientResult:
    """``F ⊗_C N(-↓C)`` with the coend action.

    A ``top`` below the diagram's own truncation cuts the values down first.
    """
    have = f.functor.values[0].top if f.source.n_objects else top
    top = have if top is None else top
    if have is not None and top > have:
        raise ValueError(f"truncation {top} exceeds the diagram's truncation {have}")
    f = truncated(f, top)
    res = tensor(f, under_nerves(f.action, top))
    res.extra["commas"] = under_categories(f.action).commas
    return res

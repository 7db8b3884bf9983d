"""Comma categories ``d↓F↓d'``, ``c↓S`` and ``S↓c``, and their functoriality.

An object of ``d↓F↓d'`` is a triple ``(u, C, v)`` with ``u: d -> F C`` and
``v: F C -> d'``; one-sided versions put ``None`` in the missing slot.  A
morphism ``(u, C, v) -> (u', C', v')`` is a map ``p: C -> C'`` with
``F(p)∘u = u'`` and ``v'∘F(p) = v``; it is labelled ``(source, p, target)``
by object ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

from ..algebra.categories import CatFunctor, FinCategory, GCatAction, product_action, product_category
from ..algebra.functors import CAT, RightGFunctor


@dataclass(frozen=True, eq=False)
class CommaCategory:
    category: FinCategory
    functor: CatFunctor
    left: int | None
    right: int | None

    @property
    def objects(self) -> tuple:
        return self.category.obj_labels

    @property
    def morphisms(self) -> tuple:
        return self.category.mor_labels

    @cached_property
    def obj_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.category.obj_labels)}

    @cached_property
    def mor_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.category.mor_labels)}

    def initial_objects(self) -> list[int]:
        """Objects with exactly one morphism to every object."""
        cat = self.category
        return [x for x in cat.objects() if all(len(cat.hom(x, y)) == 1 for y in cat.objects())]

    def __repr__(self) -> str:
        return f"CommaCategory({self.left}, {self.right}; {self.category!r})"


def comma_two_sided(functor: CatFunctor, left: int | None, right: int | None) -> CommaCategory:
    """``left↓F↓right``; pass ``None`` to drop a side."""
    src, tgt = functor.source, functor.target
    om, mm = functor.obj_map, functor.mor_map
    objects = []
    for c in src.objects():
        us = tgt.hom(left, om[c]) if left is not None else (None,)
        vs = tgt.hom(om[c], right) if right is not None else (None,)
        objects.extend((u, c, v) for u in us for v in vs)
    index = {o: i for i, o in enumerate(objects)}
    mors = []
    for i, (u, c, v) in enumerate(objects):
        for p in src.out_of(c):
            c2 = src.tgt[p]
            u2 = tgt.compose(mm[p], u) if u is not None else None
            if right is None:
                mors.append((i, p, index[(u2, c2, None)]))
                continue
            for v2 in tgt.hom(om[c2], right):
                if tgt.compose(v2, mm[p]) == v:
                    mors.append((i, p, index[(u2, c2, v2)]))
    mindex = {m: k for k, m in enumerate(mors)}
    comp = {}
    for k2, (s2, q, t2) in enumerate(mors):
        for k1, (s1, p, t1) in enumerate(mors):
            if t1 == s2:
                comp[(k2, k1)] = mindex[(s1, src.compose(q, p), t2)]
    idents = tuple(mindex[(i, src.identities[c], i)] for i, (_u, c, _v) in enumerate(objects))
    cat = FinCategory(
        len(objects),
        tuple(s for s, _p, _t in mors),
        tuple(t for _s, _p, t in mors),
        idents,
        comp,
        tuple(objects),
        tuple(mors),
    )
    return CommaCategory(cat, functor, left, right)


def comma_under(functor: CatFunctor, c: int) -> CommaCategory:
    """``c↓S``: objects ``(D, u: c -> S D)``, labelled ``(u, D, None)``."""
    return comma_two_sided(functor, c, None)


def comma_over(functor: CatFunctor, c: int) -> CommaCategory:
    """``S↓c``: objects ``(D, u: S D -> c)``, labelled ``(None, D, u)``."""
    return comma_two_sided(functor, None, c)


def comma_functor(source: CommaCategory, target: CommaCategory,
                  on_object: Callable[[tuple], tuple], on_morphism: Callable[[int], int]) -> CatFunctor:
    """Functor between comma categories from a rule on triples and on ``p``."""
    tidx, tmor = target.obj_index, target.mor_index
    obj_map = [tidx[on_object(o)] for o in source.objects]
    mor_map = [tmor[(obj_map[s], on_morphism(p), obj_map[t])] for s, p, t in source.morphisms]
    return CatFunctor(source.category, target.category, obj_map, mor_map)


def _require_functor_action(functor: CatFunctor, act_src: GCatAction, act_tgt: GCatAction) -> None:
    functor.require_equivariant(act_src, act_tgt)


def comma_two_sided_functor(functor: CatFunctor, act_src: GCatAction, act_tgt: GCatAction) -> RightGFunctor:
    """``(d, d') -> d↓F↓d'`` on ``D^op × D`` with ``η(u, C, v) = (gu, gC, gv)``.

    A morphism ``(φ, ψ)`` with ``φ: e -> d`` and ``ψ: d' -> e'`` sends
    ``(u, C, v)`` to ``(u∘φ, C, ψ∘v)``.
    """
    _require_functor_action(functor, act_src, act_tgt)
    d = functor.target
    dop = d.opposite()
    base = product_category(dop, d)
    action = product_action(act_tgt.on_opposite(), act_tgt, base)
    _nd, md = d.n_objects, d.n_morphisms
    values = [comma_two_sided(functor, a, b) for a in d.objects() for b in d.objects()]

    def value(x):
        return values[x].category

    def fmap(f, _s, _t):
        phi, psi = divmod(f, md)
        s = values[base.src[f]]
        t = values[base.tgt[f]]
        return comma_functor(s, t, lambda o: (d.compose(o[0], phi), o[1], d.compose(psi, o[2])), lambda p: p)

    def eta(g, x, _s, _t):
        s = values[x]
        t = values[action.obj_perm[g][x]]
        ma, mc = act_tgt.mor_perm[g], act_src.mor_perm[g]
        oc = act_src.obj_perm[g]
        return comma_functor(s, t, lambda o: (ma[o[0]], oc[o[1]], ma[o[2]]), lambda p: mc[p])

    rf = RightGFunctor.build(action, CAT, value, fmap, eta)
    object.__setattr__(rf, "commas", tuple(values))
    return rf


def comma_under_functor(functor: CatFunctor, act_src: GCatAction, act_tgt: GCatAction) -> RightGFunctor:
    """``c -> c↓S``, contravariant in ``c``: a right G-functor on ``C^op``.

    A morphism ``f: c -> c'`` acts by ``(u, D) -> (u∘f, D)``.
    """
    _require_functor_action(functor, act_src, act_tgt)
    cat = functor.target
    values = [comma_under(functor, c) for c in cat.objects()]
    action = act_tgt.on_opposite()
    ma_all, mc_all, oc_all = act_tgt.mor_perm, act_src.mor_perm, act_src.obj_perm

    def fmap(f, _s, _t):
        # f: c -> c' in C is c' -> c in C^op
        return comma_functor(values[cat.tgt[f]], values[cat.src[f]],
                             lambda o: (cat.compose(o[0], f), o[1], None), lambda p: p)

    def eta(g, c, _s, _t):
        ma, mc, oc = ma_all[g], mc_all[g], oc_all[g]
        return comma_functor(values[c], values[action.obj_perm[g][c]],
                             lambda o: (ma[o[0]], oc[o[1]], None), lambda p: mc[p])

    rf = RightGFunctor.build(action, CAT, lambda c: values[c].category, fmap, eta)
    object.__setattr__(rf, "commas", tuple(values))
    return rf


def comma_over_functor(functor: CatFunctor, act_src: GCatAction, act_tgt: GCatAction) -> RightGFunctor:
    """``c -> S↓c``, covariant in ``c``; ``f`` acts by ``(D, u) -> (D, f∘u)``."""
    _require_functor_action(functor, act_src, act_tgt)
    cat = functor.target
    values = [comma_over(functor, c) for c in cat.objects()]
    ma_all, mc_all, oc_all = act_tgt.mor_perm, act_src.mor_perm, act_src.obj_perm

    def fmap(f, _s, _t):
        return comma_functor(values[cat.src[f]], values[cat.tgt[f]],
                             lambda o: (None, o[1], cat.compose(f, o[2])), lambda p: p)

    def eta(g, c, _s, _t):
        ma, mc, oc = ma_all[g], mc_all[g], oc_all[g]
        return comma_functor(values[c], values[act_tgt.obj_perm[g][c]],
                             lambda o: (None, oc[o[1]], ma[o[2]]), lambda p: mc[p])

    rf = RightGFunctor.build(act_tgt, CAT, lambda c: values[c].category, fmap, eta)
    object.__setattr__(rf, "commas", tuple(values))
    return rf

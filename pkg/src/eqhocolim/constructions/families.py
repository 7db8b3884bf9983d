"""Tensor products and bar constructions with a free parameter.

Given ``F`` on ``C`` and ``L`` on ``C^op × P``, ``p -> F ⊗_C L(-, p)`` is a
right G-functor on ``P``; likewise ``p -> B(F, C, L(-, p))``, and the mirrored
versions with the parameter on the left factor.  Each value keeps the
quotient or bar bookkeeping in ``FamilyResult.members`` so that maps out of
the family can be written on representatives.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..algebra.functors import SSET, RightGFunctor
from ..simplicial.sset import INDEX, SimplicialMap
from .bar import BarResult, ProductPair, bar_map, bar_space
from .coends import QuotientResult, tensor_space
from .diagrams import factor_actions, slice_functor


@dataclass(eq=False)
class FamilyResult:
    functor: RightGFunctor
    members: list

    def member(self, p: int):
        return self.members[p]


def _pairs(amap, tmap):
    amap, tmap = np.asarray(amap, dtype=INDEX), np.asarray(tmap, dtype=INDEX)
    return np.repeat(amap, len(tmap)), np.tile(tmap, len(amap))


def _cover_map(src: QuotientResult, tgt: QuotientResult, blocks, block_fn) -> SimplicialMap:
    """Descend ``(X, a, t) -> (X', amap[a], tmap[t])`` where ``block_fn(n, X)``
    returns ``(X', amap, tmap)``."""
    cover_map = []
    for n in range(src.top + 1):
        parts = []
        for x in blocks:
            x2, amap, tmap = block_fn(n, x)
            xs, ts = _pairs(amap, tmap)
            parts.append(tgt.cover.pair_ids(n, x2, xs, ts))
        ids = np.concatenate(parts) if parts else np.zeros(0, dtype=INDEX)
        cover_map.append(tgt.proj.maps[n][ids])
    return src.descend(cover_map, tgt.space)


def _pair_zmap(zl_src: ProductPair, zl_tgt: ProductPair, n, x0, xm, x0t, xmt, amap, tmap):
    nt_src = zl_src.t.value(xm).counts[n]
    nt_tgt = zl_tgt.t.value(xmt).counts[n]
    na = zl_src.f.value(x0).counts[n]
    if na * nt_src == 0:
        return np.zeros(0, dtype=INDEX)
    return np.repeat(np.asarray(amap, dtype=INDEX), nt_src) * nt_tgt + np.tile(np.asarray(tmap, dtype=INDEX), na)


def _ident(k):
    return np.arange(k, dtype=INDEX)


# -- tensor families ----------------------------------------------------------

def tensor_family_right(f: RightGFunctor, l: RightGFunctor) -> FamilyResult:
    """``p -> F ⊗_C L(-, p)`` for ``F`` on ``C`` and ``L`` on ``C^op × P``."""
    cat = f.source
    cop, pcat = l.source.factors
    act_p = factor_actions(l.action)[1]
    np_, mp = pcat.n_objects, pcat.n_morphisms
    members = [tensor_space(f, slice_functor(l, p, first=False)) for p in pcat.objects()]
    objs = list(cat.objects())

    def fmap(pi, _s, _t):
        src, tgt = members[pcat.src[pi]], members[pcat.tgt[pi]]

        def block(n, x):
            k = cop.identities[x] * mp + pi
            return x, _ident(f.value(x).counts[n]), l.map(k).maps[n]
        return _cover_map(src, tgt, objs, block)

    def eta(g, p, _s, _t):
        src, tgt = members[p], members[act_p.obj_perm[g][p]]

        def block(n, x):
            gx = f.action.obj_perm[g][x]
            return gx, f.eta[g][x].maps[n], l.eta[g][x * np_ + p].maps[n]
        return _cover_map(src, tgt, objs, block)

    rf = RightGFunctor.build(act_p, SSET, lambda p: members[p].space, fmap, eta)
    return FamilyResult(rf, members)


def tensor_family_left(k: RightGFunctor, t: RightGFunctor) -> FamilyResult:
    """``p -> K(p, -) ⊗_C T`` for ``K`` on ``P × C`` and ``T`` on ``C^op``."""
    pcat, cat = k.source.factors
    act_p = factor_actions(k.action)[0]
    nc, mc = cat.n_objects, cat.n_morphisms
    members = [tensor_space(slice_functor(k, p, first=True), t) for p in pcat.objects()]
    objs = list(cat.objects())

    def fmap(pi, _s, _t):
        src, tgt = members[pcat.src[pi]], members[pcat.tgt[pi]]

        def block(n, x):
            return x, k.map(pi * mc + cat.identities[x]).maps[n], _ident(t.value(x).counts[n])
        return _cover_map(src, tgt, objs, block)

    def eta(g, p, _s, _t):
        src, tgt = members[p], members[act_p.obj_perm[g][p]]

        def block(n, x):
            gx = t.action.obj_perm[g][x]
            return gx, k.eta[g][p * nc + x].maps[n], t.eta[g][x].maps[n]
        return _cover_map(src, tgt, objs, block)

    rf = RightGFunctor.build(act_p, SSET, lambda p: members[p].space, fmap, eta)
    return FamilyResult(rf, members)


# -- bar families -------------------------------------------------------------

def bar_family_right(f: RightGFunctor, l: RightGFunctor, top: int | None = None) -> FamilyResult:
    """``p -> B(F, C, L(-, p))`` for ``F`` on ``C`` and ``L`` on ``C^op × P``."""
    cat = f.source
    cop, pcat = l.source.factors
    act_p = factor_actions(l.action)[1]
    np_, mp = pcat.n_objects, pcat.n_morphisms
    top = f.value(0).top if top is None else top
    members: list[BarResult] = [
        bar_space(cat, ProductPair(f, slice_functor(l, p, first=False)), top) for p in pcat.objects()
    ]

    def fmap(pi, _s, _t):
        src, tgt = members[pcat.src[pi]], members[pcat.tgt[pi]]
        objs = src.chains.objs

        def zmap(n, c):
            x0, xm = int(objs[n][c, 0]), int(objs[n][c, -1])
            tm = l.map(cop.identities[xm] * mp + pi).maps[n]
            return _pair_zmap(src.zl, tgt.zl, n, x0, xm, x0, xm, _ident(f.value(x0).counts[n]), tm)
        return bar_map(src, tgt, zmap)

    def eta(g, p, _s, _t):
        src, tgt = members[p], members[act_p.obj_perm[g][p]]
        objs = src.chains.objs
        act_c = f.action

        def zmap(n, c):
            x0, xm = int(objs[n][c, 0]), int(objs[n][c, -1])
            gx0, gxm = act_c.obj_perm[g][x0], act_c.obj_perm[g][xm]
            return _pair_zmap(src.zl, tgt.zl, n, x0, xm, gx0, gxm,
                              f.eta[g][x0].maps[n], l.eta[g][xm * np_ + p].maps[n])
        return bar_map(src, tgt, zmap, chain_fn=lambda n: src.chains.act(act_c, g, n))

    rf = RightGFunctor.build(act_p, SSET, lambda p: members[p].space, fmap, eta)
    return FamilyResult(rf, members)


def bar_family_left(k: RightGFunctor, u: RightGFunctor, top: int | None = None) -> FamilyResult:
    """``p -> B(K(p, -), C, U)`` for ``K`` on ``P × C`` and ``U`` on ``C^op``."""
    pcat, cat = k.source.factors
    act_p = factor_actions(k.action)[0]
    nc, mc = cat.n_objects, cat.n_morphisms
    top = u.value(0).top if top is None else top
    members: list[BarResult] = [
        bar_space(cat, ProductPair(slice_functor(k, p, first=True), u), top) for p in pcat.objects()
    ]

    def fmap(pi, _s, _t):
        src, tgt = members[pcat.src[pi]], members[pcat.tgt[pi]]
        objs = src.chains.objs

        def zmap(n, c):
            x0, xm = int(objs[n][c, 0]), int(objs[n][c, -1])
            am = k.map(pi * mc + cat.identities[x0]).maps[n]
            return _pair_zmap(src.zl, tgt.zl, n, x0, xm, x0, xm, am, _ident(u.value(xm).counts[n]))
        return bar_map(src, tgt, zmap)

    def eta(g, p, _s, _t):
        src, tgt = members[p], members[act_p.obj_perm[g][p]]
        objs = src.chains.objs
        act_c = factor_actions(k.action)[1]

        def zmap(n, c):
            x0, xm = int(objs[n][c, 0]), int(objs[n][c, -1])
            gx0, gxm = act_c.obj_perm[g][x0], act_c.obj_perm[g][xm]
            return _pair_zmap(src.zl, tgt.zl, n, x0, xm, gx0, gxm,
                              k.eta[g][p * nc + x0].maps[n], u.eta[g][xm].maps[n])
        return bar_map(src, tgt, zmap, chain_fn=lambda n: src.chains.act(act_c, g, n))

    rf = RightGFunctor.build(act_p, SSET, lambda p: members[p].space, fmap, eta)
    return FamilyResult(rf, members)


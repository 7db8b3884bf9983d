"""The maps whose homotopy-equivalence claims are checked by witness.

* ``bar_induced``: ``ε: Z -> Z'`` gives ``(φ; z) -> (φ; ε(z))`` on bar
  constructions.
* ``hocolim_induced``: ``ε: F -> F'`` gives ``[X, a, t] -> [X, ε(a), t]``.
* ``thickening``: ``F × Δ¹ -> F``, the projection, with ``Δ¹`` acted on trivially.
* ``cofinality_map``: ``B(F∘S, D, *) -> B(F, C, *)``, ``(ψ; a) -> (Sψ; a)``.
* ``pushdown_functor`` and ``pushdown_map``: ``C -> B(F, D, hom(S-, C))`` and
  ``B(S_h F, C, *) -> B(F, D, *)``, ``(φ; (ψ; a, u)) -> (ψ; a)``.
"""

from __future__ import annotations

import numpy as np

from ..algebra.categories import CatFunctor, GCatAction
from ..algebra.functors import SSET, GFunctorMorphism, RightGFunctor, postcompose_action, precompose_action
from ..simplicial.ops import ProductWith, product
from ..simplicial.sset import INDEX, SimplicialMap, TruncatedSSet, standard_simplex
from .bar import bar, bar_ft, bar_map
from .coends import tensor_map
from .diagrams import hom_profunctor, terminal
from .families import FamilyResult, bar_family_right
from .hocolim import hocolim
from .maps import CanonicalMap
from .nerve import nerve_map


def bar_induced(eps: GFunctorMorphism, top: int | None = None) -> CanonicalMap:
    z, z2 = eps.source, eps.target
    top = z.value(0).top if top is None else top
    src, tgt = bar(z, top), bar(z2, top)
    nobj = z.source.factors[0].n_objects
    objs = src.chains.objs

    def zmap(n, c):
        return eps.components[int(objs[n][c, 0]) * nobj + int(objs[n][c, -1])].maps[n]
    m = bar_map(src, tgt, zmap)
    return CanonicalMap("barInduced", m, src.gsset, tgt.gsset, iso_expected=False,
                        extra={"source": src, "target": tgt})


def hocolim_induced(eps: GFunctorMorphism, top: int | None = None) -> CanonicalMap:
    f, f2 = eps.source, eps.target
    src, tgt = hocolim(f, top), hocolim(f2, top)
    m = tensor_map(src, tgt, left=eps)
    return CanonicalMap("hocolimInduced", m, src.gsset, tgt.gsset, iso_expected=False,
                        extra={"source": src, "target": tgt})


def thickening(f: RightGFunctor, k: TruncatedSSet | None = None) -> GFunctorMorphism:
    """The projection ``F × K -> F`` (``K = Δ¹`` by default), ``K`` acted on trivially."""
    top = f.value(0).top
    k = standard_simplex(1, top) if k is None else k
    thick = postcompose_action(ProductWith(k), f, SSET)
    comps = []
    for x in f.source.objects():
        p1 = product(f.value(x), k)[1][0]
        comps.append(SimplicialMap(thick.value(x), f.value(x), p1.maps))
    return GFunctorMorphism(thick, f, tuple(comps))


def cofinality_map(f: RightGFunctor, s: CatFunctor, act_d: GCatAction, top: int | None = None) -> CanonicalMap:
    top = f.value(0).top if top is None else top
    fs = precompose_action(f, s, act_d)
    src = bar_ft(fs, terminal(act_d.on_opposite(), top), top)
    tgt = bar_ft(f, terminal(f.action.on_opposite(), top), top)
    nm = nerve_map(s, top)
    objs = src.chains.objs

    def zmap(n, c):
        return np.arange(fs.value(int(objs[n][c, 0])).counts[n], dtype=INDEX)
    m = bar_map(src, tgt, zmap, chain_fn=lambda n: nm.maps[n], key_fn=lambda n: objs[n][:, 0])
    return CanonicalMap("cofinality", m, src.gsset, tgt.gsset, iso_expected=False,
                        extra={"source": src, "target": tgt})


def pushdown(s: CatFunctor, f: RightGFunctor, act_c: GCatAction, top: int | None = None) -> FamilyResult:
    """``C -> B(F, D, hom(S-, C))`` with its bar bookkeeping."""
    top = f.value(0).top if top is None else top
    l = hom_profunctor(s, CatFunctor.identity(s.target), f.action, act_c, act_c, top)
    return bar_family_right(f, l, top)


def pushdown_functor(s: CatFunctor, f: RightGFunctor, act_c: GCatAction, top: int | None = None) -> RightGFunctor:
    return pushdown(s, f, act_c, top).functor


def pushdown_map(s: CatFunctor, f: RightGFunctor, act_c: GCatAction, top: int | None = None) -> CanonicalMap:
    """``B(S_h F, C, *) -> B(F, D, *)`` forgetting the outer chain and ``u``."""
    top = f.value(0).top if top is None else top
    fam = pushdown(s, f, act_c, top)
    src = bar_ft(fam.functor, terminal(act_c.on_opposite(), top), top)
    tgt = bar_ft(f, terminal(f.action.on_opposite(), top), top)
    ccat = s.target
    maps = []
    for n in range(top + 1):
        total = src.space.counts[n]
        ids = np.arange(total, dtype=INDEX)
        phi = src.chain_of(n, ids).astype(INDEX)
        sidx = ids - src.offsets[n][phi]
        c0 = src.chains.objs[n][phi, 0]
        out = np.full(total, -1, dtype=INDEX)
        for c in ccat.objects():
            sel = np.flatnonzero(c0 == c)
            if len(sel) == 0:
                continue
            member = fam.members[c]
            psi = member.chain_of(n, sidx[sel]).astype(INDEX)
            rem = sidx[sel] - member.offsets[n][psi]
            dn = member.chains.objs[n][psi, -1]
            nh = np.array([len(ccat.hom(s.obj_map[d], c)) for d in s.source.objects()], dtype=INDEX)[dn]
            out[sel] = tgt.ids(n, psi, rem // np.maximum(nh, 1))
        if (out < 0).any():
            raise AssertionError("pushdown map left simplices unassigned")
        maps.append(out)
    m = SimplicialMap(src.space, tgt.space, tuple(maps))
    return CanonicalMap("pushdown", m, src.gsset, tgt.gsset, iso_expected=False,
                        extra={"source": src, "target": tgt, "family": fam})

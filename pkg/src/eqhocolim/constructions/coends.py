"""Colimits, coends and tensor products of diagrams, computed as quotients.

Every construction here starts from a *cover*, a disjoint union of blocks
indexed by the objects of the base category, and identifies simplices along
the generating relations.  The cover keeps its offsets so maps into and out
of the quotient can be written blockwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..algebra.categories import FinCategory, GCatAction
from ..algebra.functors import SSET, GFunctorMorphism, RightGFunctor
from ..algebra.groups import FinGroup, Subgroup
from ..errors import FormatError
from ..simplicial.ops import descend_action, quotient
from ..simplicial.sset import INDEX, GSSet, SimplicialMap, TruncatedSSet

EMPTY = np.zeros(0, dtype=INDEX)


@dataclass(eq=False)
class BlockSpace:
    """A disjoint union of blocks; block ``a`` in degree ``n`` occupies
    ``offsets[n][a] .. offsets[n][a+1]-1``.  For product blocks
    ``widths[n][a]`` is the size of the right factor."""

    space: TruncatedSSet
    offsets: list
    widths: list | None = None

    def ids(self, n: int, a: int, local) -> np.ndarray:
        return self.offsets[n][a] + np.asarray(local, dtype=INDEX)

    def pair_ids(self, n: int, a: int, x, t) -> np.ndarray:
        return self.offsets[n][a] + np.asarray(x, dtype=INDEX) * self.widths[n][a] + np.asarray(t, dtype=INDEX)

    def block_of(self, n: int, s) -> np.ndarray:
        return np.searchsorted(self.offsets[n], np.asarray(s), side="right") - 1

    def decode(self, n: int, s: int) -> tuple:
        a = int(self.block_of(n, s))
        local = int(s - self.offsets[n][a])
        if self.widths is None:
            return a, local
        return (a,) + divmod(local, int(self.widths[n][a]))


def block_sum(blocks: Sequence[TruncatedSSet], top: int) -> BlockSpace:
    offsets = [np.concatenate([[0], np.cumsum([b.counts[n] for b in blocks])]).astype(INDEX) for n in range(top + 1)]
    faces, degens = [()], []
    for n in range(top + 1):
        if n:
            faces.append(tuple(
                np.concatenate([b.faces[n][i] + offsets[n - 1][j] for j, b in enumerate(blocks)] or [EMPTY])
                for i in range(n + 1)))
        degens.append(tuple(
            np.concatenate([b.degens[n][i] + offsets[n + 1][j] for j, b in enumerate(blocks)] or [EMPTY])
            for i in range(n + 1)) if n < top else ())
    space = TruncatedSSet(top, tuple(int(o[-1]) for o in offsets), tuple(faces), tuple(degens))
    return BlockSpace(space, offsets)


def product_block_sum(lefts: Sequence[TruncatedSSet], rights: Sequence[TruncatedSSet], top: int) -> BlockSpace:
    """``⨿_a L_a × R_a`` with ``(x, t)`` stored at ``offset + x*|R_a| + t``."""
    widths = [np.array([r.counts[n] for r in rights], dtype=INDEX) for n in range(top + 1)]
    sizes = [np.array([l.counts[n] for l in lefts], dtype=INDEX) * widths[n] for n in range(top + 1)]
    offsets = [np.concatenate([[0], np.cumsum(s)]).astype(INDEX) for s in sizes]

    def grid(n, a):
        xs = np.repeat(np.arange(lefts[a].counts[n], dtype=INDEX), widths[n][a])
        ts = np.tile(np.arange(widths[n][a], dtype=INDEX), lefts[a].counts[n])
        return xs, ts

    faces, degens = [()], []
    for n in range(top + 1):
        grids = [grid(n, a) for a in range(len(lefts))]
        if n:
            faces.append(tuple(
                np.concatenate([offsets[n - 1][a] + lefts[a].faces[n][i][xs] * widths[n - 1][a] + rights[a].faces[n][i][ts]
                                for a, (xs, ts) in enumerate(grids)] or [EMPTY])
                for i in range(n + 1)))
        if n < top:
            degens.append(tuple(
                np.concatenate([offsets[n + 1][a] + lefts[a].degens[n][i][xs] * widths[n + 1][a] + rights[a].degens[n][i][ts]
                                for a, (xs, ts) in enumerate(grids)] or [EMPTY])
                for i in range(n + 1)))
        else:
            degens.append(())
    space = TruncatedSSet(top, tuple(int(o[-1]) for o in offsets), tuple(faces), tuple(degens))
    return BlockSpace(space, offsets, widths)


@dataclass(eq=False)
class QuotientResult:
    """A simplicial set presented as a quotient of a block cover.

    ``gsset`` is present when the cover carries a group action that descends.
    """

    space: TruncatedSSet
    cover: BlockSpace
    proj: SimplicialMap
    reps: list
    gsset: GSSet | None = None
    cover_action: GSSet | None = None
    extra: dict = field(default_factory=dict)

    @property
    def top(self) -> int:
        return self.space.top

    def describe(self, n: int, s: int) -> tuple:
        """Block coordinates of the representative of simplex ``s``."""
        return self.cover.decode(n, int(self.reps[n][s]))

    def descend(self, cover_map: Sequence[np.ndarray], target: TruncatedSSet) -> SimplicialMap:
        """The map out of the quotient induced by a map defined on the cover.

        Raises ``ValueError`` if ``cover_map`` is not constant on classes.
        """
        maps = []
        for n in range(self.top + 1):
            cm = np.asarray(cover_map[n], dtype=INDEX)
            q = cm[self.reps[n]]
            if not np.array_equal(q[self.proj.maps[n]], cm):
                bad = int(np.flatnonzero(q[self.proj.maps[n]] != cm)[0])
                raise ValueError(f"map is not constant on classes in degree {n} (cover simplex {bad})")
            maps.append(q)
        return SimplicialMap(self.space, target, tuple(maps))


def _finish(cover: BlockSpace, pairs, group: FinGroup | None = None, cover_action_tables=None) -> QuotientResult:
    q, proj, reps = quotient(cover.space, pairs)
    res = QuotientResult(q, cover, proj, reps)
    if group is not None:
        res.cover_action = GSSet(cover.space, group, cover_action_tables)
        res.gsset = descend_action(res.cover_action, proj, reps)
    return res


def _concat(parts):
    return np.concatenate(parts) if parts else EMPTY


# -- colimits -----------------------------------------------------------------

def colim(rf: RightGFunctor) -> QuotientResult:
    """``colim F``: ``⨿ F(X)`` with ``x ~ F(f)(x)``.

    The action satisfies ``g∘ρ_X = ρ_{gX}∘η_{g,X}``; ``extra["rho"]`` holds
    the maps ``ρ_X``.
    """
    if rf.kind != SSET:
        raise ValueError("colim is implemented for simplicial-set valued diagrams")
    cat, _act = rf.source, rf.action
    top = _top_of(rf)
    cover = block_sum(rf.functor.values, top)
    pairs = []
    for n in range(top + 1):
        a_parts, b_parts = [], []
        for f in cat.morphisms():
            if cat.is_identity(f):
                continue
            x, y = cat.src[f], cat.tgt[f]
            loc = np.arange(rf.value(x).counts[n], dtype=INDEX)
            a_parts.append(cover.ids(n, x, loc))
            b_parts.append(cover.ids(n, y, rf.map(f).maps[n]))
        pairs.append((_concat(a_parts), _concat(b_parts)))
    action = _block_action(cover, rf, top, lambda g, a, n: rf.eta[g][a].maps[n])
    res = _finish(cover, pairs, rf.group, action)
    res.extra["rho"] = [
        SimplicialMap(rf.value(x), res.space, tuple(res.proj.maps[n][cover.ids(n, x, np.arange(rf.value(x).counts[n]))]
                                                  for n in range(top + 1)))
        for x in cat.objects()
    ]
    return res


def _top_of(rf) -> int:
    if rf.source.n_objects == 0:
        raise ValueError("diagram over the empty category needs an explicit truncation")
    return rf.value(0).top


def _block_action(cover: BlockSpace, rf, top, local_map):
    """Cover action ``(a, x) -> (g·a, η_{g,a}(x))`` for single-factor blocks."""
    act = rf.action
    out = []
    for g in rf.group.elements():
        row = []
        for n in range(top + 1):
            row.append(_concat([cover.ids(n, act.obj_perm[g][a], local_map(g, a, n)) for a in rf.source.objects()]))
        out.append(tuple(row))
    return tuple(out)


def induce(subgroup: Subgroup, value: GSSet) -> QuotientResult:
    """``Ind_H^G Z``: one copy of ``Z`` per left coset ``aH``, with
    ``g·(aH, z) = (g a H, h z)`` where ``g a = a' h`` and ``a'`` is the chosen
    representative of ``g a H``.

    ``value`` carries an action of ``subgroup.group`` (elements indexed by
    position in ``subgroup.elements``).  Cosets are ordered by least element;
    the least element is the representative, so the identity coset comes first.
    """
    group = subgroup.parent
    if not subgroup.is_closed():
        raise ValueError("element set is not a subgroup")
    if value.group.order != subgroup.order:
        raise ValueError("value must carry an action of the subgroup")
    cosets, seen = [], set()
    for a in group.elements():
        if a not in seen:
            coset = sorted(group.mul(a, h) for h in subgroup.elements)
            seen.update(coset)
            cosets.append(coset)
    which = {x: i for i, c in enumerate(cosets) for x in c}
    reps = [c[0] for c in cosets]
    pos = {h: i for i, h in enumerate(subgroup.elements)}
    k = len(cosets)
    cat = FinCategory.discrete(k, tuple(tuple(c) for c in cosets))
    obj_perm = tuple(tuple(which[group.mul(g, reps[i])] for i in range(k)) for g in group.elements())
    action = GCatAction(group, cat, obj_perm, obj_perm)
    inv = group.inverse

    def eta(g, i, s, t):
        j = obj_perm[g][i]
        h = group.mul(inv[reps[j]], group.mul(g, reps[i]))
        return value.element_map(pos[h])

    from ..simplicial.sset import SimplicialMap as _SM
    rf = RightGFunctor.build(action, SSET, lambda i: value.space,
                             lambda f, s, t: _SM.identity(value.space), eta)
    res = colim(rf)
    res.extra["diagram"] = rf
    res.extra["cosets"] = cosets
    return res


# -- coends and tensors -------------------------------------------------------

def _check_opposite(f_cat: FinCategory, t_cat: FinCategory) -> None:
    if not t_cat.same_as(f_cat.opposite()):
        raise FormatError("variance mismatch: the second diagram must live on the opposite of the first's category")


def tensor_relations(cat: FinCategory, fd, td, cover: BlockSpace, top: int) -> list:
    """Generating pairs ``(F(m)a, t) ~ (a, T(m)t)`` for every non-identity ``m``."""
    pairs = []
    for n in range(top + 1):
        a_parts, b_parts = [], []
        for m in cat.morphisms():
            if cat.is_identity(m):
                continue
            x, y = cat.src[m], cat.tgt[m]
            na, nt = fd.value(x).counts[n], td.value(y).counts[n]
            if na == 0 or nt == 0:
                continue
            xs = np.repeat(np.arange(na, dtype=INDEX), nt)
            ts = np.tile(np.arange(nt, dtype=INDEX), na)
            a_parts.append(cover.pair_ids(n, y, fd.map(m).maps[n][xs], ts))
            b_parts.append(cover.pair_ids(n, x, xs, td.map(m).maps[n][ts]))
        pairs.append((_concat(a_parts), _concat(b_parts)))
    return pairs


def tensor_space(fd, td) -> QuotientResult:
    """``F ⊗_C T`` without any group action; ``fd``, ``td`` need ``value`` and ``map``."""
    cat = fd.source
    _check_opposite(cat, td.source)
    top = _top_of(fd)
    fv = [fd.value(x) for x in cat.objects()]
    tv = [td.value(x) for x in cat.objects()]
    cover = product_block_sum(fv, tv, top)
    res = _finish(cover, tensor_relations(cat, fd, td, cover, top))
    res.extra.update(left=fd, right=td)
    return res


def tensor(f: RightGFunctor, t: RightGFunctor) -> QuotientResult:
    """``F ⊗_C T`` for ``F`` on ``C`` and ``T`` on ``C^op``.

    Cover ``⨿_C F(C) × T(C)``; ``(F(f)a, t) ~ (a, T(f)t)`` for ``f: X -> Y``,
    ``a ∈ F(X)``, ``t ∈ T(Y)``.  The action is
    ``g·(C, a, t) = (gC, η^F(a), η^T(t))``.
    """
    if f.kind != SSET or t.kind != SSET:
        raise ValueError("tensor needs simplicial-set valued diagrams")
    cat = f.source
    _check_opposite(cat, t.source)
    if f.action.obj_perm != t.action.obj_perm or f.action.mor_perm != t.action.mor_perm:
        raise ValueError("the two diagrams must carry the same action on the base category")
    top = _top_of(f)
    if _top_of(t) != top:
        raise ValueError(f"the diagrams have truncations {top} and {_top_of(t)}")
    cover = product_block_sum(f.functor.values, t.functor.values, top)
    action = _pair_action(cover, f.action, top, f.functor.values, t.functor.values,
                          lambda g, a, n: f.eta[g][a].maps[n], lambda g, a, n: t.eta[g][a].maps[n])
    res = _finish(cover, tensor_relations(cat, f, t, cover, top), f.group, action)
    res.extra.update(left=f, right=t)
    return res


def _pair_action(cover, act, top, lefts, rights, lmap, rmap):
    out = []
    for g in act.group.elements():
        row = []
        for n in range(top + 1):
            parts = []
            for a in range(len(lefts)):
                na, nt = lefts[a].counts[n], rights[a].counts[n]
                xs = np.repeat(lmap(g, a, n), nt)
                ts = np.tile(rmap(g, a, n), na)
                parts.append(cover.pair_ids(n, act.obj_perm[g][a], xs, ts))
            row.append(_concat(parts))
        out.append(tuple(row))
    return tuple(out)


def coend(z: RightGFunctor) -> QuotientResult:
    """Coend of ``Z`` on ``C × C^op``: ``⨿_C Z(C, C)`` with
    ``Z(f, 1)w ~ Z(1, f)w`` for ``w ∈ Z(X, Y)`` and ``f: X -> Y``."""
    if z.kind != SSET:
        raise ValueError("coend needs a simplicial-set valued diagram")
    base = z.source
    if base.factors is None or not base.factors[1].same_as(base.factors[0].opposite()):
        raise FormatError("variance mismatch: coend needs a diagram on C × C^op")
    cat = base.factors[0]
    n_obj, m = cat.n_objects, cat.n_morphisms
    top = _top_of(z)
    diag = [x * n_obj + x for x in cat.objects()]
    cover = block_sum([z.value(d) for d in diag], top)
    pairs = []
    for n in range(top + 1):
        a_parts, b_parts = [], []
        for f in cat.morphisms():
            if cat.is_identity(f):
                continue
            x, y = cat.src[f], cat.tgt[f]
            left = f * m + cat.identities[y]      # (f, 1_Y): (X, Y) -> (Y, Y)
            right = cat.identities[x] * m + f     # (1_X, f): (X, Y) -> (X, X)
            a_parts.append(cover.ids(n, y, z.map(left).maps[n]))
            b_parts.append(cover.ids(n, x, z.map(right).maps[n]))
        pairs.append((_concat(a_parts), _concat(b_parts)))
    act = z.action
    out = []
    for g in z.group.elements():
        row = []
        for n in range(top + 1):
            row.append(_concat([cover.ids(n, act.obj_perm[g][d] // n_obj, z.eta[g][d].maps[n]) for d in diag]))
        out.append(tuple(row))
    res = _finish(cover, pairs, z.group, tuple(out))
    res.extra["diagram"] = z
    return res


# -- induced maps -------------------------------------------------------------

def colim_map(eps: GFunctorMorphism, source: QuotientResult, target: QuotientResult) -> SimplicialMap:
    """The map of colimits induced by a morphism of diagrams."""
    cover_map = []
    for n in range(source.top + 1):
        cover_map.append(_concat([
            target.cover.ids(n, a, eps.components[a].maps[n]) for a in eps.source.source.objects()
        ]))
    return source.descend([target.proj.maps[n][cover_map[n]] for n in range(source.top + 1)], target.space)


def tensor_map(source: QuotientResult, target: QuotientResult,
               left: GFunctorMorphism | None = None, right: GFunctorMorphism | None = None) -> SimplicialMap:
    """``ε ⊗ τ``: ``[C, a, t] -> [C, ε_C(a), τ_C(t)]``; a missing side is the identity."""
    f, t = source.extra["left"], source.extra["right"]
    cover_map = []
    for n in range(source.top + 1):
        parts = []
        for a in f.source.objects():
            na, nt = f.value(a).counts[n], t.value(a).counts[n]
            lm = left.components[a].maps[n] if left is not None else np.arange(na, dtype=INDEX)
            rm = right.components[a].maps[n] if right is not None else np.arange(nt, dtype=INDEX)
            parts.append(target.cover.pair_ids(n, a, np.repeat(lm, nt), np.tile(rm, na)))
        cover_map.append(target.proj.maps[n][_concat(parts)])
    return source.descend(cover_map, target.space)


def coend_map(eps: GFunctorMorphism, source: QuotientResult, target: QuotientResult) -> SimplicialMap:
    z = eps.source
    n_obj = z.source.factors[0].n_objects
    cover_map = []
    for n in range(source.top + 1):
        cover_map.append(target.proj.maps[n][_concat([
            target.cover.ids(n, x, eps.components[x * n_obj + x].maps[n]) for x in range(n_obj)
        ])])
    return source.descend(cover_map, target.space)

"""Nerves of finite categories, built as arrays of composable chains.

A degree-``n`` simplex is a chain ``X_0 -> ... -> X_n``.  For ``n >= 1`` it
is stored as its ``n`` morphism ids; degree 0 stores the object.  Chains of
each degree are numbered in lexicographic order of their morphism ids.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..algebra.categories import CatFunctor, FinCategory, GCatAction
from ..errors import SizeLimitError
from ..simplicial.sset import DEFAULT_TOP, INDEX, GSSet, SimplicialMap, TruncatedSSet

_CODE_LIMIT = 2 ** 62


def comp_array(cat: FinCategory) -> np.ndarray:
    """``out[g, f] = g∘f``, or ``-1`` where undefined."""
    m = cat.n_morphisms
    out = np.full((m, m), -1, dtype=INDEX)
    if cat.comp:
        keys = np.array(list(cat.comp.keys()), dtype=INDEX)
        out[keys[:, 0], keys[:, 1]] = np.fromiter(cat.comp.values(), dtype=INDEX, count=len(cat.comp))
    return out


@dataclass(frozen=True, eq=False)
class NerveChains:
    """All chains of a category up to degree ``top``.

    ``mors[n]`` has shape ``(count, n)``; ``objs[n]`` has shape
    ``(count, n + 1)`` and lists ``X_0 .. X_n``.
    """

    category: FinCategory
    top: int
    objs: tuple
    mors: tuple
    codes: tuple

    def count(self, n: int) -> int:
        return len(self.objs[n])

    def lookup(self, n: int, mors: np.ndarray) -> np.ndarray:
        """Chain ids of the given morphism tuples (degree ``n >= 1``), or objects for ``n = 0``."""
        if n == 0:
            return np.asarray(mors, dtype=INDEX).reshape(-1)
        mors = np.asarray(mors, dtype=INDEX).reshape(-1, n)
        code = _encode(mors, self.category.n_morphisms)
        pos = np.searchsorted(self.codes[n], code)
        if len(code) and (pos.max(initial=0) >= len(self.codes[n]) or not np.array_equal(self.codes[n][pos], code)):
            raise KeyError("some morphism tuples are not composable chains")
        return pos.astype(INDEX)

    def label(self, n: int, c: int) -> tuple:
        if n == 0:
            return (int(self.objs[0][c, 0]),)
        return tuple(int(f) for f in self.mors[n][c])

    @cached_property
    def sset(self) -> TruncatedSSet:
        cat, top = self.category, self.top
        comp = comp_array(cat)
        ident = np.asarray(cat.identities, dtype=INDEX)
        faces, degens = [()], []
        for n in range(top + 1):
            if n >= 1:
                row = []
                ms = self.mors[n]
                for i in range(n + 1):
                    if n == 1:
                        row.append(self.objs[1][:, 1 - i].copy())
                        continue
                    if i == 0:
                        d = ms[:, 1:]
                    elif i == n:
                        d = ms[:, :-1]
                    else:
                        d = np.concatenate([ms[:, :i - 1], comp[ms[:, i], ms[:, i - 1]][:, None], ms[:, i + 1:]], axis=1)
                    row.append(self.lookup(n - 1, d))
                faces.append(tuple(row))
            if n < top:
                row = []
                for i in range(n + 1):
                    ids = ident[self.objs[n][:, i]][:, None]
                    d = np.concatenate([self.mors[n][:, :i], ids, self.mors[n][:, i:]], axis=1)
                    row.append(self.lookup(n + 1, d))
                degens.append(tuple(row))
            else:
                degens.append(())
        labels = tuple(
            tuple(int(x) for x in self.objs[0][:, 0]) if n == 0 else tuple(map(tuple, self.mors[n].tolist()))
            for n in range(top + 1)
        )
        return TruncatedSSet(top, tuple(self.count(n) for n in range(top + 1)), tuple(faces), tuple(degens), labels)

    def act(self, action: GCatAction, g: int, n: int) -> np.ndarray:
        """Chain ids of ``g`` applied to every chain of degree ``n``."""
        if n == 0:
            return np.asarray(action.obj_perm[g], dtype=INDEX)[self.objs[0][:, 0]]
        return self.lookup(n, np.asarray(action.mor_perm[g], dtype=INDEX)[self.mors[n]])

    def gsset(self, action: GCatAction | None) -> GSSet:
        if action is None:
            return GSSet.trivial(self.sset)
        return GSSet(self.sset, action.group, tuple(
            tuple(np.arange(self.count(n), dtype=INDEX) if g == 0 else self.act(action, g, n) for n in range(self.top + 1))
            for g in action.group.elements()
        ))


def _encode(mors: np.ndarray, base: int) -> np.ndarray:
    code = np.zeros(len(mors), dtype=INDEX)
    for j in range(mors.shape[1]):
        code = code * base + mors[:, j]
    return code


_CACHE: "weakref.WeakKeyDictionary[FinCategory, dict]" = weakref.WeakKeyDictionary()


def nerve_chains(cat: FinCategory, top: int = DEFAULT_TOP) -> NerveChains:
    """Enumerate chains; results are cached per category and truncation."""
    per_cat = _CACHE.setdefault(cat, {})
    if top in per_cat:
        return per_cat[top]
    m = max(cat.n_morphisms, 1)
    if m ** max(top, 1) >= _CODE_LIMIT:
        raise SizeLimitError(f"{cat.n_morphisms} morphisms is too many to index chains up to degree {top}")
    src = np.asarray(cat.src, dtype=INDEX)
    tgt = np.asarray(cat.tgt, dtype=INDEX)
    order = np.lexsort((np.arange(cat.n_morphisms), src))
    ptr = np.searchsorted(src[order], np.arange(cat.n_objects + 1))
    objs = [np.arange(cat.n_objects, dtype=INDEX)[:, None]]
    mors = [np.zeros((cat.n_objects, 0), dtype=INDEX)]
    for n in range(1, top + 1):
        last = objs[-1][:, -1]
        deg = ptr[last + 1] - ptr[last]
        total = int(deg.sum())
        parent = np.repeat(np.arange(len(last)), deg)
        start = np.repeat(ptr[last], deg)
        within = np.arange(total) - np.repeat(np.cumsum(deg) - deg, deg)
        new = order[start + within].astype(INDEX)
        ms = np.concatenate([mors[-1][parent], new[:, None]], axis=1)
        os_ = np.concatenate([objs[-1][parent], tgt[new][:, None]], axis=1)
        # lexicographic order of morphism tuples
        perm = np.lexsort(tuple(ms[:, j] for j in reversed(range(n))))
        mors.append(ms[perm])
        objs.append(os_[perm])
    codes = [objs[0][:, 0].copy()] + [_encode(mors[n], m) for n in range(1, top + 1)]
    result = NerveChains(cat, top, tuple(objs), tuple(mors), tuple(codes))
    per_cat[top] = result
    return result


def nerve(cat: FinCategory, action: GCatAction | None = None, top: int = DEFAULT_TOP) -> GSSet:
    """``N(C)`` with the action applying ``g`` to every object and morphism of a chain."""
    if action is not None and action.category is not cat and not action.category.same_as(cat):
        raise ValueError("the action is on a different category")
    return nerve_chains(cat, top).gsset(action)


def nerve_map(functor: CatFunctor, top: int = DEFAULT_TOP,
              source: TruncatedSSet | None = None, target: TruncatedSSet | None = None) -> SimplicialMap:
    """``N(S)``: apply ``S`` to every chain."""
    a = nerve_chains(functor.source, top)
    b = nerve_chains(functor.target, top)
    om = np.asarray(functor.obj_map, dtype=INDEX)
    mm = np.asarray(functor.mor_map, dtype=INDEX)
    maps = [om[a.objs[0][:, 0]]] + [b.lookup(n, mm[a.mors[n]]) for n in range(1, top + 1)]
    return SimplicialMap(source or a.sset, target or b.sset, tuple(maps))

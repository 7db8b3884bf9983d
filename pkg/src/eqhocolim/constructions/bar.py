"""The simplicial bar construction ``B(C, Z)`` and its bisimplicial form.

A degree-``n`` simplex is ``(φ_1, ..., φ_n; z)`` with ``z ∈ Z(X_0, X_n)_n``.
Faces and degeneracies:

* ``d_0 = (φ_2, ..., φ_n; d_0 Z(φ_1, 1) z)``
* ``d_i = (..., φ_{i+1}φ_i, ...; d_i z)`` for ``0 < i < n``
* ``d_n = (φ_1, ..., φ_{n-1}; d_n Z(1, φ_n) z)``
* ``s_i`` inserts ``1_{X_i}`` and applies ``s_i`` to ``z``

and ``g`` acts by ``(gφ_1, ..., gφ_n; η_{g,(X_0,X_n)} z)``.

Simplices of one degree are grouped by chain (in chain order) and within a
chain by the id of ``z``.  ``Z`` is accessed through a small protocol so the
common case ``Z = F × T`` never materializes the products.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..algebra.categories import FinCategory, GCatAction
from ..algebra.functors import RightGFunctor
from ..simplicial.bisimplicial import BiSSet
from ..simplicial.sset import DEFAULT_TOP, INDEX, GSSet, SimplicialMap, TruncatedSSet
from .nerve import NerveChains, nerve_chains


class Bifunctor:
    """``Z`` read from a right G-functor on ``C × C^op``."""

    def __init__(self, z: RightGFunctor):
        base = z.source
        if base.factors is None or not base.factors[1].same_as(base.factors[0].opposite()):
            raise ValueError("variance mismatch: bar needs a diagram on C × C^op")
        self.z = z
        self.cat = base.factors[0]
        self.n = self.cat.n_objects
        self.m = self.cat.n_morphisms
        self.group = z.group

    def _obj(self, x, y):
        return x * self.n + y

    def count(self, n, x, y):
        return self.z.value(self._obj(x, y)).counts[n]

    def face(self, n, i, x, y):
        return self.z.value(self._obj(x, y)).faces[n][i]

    def degen(self, n, i, x, y):
        return self.z.value(self._obj(x, y)).degens[n][i]

    def left(self, n, phi, y):
        return self.z.map(phi * self.m + self.cat.identities[y]).maps[n]

    def right(self, n, x, psi):
        return self.z.map(self.cat.identities[x] * self.m + psi).maps[n]

    def eta(self, n, g, x, y):
        return self.z.eta[g][self._obj(x, y)].maps[n]


class ProductPair:
    """``Z(X, Y) = F(X) × T(Y)`` for ``F`` on ``C`` and ``T`` on ``C^op``.

    ``F`` and ``T`` need ``value`` and ``map``; ``eta`` tables are only
    needed for the group action.  ``(a, t)`` is stored as ``a*|T(Y)_n| + t``.
    """

    def __init__(self, f, t, group=None):
        self.f, self.t = f, t
        self.cat = f.source
        self.group = group if group is not None else getattr(f, "group", None)
        self._grid = lru_cache(maxsize=None)(self._make_grid)

    def _make_grid(self, n, x, y):
        na, nt = self.f.value(x).counts[n], self.t.value(y).counts[n]
        return np.repeat(np.arange(na, dtype=INDEX), nt), np.tile(np.arange(nt, dtype=INDEX), na)

    def count(self, n, x, y):
        return self.f.value(x).counts[n] * self.t.value(y).counts[n]

    def _combine(self, nn, y, a, t):
        return a * self.t.value(y).counts[nn] + t

    def face(self, n, i, x, y):
        xs, ts = self._grid(n, x, y)
        return self._combine(n - 1, y, self.f.value(x).faces[n][i][xs], self.t.value(y).faces[n][i][ts])

    def degen(self, n, i, x, y):
        xs, ts = self._grid(n, x, y)
        return self._combine(n + 1, y, self.f.value(x).degens[n][i][xs], self.t.value(y).degens[n][i][ts])

    def left(self, n, phi, y):
        xs, ts = self._grid(n, self.cat.src[phi], y)
        return self._combine(n, y, self.f.map(phi).maps[n][xs], ts)

    def right(self, n, x, psi):
        # psi: Y' -> Y in C, so T(psi): T(Y) -> T(Y')
        y, y2 = self.cat.tgt[psi], self.cat.src[psi]
        xs, ts = self._grid(n, x, y)
        return self._combine(n, y2, xs, self.t.map(psi).maps[n][ts])

    def eta(self, n, g, x, y):
        xs, ts = self._grid(n, x, y)
        gy = self.t_action.obj_perm[g][y]
        return self._combine(n, gy, self.f.eta[g][x].maps[n][xs], self.t.eta[g][y].maps[n][ts])

    @property
    def t_action(self):
        return self.t.action


@dataclass(eq=False)
class BarResult:
    """``B(C, Z)`` with the bookkeeping to address ``(chain; z)`` simplices."""

    space: TruncatedSSet
    chains: NerveChains
    zl: object
    offsets: list
    gsset: GSSet | None = None
    extra: dict = field(default_factory=dict)

    @property
    def top(self) -> int:
        return self.space.top

    def ids(self, n: int, chain_ids, z) -> np.ndarray:
        return self.offsets[n][np.asarray(chain_ids, dtype=INDEX)] + np.asarray(z, dtype=INDEX)

    def chain_of(self, n: int, s) -> np.ndarray:
        return np.searchsorted(self.offsets[n], np.asarray(s), side="right") - 1

    def decode(self, n: int, s: int) -> tuple:
        c = int(self.chain_of(n, s))
        return self.chains.label(n, c), int(s - self.offsets[n][c])


def _endpoints(chains: NerveChains, n: int):
    o = chains.objs[n]
    return o[:, 0], o[:, -1]


def _offsets(chains: NerveChains, zl, m: int, n: int) -> np.ndarray:
    x0, xm = _endpoints(chains, m)
    sizes = np.fromiter((zl.count(n, int(a), int(b)) for a, b in zip(x0, xm)), dtype=INDEX, count=len(x0))
    return np.concatenate([[0], np.cumsum(sizes)]).astype(INDEX)


def _grouped_table(src_off, tgt_off, target_chain, keys, zmap, total):
    """Table of a map that sends ``(c; z)`` to ``(target_chain[c]; zmap(c)[z])``.

    ``zmap`` only depends on ``keys[c]`` and is evaluated once per key.
    """
    out = np.empty(total, dtype=INDEX)
    if len(keys) == 0:
        return out
    uniq, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
    order = np.argsort(inverse, kind="stable")
    bounds = np.searchsorted(inverse[order], np.arange(len(uniq) + 1))
    for k in range(len(uniq)):
        cs = order[bounds[k]:bounds[k + 1]]
        zp = np.asarray(zmap(int(first[k])), dtype=INDEX)
        if len(zp) == 0:
            continue
        src = src_off[cs][:, None] + np.arange(len(zp), dtype=INDEX)[None, :]
        dst = tgt_off[target_chain[cs]][:, None] + zp[None, :]
        out[src.ravel()] = dst.ravel()
    return out


class _Builder:
    def __init__(self, cat: FinCategory, zl, top_m: int, top_n: int):
        self.cat, self.zl = cat, zl
        self.chains = nerve_chains(cat, top_m)
        self.nerve = self.chains.sset
        self.n_obj = cat.n_objects
        self._off = {}
        self.top_m, self.top_n = top_m, top_n

    def off(self, m, n):
        if (m, n) not in self._off:
            self._off[(m, n)] = _offsets(self.chains, self.zl, m, n)
        return self._off[(m, n)]

    def hface(self, m, n, i, with_vface: bool):
        """Face in the chain direction, optionally followed by ``d_i`` on ``z``."""
        ch, zl, N = self.chains, self.zl, self.n_obj
        objs, mors = ch.objs[m], ch.mors[m]
        nz = n - 1 if with_vface else n
        if i == 0:
            keys = mors[:, 0] * N + objs[:, -1]

            def zmap(c):
                phi, xm, x1 = int(mors[c, 0]), int(objs[c, -1]), int(objs[c, 1])
                z = zl.left(n, phi, xm)
                return zl.face(n, i, x1, xm)[z] if with_vface else z
        elif i == m:
            keys = objs[:, 0] * self.cat.n_morphisms + mors[:, -1]

            def zmap(c):
                x0, phi, xp = int(objs[c, 0]), int(mors[c, -1]), int(objs[c, -2])
                z = zl.right(n, x0, phi)
                return zl.face(n, i, x0, xp)[z] if with_vface else z
        else:
            keys = objs[:, 0] * N + objs[:, -1]

            def zmap(c):
                x0, xm = int(objs[c, 0]), int(objs[c, -1])
                return zl.face(n, i, x0, xm) if with_vface else np.arange(zl.count(n, x0, xm), dtype=INDEX)
        src_off = self.off(m, n)
        return _grouped_table(src_off, self.off(m - 1, nz), self.nerve.faces[m][i], keys, zmap, int(src_off[-1]))

    def hdegen(self, m, n, i, with_vdegen: bool):
        ch, zl, N = self.chains, self.zl, self.n_obj
        objs = ch.objs[m]
        keys = objs[:, 0] * N + objs[:, -1]
        nz = n + 1 if with_vdegen else n

        def zmap(c):
            x0, xm = int(objs[c, 0]), int(objs[c, -1])
            return zl.degen(n, i, x0, xm) if with_vdegen else np.arange(zl.count(n, x0, xm), dtype=INDEX)
        src_off = self.off(m, n)
        return _grouped_table(src_off, self.off(m + 1, nz), self.nerve.degens[m][i], keys, zmap, int(src_off[-1]))

    def vface(self, m, n, j):
        objs = self.chains.objs[m]
        keys = objs[:, 0] * self.n_obj + objs[:, -1]
        src_off = self.off(m, n)
        ident = np.arange(self.chains.count(m), dtype=INDEX)
        return _grouped_table(src_off, self.off(m, n - 1), ident, keys,
                              lambda c: self.zl.face(n, j, int(objs[c, 0]), int(objs[c, -1])), int(src_off[-1]))

    def vdegen(self, m, n, j):
        objs = self.chains.objs[m]
        keys = objs[:, 0] * self.n_obj + objs[:, -1]
        src_off = self.off(m, n)
        ident = np.arange(self.chains.count(m), dtype=INDEX)
        return _grouped_table(src_off, self.off(m, n + 1), ident, keys,
                              lambda c: self.zl.degen(n, j, int(objs[c, 0]), int(objs[c, -1])), int(src_off[-1]))

    def act(self, action: GCatAction, g: int, m: int, n: int):
        objs = self.chains.objs[m]
        keys = objs[:, 0] * self.n_obj + objs[:, -1]
        src_off = self.off(m, n)
        moved = self.chains.act(action, g, m)
        return _grouped_table(src_off, src_off, moved, keys,
                              lambda c: self.zl.eta(n, g, int(objs[c, 0]), int(objs[c, -1])), int(src_off[-1]))


def bar_space(cat: FinCategory, zl, top: int = DEFAULT_TOP, action: GCatAction | None = None) -> BarResult:
    """``B(C, Z)`` for a ``Z`` given through the access protocol."""
    b = _Builder(cat, zl, top, top)
    faces, degens = [()], []
    for n in range(top + 1):
        if n:
            faces.append(tuple(b.hface(n, n, i, True) for i in range(n + 1)))
        degens.append(tuple(b.hdegen(n, n, i, True) for i in range(n + 1)) if n < top else ())
    offsets = [b.off(n, n) for n in range(top + 1)]
    space = TruncatedSSet(top, tuple(int(o[-1]) for o in offsets), tuple(faces), tuple(degens))
    res = BarResult(space, b.chains, zl, offsets)
    if action is not None:
        res.gsset = GSSet(space, action.group, tuple(
            tuple(np.arange(space.counts[n], dtype=INDEX) if g == 0 else b.act(action, g, n, n) for n in range(top + 1))
            for g in action.group.elements()
        ))
    return res


def bar(z: RightGFunctor, top: int = DEFAULT_TOP) -> BarResult:
    """``B(C, Z)`` for a right G-functor ``Z`` on ``C × C^op``."""
    zl = Bifunctor(z)
    cat_action = _factor_action(z.action, zl.cat)
    return bar_space(zl.cat, zl, top, cat_action)


def bar_ft(f: RightGFunctor, t: RightGFunctor, top: int = DEFAULT_TOP) -> BarResult:
    """``B(F, C, T)``: the bar construction of ``Z = F × T``."""
    if not t.source.same_as(f.source.opposite()):
        from ..errors import FormatError
        raise FormatError("variance mismatch: T must live on the opposite of F's category")
    return bar_space(f.source, ProductPair(f, t), top, f.action)


def _factor_action(action: GCatAction, cat: FinCategory) -> GCatAction:
    """The action on ``C`` underlying an action on ``C × C^op``."""
    n, m = cat.n_objects, cat.n_morphisms
    return GCatAction(
        action.group, cat,
        tuple(tuple(action.obj_perm[g][x * n] // n for x in cat.objects()) for g in action.group.elements()),
        tuple(tuple(action.mor_perm[g][f * m] // m for f in cat.morphisms()) for g in action.group.elements()),
    )


def bar_bi(z: RightGFunctor, tops: tuple[int, int] = (DEFAULT_TOP, DEFAULT_TOP)) -> BiSSet:
    """The bisimplicial set with ``(m, n)``-simplices ``(φ_1..φ_m; z ∈ Z(X_0, X_m)_n)``."""
    zl = Bifunctor(z)
    action = _factor_action(z.action, zl.cat)
    M, N = tops
    b = _Builder(zl.cat, zl, M, N)
    counts = tuple(tuple(int(b.off(m, n)[-1]) for n in range(N + 1)) for m in range(M + 1))
    hf = tuple(tuple(tuple(b.hface(m, n, i, False) for i in range(m + 1)) if m else () for n in range(N + 1)) for m in range(M + 1))
    hd = tuple(tuple(tuple(b.hdegen(m, n, i, False) for i in range(m + 1)) if m < M else () for n in range(N + 1)) for m in range(M + 1))
    vf = tuple(tuple(tuple(b.vface(m, n, j) for j in range(n + 1)) if n else () for n in range(N + 1)) for m in range(M + 1))
    vd = tuple(tuple(tuple(b.vdegen(m, n, j) for j in range(n + 1)) if n < N else () for n in range(N + 1)) for m in range(M + 1))
    act = tuple(
        tuple(tuple(b.act(action, g, m, n) for n in range(N + 1)) for m in range(M + 1))
        for g in action.group.elements()
    )
    return BiSSet(tops, counts, hf, hd, vf, vd, None, action.group, act)


def bar_map(source: BarResult, target: BarResult, zmap_fn, chain_fn=None, key_fn=None) -> SimplicialMap:
    """A map ``(chain; z) -> (chain_fn(chain); zmap_fn(n, c)[z])`` between bar constructions.

    ``chain_fn(n)`` gives target chain ids for all degree-``n`` chains
    (default: the same chains).  ``zmap_fn(n, c)`` may only depend on
    ``key_fn(n)[c]`` (default: the chain's endpoints).
    """
    ch = source.chains
    maps = []
    for n in range(source.top + 1):
        objs = ch.objs[n]
        keys = key_fn(n) if key_fn else objs[:, 0] * ch.category.n_objects + objs[:, -1]
        tchains = chain_fn(n) if chain_fn else np.arange(ch.count(n), dtype=INDEX)
        maps.append(_grouped_table(source.offsets[n], target.offsets[n], tchains, keys,
                                   lambda c, n=n: zmap_fn(n, c), source.space.counts[n]))
    return SimplicialMap(source.space, target.space, tuple(maps))

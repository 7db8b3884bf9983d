"""Operations on truncated simplicial sets: sums, products, quotients,
nondegenerate simplices, fixed points and isomorphism checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..algebra.groups import Subgroup
from ..errors import FormatError
from .sset import INDEX, GSSet, SimplicialMap, TruncatedSSet


def _check_tops(xs: Sequence[TruncatedSSet]) -> int:
    tops = {x.top for x in xs}
    if len(tops) > 1:
        raise FormatError(f"truncation mismatch: {sorted(tops)}")
    return tops.pop()


def coproduct(xs: Sequence[TruncatedSSet], top: int | None = None) -> tuple[TruncatedSSet, list[SimplicialMap]]:
    """Degreewise disjoint union, summands in order; labels become ``(j, label)``."""
    if not xs:
        if top is None:
            raise ValueError("the empty coproduct needs an explicit truncation")
        from .sset import empty
        return empty(top), []
    top = _check_tops(xs)
    counts, faces, degens, labels = [], [], [], []
    offsets = []
    for n in range(top + 1):
        off = np.cumsum([0] + [x.counts[n] for x in xs])
        offsets.append(off)
        counts.append(int(off[-1]))
        labels.append(tuple((j, x.label(n, s)) for j, x in enumerate(xs) for s in range(x.counts[n])))
    for n in range(top + 1):
        if n == 0:
            faces.append(())
        else:
            faces.append(tuple(
                np.concatenate([x.faces[n][i] + offsets[n - 1][j] for j, x in enumerate(xs)])
                for i in range(n + 1)
            ))
        if n < top:
            degens.append(tuple(
                np.concatenate([x.degens[n][i] + offsets[n + 1][j] for j, x in enumerate(xs)])
                for i in range(n + 1)
            ))
        else:
            degens.append(())
    total = TruncatedSSet(top, tuple(counts), tuple(faces), tuple(degens), tuple(labels))
    injections = [
        SimplicialMap(x, total, tuple(np.arange(x.counts[n], dtype=INDEX) + offsets[n][j] for n in range(top + 1)))
        for j, x in enumerate(xs)
    ]
    return total, injections


def product(x: TruncatedSSet, y: TruncatedSSet) -> tuple[TruncatedSSet, tuple[SimplicialMap, SimplicialMap]]:
    """Degreewise cartesian product; ``(a, b)`` in degree ``n`` has id ``a*|y_n| + b``."""
    top = _check_tops([x, y])
    counts = tuple(x.counts[n] * y.counts[n] for n in range(top + 1))
    faces, degens = [()], []
    for n in range(top + 1):
        if n > 0:
            m = y.counts[n - 1]
            faces.append(tuple(
                (x.faces[n][i][:, None] * m + y.faces[n][i][None, :]).reshape(-1) for i in range(n + 1)
            ))
        if n < top:
            m = y.counts[n + 1]
            degens.append(tuple(
                (x.degens[n][i][:, None] * m + y.degens[n][i][None, :]).reshape(-1) for i in range(n + 1)
            ))
        else:
            degens.append(())
    labels = None
    if x.labels is not None or y.labels is not None:
        labels = tuple(
            tuple((x.label(n, a), y.label(n, b)) for a in range(x.counts[n]) for b in range(y.counts[n]))
            for n in range(top + 1)
        )
    prod = TruncatedSSet(top, counts, tuple(faces), tuple(degens), labels)
    p1 = SimplicialMap(prod, x, tuple(np.arange(counts[n], dtype=INDEX) // max(y.counts[n], 1) for n in range(top + 1)))
    p2 = SimplicialMap(prod, y, tuple(np.arange(counts[n], dtype=INDEX) % max(y.counts[n], 1) for n in range(top + 1)))
    return prod, (p1, p2)


def product_map(f: SimplicialMap, g: SimplicialMap, source: TruncatedSSet | None = None,
                target: TruncatedSSet | None = None) -> SimplicialMap:
    """``f × g`` between products built by :func:`product`."""
    source = source or product(f.source, g.source)[0]
    target = target or product(f.target, g.target)[0]
    maps = []
    for n in range(source.top + 1):
        m = g.target.counts[n]
        maps.append((f.maps[n][:, None] * m + g.maps[n][None, :]).reshape(-1))
    return SimplicialMap(source, target, tuple(maps))


def product_gsset(x: GSSet, y: GSSet) -> GSSet:
    """Product with the diagonal action."""
    if not x.group.same_as(y.group):
        raise ValueError("both factors must carry actions of the same group")
    prod, _ = product(x.space, y.space)
    action = []
    for g in x.group.elements():
        row = []
        for n in range(prod.top + 1):
            m = y.counts[n]
            row.append((x.action[g][n][:, None] * m + y.action[g][n][None, :]).reshape(-1))
        action.append(tuple(row))
    return GSSet(prod, x.group, tuple(action))


def coproduct_gsset(xs: Sequence[GSSet]) -> GSSet:
    """Disjoint union with each summand keeping its own action."""
    group = xs[0].group
    if any(not x.group.same_as(group) for x in xs):
        raise ValueError("all summands must carry actions of the same group")
    total, inj = coproduct([x.space for x in xs])
    action = []
    for g in group.elements():
        row = []
        for n in range(total.top + 1):
            row.append(np.concatenate([inj[j].maps[n][x.action[g][n]] for j, x in enumerate(xs)])
                       if xs else np.zeros(0, dtype=INDEX))
        action.append(tuple(row))
    return GSSet(total, group, tuple(action))


class ProductWith:
    """The functor ``X ↦ X × K`` on simplicial sets, for postcomposition."""

    def __init__(self, k: TruncatedSSet):
        self.k = k
        self._ident = SimplicialMap.identity(k)

    def on_object(self, x: TruncatedSSet) -> TruncatedSSet:
        return product(x, self.k)[0]

    def on_map(self, f: SimplicialMap, source=None, target=None) -> SimplicialMap:
        return product_map(f, self._ident, source, target)


class Truncation:
    """Restriction to degrees ``0..top``, for postcomposition."""

    def __init__(self, top: int):
        self.top = top

    def on_object(self, x: TruncatedSSet) -> TruncatedSSet:
        return x.truncate(self.top)

    def on_map(self, f: SimplicialMap, source=None, target=None) -> SimplicialMap:
        return SimplicialMap(source or f.source.truncate(self.top), target or f.target.truncate(self.top),
                             f.maps[:self.top + 1])


def truncate_gsset(x: GSSet, top: int) -> GSSet:
    return GSSet(x.space.truncate(top), x.group, tuple(row[:top + 1] for row in x.action))


def nondegenerate(x: TruncatedSSet) -> list[np.ndarray]:
    """Per degree, the sorted ids of simplices not in the image of any degeneracy."""
    out = [np.arange(x.counts[0], dtype=INDEX)]
    for n in range(1, x.top + 1):
        mask = np.ones(x.counts[n], dtype=bool)
        for s in x.degens[n - 1]:
            mask[s] = False
        out.append(np.flatnonzero(mask).astype(INDEX))
    return out


def quotient(x: TruncatedSSet, pairs: Sequence[tuple[np.ndarray, np.ndarray]]) -> tuple[TruncatedSSet, SimplicialMap, list[np.ndarray]]:
    """Degreewise quotient by the equivalence relation generated by ``pairs[n]``.

    Classes are numbered by their least member, which is also their
    representative.  Returns the quotient, the projection, and the
    representative ids per degree.  Raises ``ValueError`` if the relation is
    not compatible with the structure maps.
    """
    top = x.top
    proj, reps = [], []
    for n in range(top + 1):
        cnt = x.counts[n]
        a, b = pairs[n] if n < len(pairs) else (np.zeros(0, INDEX), np.zeros(0, INDEX))
        a = np.asarray(a, dtype=INDEX)
        b = np.asarray(b, dtype=INDEX)
        if cnt == 0:
            proj.append(np.zeros(0, dtype=INDEX))
            reps.append(np.zeros(0, dtype=INDEX))
            continue
        graph = coo_matrix((np.ones(len(a), dtype=np.int8), (a, b)), shape=(cnt, cnt))
        k, comp = connected_components(graph, directed=True, connection="weak")
        mins = np.full(k, cnt, dtype=INDEX)
        np.minimum.at(mins, comp, np.arange(cnt, dtype=INDEX))
        order = np.argsort(mins, kind="stable")
        rank = np.empty(k, dtype=INDEX)
        rank[order] = np.arange(k, dtype=INDEX)
        proj.append(rank[comp])
        reps.append(mins[order])
    faces, degens = [()], []
    for n in range(top + 1):
        if n > 0:
            row = []
            for i in range(n + 1):
                down = proj[n - 1][x.faces[n][i]]
                qf = down[reps[n]]
                if not np.array_equal(qf[proj[n]], down):
                    raise ValueError(f"relation is not compatible with d_{i} in degree {n}")
                row.append(qf)
            faces.append(tuple(row))
        if n < top:
            row = []
            for i in range(n + 1):
                up = proj[n + 1][x.degens[n][i]]
                qd = up[reps[n]]
                if not np.array_equal(qd[proj[n]], up):
                    raise ValueError(f"relation is not compatible with s_{i} in degree {n}")
                row.append(qd)
            degens.append(tuple(row))
        else:
            degens.append(())
    labels = None
    if x.labels is not None:
        labels = tuple(tuple(x.labels[n][int(r)] for r in reps[n]) for n in range(top + 1))
    q = TruncatedSSet(top, tuple(len(r) for r in reps), tuple(faces), tuple(degens), labels)
    return q, SimplicialMap(x, q, tuple(proj)), reps


def descend_action(cover: GSSet, proj: SimplicialMap, reps: list[np.ndarray]) -> GSSet:
    """The action induced on a quotient; raises if it is not well defined."""
    action = []
    for g in cover.group.elements():
        row = []
        for n in range(cover.top + 1):
            moved = proj.maps[n][cover.action[g][n]]
            q = moved[reps[n]]
            if not np.array_equal(q[proj.maps[n]], moved):
                raise ValueError(f"action of element {g} does not descend in degree {n}")
            row.append(q)
        action.append(tuple(row))
    return GSSet(proj.target, cover.group, tuple(action))


def fixed_subcomplex(x: GSSet, h: Subgroup) -> tuple[TruncatedSSet, SimplicialMap]:
    """Simplices fixed by every element of ``h``, with the inclusion map."""
    if not h.parent.same_as(x.group):
        raise ValueError("subgroup is not a subgroup of the acting group")
    if not h.is_closed():
        raise ValueError("element set is not a subgroup")
    keep = []
    for n in range(x.top + 1):
        mask = np.ones(x.counts[n], dtype=bool)
        ident = np.arange(x.counts[n], dtype=INDEX)
        for g in h.elements:
            if g:
                mask &= x.action[g][n] == ident
        keep.append(np.flatnonzero(mask).astype(INDEX))
    return _subcomplex(x.space, keep)


def _subcomplex(x: TruncatedSSet, keep: list[np.ndarray]) -> tuple[TruncatedSSet, SimplicialMap]:
    top = x.top
    renum = []
    for n in range(top + 1):
        r = np.full(x.counts[n], -1, dtype=INDEX)
        r[keep[n]] = np.arange(len(keep[n]), dtype=INDEX)
        renum.append(r)
    faces, degens = [()], []
    for n in range(top + 1):
        if n > 0:
            faces.append(tuple(renum[n - 1][x.faces[n][i][keep[n]]] for i in range(n + 1)))
            if any((f < 0).any() for f in faces[-1]):
                raise ValueError(f"kept simplices are not closed under faces in degree {n}")
        if n < top:
            degens.append(tuple(renum[n + 1][x.degens[n][i][keep[n]]] for i in range(n + 1)))
            if any((d < 0).any() for d in degens[-1]):
                raise ValueError(f"kept simplices are not closed under degeneracies in degree {n}")
        else:
            degens.append(())
    labels = None
    if x.labels is not None:
        labels = tuple(tuple(x.labels[n][int(s)] for s in keep[n]) for n in range(top + 1))
    sub = TruncatedSSet(top, tuple(len(k) for k in keep), tuple(faces), tuple(degens), labels)
    return sub, SimplicialMap(sub, x, tuple(keep))


def restrict_map(f: SimplicialMap, sub_source: SimplicialMap, sub_target: SimplicialMap) -> SimplicialMap:
    """Restrict ``f`` along inclusions of subcomplexes; raises if the image escapes."""
    maps = []
    for n in range(f.source.top + 1):
        r = np.full(sub_target.target.counts[n], -1, dtype=INDEX)
        r[sub_target.maps[n]] = np.arange(len(sub_target.maps[n]), dtype=INDEX)
        image = r[f.maps[n][sub_source.maps[n]]]
        if (image < 0).any():
            raise ValueError(f"map does not carry the subcomplex into the target subcomplex in degree {n}")
        maps.append(image)
    return SimplicialMap(sub_source.source, sub_target.source, tuple(maps))


@dataclass
class IsoResult:
    ok: bool
    witness: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def is_isomorphism(f: SimplicialMap, source_action: GSSet | None = None,
                   target_action: GSSet | None = None) -> IsoResult:
    """Degreewise bijectivity and, when actions are given, equivariance.

    The witness names the first failure: degree plus the offending simplices
    or group element.
    """
    for n in range(f.source.top + 1):
        m = f.maps[n]
        cs, ct = f.source.counts[n], f.target.counts[n]
        if cs != ct:
            return IsoResult(False, {"degree": n, "reason": "count mismatch", "source": cs, "target": ct})
        order = np.argsort(m, kind="stable")
        dup = np.flatnonzero(m[order][1:] == m[order][:-1])
        if len(dup):
            s1, s2 = int(order[dup[0]]), int(order[dup[0] + 1])
            return IsoResult(False, {"degree": n, "reason": "not injective",
                                     "simplices": (s1, s2), "image": int(m[s1])})
    if source_action is not None and target_action is not None:
        eq = equivariance_failure(f, source_action, target_action)
        if eq:
            return IsoResult(False, eq)
    return IsoResult(True, {})


def equivariance_failure(f: SimplicialMap, source_action: GSSet, target_action: GSSet) -> dict:
    """Empty dict if ``f(g·s) == g·f(s)`` everywhere, else the first failure."""
    if not source_action.group.same_as(target_action.group):
        return {"reason": "different groups"}
    for g in source_action.group.elements():
        for n in range(f.source.top + 1):
            lhs = f.maps[n][source_action.action[g][n]]
            rhs = target_action.action[g][n][f.maps[n]]
            bad = np.flatnonzero(lhs != rhs)
            if len(bad):
                s = int(bad[0])
                return {"degree": n, "reason": "not equivariant", "element": g, "simplex": s,
                        "label": repr(f.source.label(n, s))}
    return {}

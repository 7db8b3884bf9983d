"""Truncated simplicial sets with explicit face and degeneracy tables.

Simplices of degree ``n`` are the integers ``0 .. counts[n]-1``.  Optional
per-degree labels give each simplex a hashable name; constructions build
their tables by computing faces and degeneracies on labels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Sequence

import numpy as np

from ..algebra.groups import FinGroup, Subgroup
from ..errors import FormatError

INDEX = np.int64
DEFAULT_TOP = 4


def _frozen(values) -> np.ndarray:
    arr = np.asarray(values, dtype=INDEX)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    arr.setflags(write=False)
    return arr


def _index_levels(levels) -> list[dict]:
    out = []
    for n, level in enumerate(levels):
        idx = {lab: i for i, lab in enumerate(level)}
        if len(idx) != len(level):
            raise FormatError(f"duplicate simplex labels in degree {n}")
        out.append(idx)
    return out


@dataclass(frozen=True, eq=False)
class TruncatedSSet:
    top: int
    counts: tuple[int, ...]
    faces: tuple[tuple[np.ndarray, ...], ...]
    degens: tuple[tuple[np.ndarray, ...], ...]
    labels: tuple[tuple, ...] | None = None

    def __post_init__(self):
        top = int(self.top)
        object.__setattr__(self, "top", top)
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if top < 0 or len(counts) != top + 1:
            raise FormatError(f"expected {top + 1} simplex counts, got {len(counts)}")
        if len(self.faces) != top + 1 or len(self.degens) != top + 1:
            raise FormatError("face and degeneracy tables need one entry per degree")
        faces = []
        degens = []
        for n in range(top + 1):
            fn = tuple(_frozen(a) for a in self.faces[n])
            dn = tuple(_frozen(a) for a in self.degens[n])
            if len(fn) != (n + 1 if n > 0 else 0):
                raise FormatError(f"degree {n} needs {n + 1 if n else 0} face maps, got {len(fn)}")
            if len(dn) != (n + 1 if n < top else 0):
                raise FormatError(f"degree {n} needs {n + 1 if n < top else 0} degeneracies, got {len(dn)}")
            for i, a in enumerate(fn):
                if len(a) != counts[n] or (len(a) and (a.min() < 0 or a.max() >= counts[n - 1])):
                    raise FormatError(f"face d_{i} in degree {n} is malformed")
            for i, a in enumerate(dn):
                if len(a) != counts[n] or (len(a) and (a.min() < 0 or a.max() >= counts[n + 1])):
                    raise FormatError(f"degeneracy s_{i} in degree {n} is malformed")
            faces.append(fn)
            degens.append(dn)
        object.__setattr__(self, "faces", tuple(faces))
        object.__setattr__(self, "degens", tuple(degens))
        if self.labels is not None:
            labels = tuple(tuple(level) for level in self.labels)
            if len(labels) != top + 1 or any(len(labels[n]) != counts[n] for n in range(top + 1)):
                raise FormatError("label table does not match simplex counts")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_labels(
        cls,
        top: int,
        levels: Sequence[Sequence[Hashable]],
        face: Callable[[int, int, Hashable], Hashable],
        degen: Callable[[int, int, Hashable], Hashable],
    ) -> "TruncatedSSet":
        """Build tables from simplex labels and label-level structure maps.

        ``face(n, i, label)`` names ``d_i`` of a degree-``n`` simplex, and
        ``degen(n, i, label)`` names ``s_i``.
        """
        levels = [list(level) for level in levels]
        idx = _index_levels(levels)
        faces = [()]
        degens = []
        for n in range(top + 1):
            if n > 0:
                prev = idx[n - 1]
                try:
                    faces.append(tuple([prev[face(n, i, lab)] for lab in levels[n]] for i in range(n + 1)))
                except KeyError as exc:
                    raise FormatError(f"a face in degree {n} lands outside degree {n - 1}: {exc}") from None
            if n < top:
                nxt = idx[n + 1]
                try:
                    degens.append(tuple([nxt[degen(n, i, lab)] for lab in levels[n]] for i in range(n + 1)))
                except KeyError as exc:
                    raise FormatError(f"a degeneracy in degree {n} lands outside degree {n + 1}: {exc}") from None
            else:
                degens.append(())
        out = cls(top, tuple(len(level) for level in levels), tuple(faces), tuple(degens), tuple(tuple(l) for l in levels))
        out.__dict__["_index"] = idx
        return out

    @cached_property
    def _index(self) -> list[dict]:
        if self.labels is None:
            return [{i: i for i in range(c)} for c in self.counts]
        return _index_levels(self.labels)

    def index(self, n: int) -> dict:
        """Map from label to simplex id in degree ``n``."""
        return self._index[n]

    def label(self, n: int, s: int):
        return self.labels[n][s] if self.labels is not None else s

    def face(self, n: int, i: int, s: int) -> int:
        return int(self.faces[n][i][s])

    def degen(self, n: int, i: int, s: int) -> int:
        return int(self.degens[n][i][s])

    def size(self) -> int:
        return sum(self.counts)

    def truncate(self, top: int) -> "TruncatedSSet":
        """The same simplicial set stored only up to degree ``top``."""
        if top > self.top:
            raise ValueError(f"cannot extend truncation {self.top} to {top}")
        if top == self.top:
            return self
        degens = tuple(self.degens[n] if n < top else () for n in range(top + 1))
        labels = self.labels[:top + 1] if self.labels is not None else None
        return TruncatedSSet(top, self.counts[:top + 1], self.faces[:top + 1], degens, labels)

    def with_labels(self, labels) -> "TruncatedSSet":
        return TruncatedSSet(self.top, self.counts, self.faces, self.degens, labels)

    def same_tables(self, other: "TruncatedSSet") -> bool:
        """Identical counts, faces and degeneracies (labels ignored)."""
        if self.top != other.top or self.counts != other.counts:
            return False
        for n in range(self.top + 1):
            for a, b in zip(self.faces[n], other.faces[n]):
                if not np.array_equal(a, b):
                    return False
            for a, b in zip(self.degens[n], other.degens[n]):
                if not np.array_equal(a, b):
                    return False
        return True

    def __repr__(self) -> str:
        return f"TruncatedSSet(top={self.top}, counts={self.counts})"


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    source: TruncatedSSet
    target: TruncatedSSet
    maps: tuple[np.ndarray, ...]

    def __post_init__(self):
        if self.source.top != self.target.top:
            raise FormatError("source and target of a simplicial map must share a truncation")
        maps = tuple(_frozen(m) for m in self.maps)
        if len(maps) != self.source.top + 1:
            raise FormatError("a simplicial map needs one table per degree")
        for n, m in enumerate(maps):
            if len(m) != self.source.counts[n]:
                raise FormatError(f"map table in degree {n} has the wrong length")
            if len(m) and (m.min() < 0 or m.max() >= self.target.counts[n]):
                raise FormatError(f"map table in degree {n} points outside the target")
        object.__setattr__(self, "maps", maps)

    @classmethod
    def from_labels(cls, source: TruncatedSSet, target: TruncatedSSet,
                    fn: Callable[[int, Hashable], Hashable]) -> "SimplicialMap":
        maps = []
        for n in range(source.top + 1):
            idx = target.index(n)
            try:
                maps.append([idx[fn(n, lab)] for lab in source.labels[n]])
            except KeyError as exc:
                raise FormatError(f"map sends a degree-{n} simplex to a missing label {exc}") from None
        return cls(source, target, tuple(maps))

    @classmethod
    def identity(cls, x: TruncatedSSet) -> "SimplicialMap":
        return cls(x, x, tuple(np.arange(c, dtype=INDEX) for c in x.counts))

    def __call__(self, n: int, s: int) -> int:
        return int(self.maps[n][s])

    def then(self, other: "SimplicialMap") -> "SimplicialMap":
        """``other ∘ self``."""
        if self.target is not other.source and not self.target.same_tables(other.source):
            raise FormatError("maps are not composable")
        return SimplicialMap(self.source, other.target, tuple(b[a] for a, b in zip(self.maps, other.maps)))

    def same_as(self, other: "SimplicialMap") -> bool:
        return all(np.array_equal(a, b) for a, b in zip(self.maps, other.maps))

    def is_identity(self) -> bool:
        return self.source.counts == self.target.counts and all(
            np.array_equal(m, np.arange(len(m))) for m in self.maps
        )

    def inverse(self) -> "SimplicialMap":
        """Inverse of a degreewise bijection."""
        inv = []
        for n, m in enumerate(self.maps):
            if len(m) != self.target.counts[n] or len(np.unique(m)) != len(m):
                raise ValueError(f"map is not bijective in degree {n}")
            out = np.empty(len(m), dtype=INDEX)
            out[m] = np.arange(len(m), dtype=INDEX)
            inv.append(out)
        return SimplicialMap(self.target, self.source, tuple(inv))

    def __repr__(self) -> str:
        return f"SimplicialMap({self.source.counts} -> {self.target.counts})"


@dataclass(frozen=True, eq=False)
class GSSet:
    """A truncated simplicial set with a finite group acting simplicially.

    ``action[g][n][s]`` is ``g·s`` for a degree-``n`` simplex ``s``.
    """

    space: TruncatedSSet
    group: FinGroup
    action: tuple[tuple[np.ndarray, ...], ...]

    def __post_init__(self):
        if len(self.action) != self.group.order:
            raise FormatError("the action needs one table set per group element")
        action = []
        for g, per_degree in enumerate(self.action):
            if len(per_degree) != self.space.top + 1:
                raise FormatError(f"action of element {g} needs one table per degree")
            row = []
            for n, a in enumerate(per_degree):
                arr = _frozen(a)
                if len(arr) != self.space.counts[n] or (len(arr) and (arr.min() < 0 or arr.max() >= self.space.counts[n])):
                    raise FormatError(f"action table of element {g} in degree {n} is malformed")
                row.append(arr)
            action.append(tuple(row))
        object.__setattr__(self, "action", tuple(action))

    @classmethod
    def trivial(cls, space: TruncatedSSet, group: FinGroup | None = None) -> "GSSet":
        group = group or FinGroup.trivial()
        ident = tuple(np.arange(c, dtype=INDEX) for c in space.counts)
        return cls(space, group, (ident,) * group.order)

    @classmethod
    def from_labels(cls, space: TruncatedSSet, group: FinGroup,
                    fn: Callable[[int, int, Hashable], Hashable]) -> "GSSet":
        """``fn(g, n, label)`` names ``g·s``."""
        action = []
        for g in group.elements():
            row = []
            for n in range(space.top + 1):
                idx = space.index(n)
                if g == 0:
                    row.append(np.arange(space.counts[n], dtype=INDEX))
                else:
                    row.append([idx[fn(g, n, lab)] for lab in space.labels[n]])
            action.append(tuple(row))
        return cls(space, group, tuple(action))

    @property
    def top(self) -> int:
        return self.space.top

    @property
    def counts(self) -> tuple[int, ...]:
        return self.space.counts

    def act(self, g: int, n: int, s: int) -> int:
        return int(self.action[g][n][s])

    def element_map(self, g: int) -> SimplicialMap:
        return SimplicialMap(self.space, self.space, self.action[g])

    def restrict(self, subgroup: Subgroup) -> "GSSet":
        return GSSet(self.space, subgroup.group, tuple(self.action[g] for g in subgroup.elements))

    def __repr__(self) -> str:
        return f"GSSet({self.group!r} on {self.space.counts})"


# -- standard simplicial sets ------------------------------------------------

def _monotone(n: int, k: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations_with_replacement(range(k + 1), n + 1))


def _drop(t: tuple, i: int) -> tuple:
    return t[:i] + t[i + 1:]


def _repeat(t: tuple, i: int) -> tuple:
    return t[: i + 1] + t[i:]


def standard_simplex(k: int, top: int = DEFAULT_TOP) -> TruncatedSSet:
    """``Δ^k``: degree-``n`` simplices are weakly increasing tuples in ``0..k``."""
    levels = [_monotone(n, k) for n in range(top + 1)]
    return TruncatedSSet.from_labels(top, levels, lambda n, i, t: _drop(t, i), lambda n, i, t: _repeat(t, i))


def boundary_simplex(k: int, top: int = DEFAULT_TOP) -> TruncatedSSet:
    """``∂Δ^k``: the simplices of ``Δ^k`` that miss at least one vertex."""
    full = set(range(k + 1))
    levels = [[t for t in _monotone(n, k) if set(t) != full] for n in range(top + 1)]
    return TruncatedSSet.from_labels(top, levels, lambda n, i, t: _drop(t, i), lambda n, i, t: _repeat(t, i))


def constant(elements, top: int = DEFAULT_TOP) -> TruncatedSSet:
    """A set viewed as a simplicial set with identity faces and degeneracies.

    ``elements`` is either a count or a sequence of hashable labels.
    """
    labels = list(range(elements)) if isinstance(elements, (int, np.integer)) else list(elements)
    m = len(labels)
    ident = np.arange(m, dtype=INDEX)
    faces = tuple(tuple(ident for _ in range(n + 1)) if n else () for n in range(top + 1))
    degens = tuple(tuple(ident for _ in range(n + 1)) if n < top else () for n in range(top + 1))
    return TruncatedSSet(top, (m,) * (top + 1), faces, degens, tuple(tuple(labels) for _ in range(top + 1)))


def point(top: int = DEFAULT_TOP) -> TruncatedSSet:
    return constant(["*"], top)


def empty(top: int = DEFAULT_TOP) -> TruncatedSSet:
    return constant(0, top)

"""Bisimplicial sets truncated in both directions, and their diagonals."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

import numpy as np

from ..algebra.groups import FinGroup
from ..errors import FormatError
from .sset import INDEX, GSSet, TruncatedSSet, _frozen, _index_levels


@dataclass(frozen=True, eq=False)
class BiSSet:
    """Simplices in bidegree ``(m, n)``; horizontal maps vary ``m``, vertical vary ``n``.

    ``hfaces[m][n][i]`` sends ``(m, n)`` to ``(m-1, n)``; ``vfaces[m][n][j]``
    sends ``(m, n)`` to ``(m, n-1)``; degeneracies go up likewise.  The
    optional ``action[g][m][n]`` permutes each bidegree.
    """

    tops: tuple[int, int]
    counts: tuple[tuple[int, ...], ...]
    hfaces: tuple
    hdegens: tuple
    vfaces: tuple
    vdegens: tuple
    labels: tuple | None = None
    group: FinGroup | None = None
    action: tuple | None = None

    def __post_init__(self):
        M, N = self.tops
        if len(self.counts) != M + 1 or any(len(r) != N + 1 for r in self.counts):
            raise FormatError("bidegree counts do not match the truncations")

        def freeze(table, lo_m, hi_m, lo_n, hi_n, dm, dn, name):
            out = []
            for m in range(M + 1):
                row = []
                for n in range(N + 1):
                    maps = table[m][n]
                    present = lo_m <= m <= hi_m and lo_n <= n <= hi_n
                    k = (m if dm else n) + 1
                    if not present:
                        if len(maps):
                            raise FormatError(f"{name} defined outside its range at ({m}, {n})")
                        row.append(())
                        continue
                    if len(maps) != k:
                        raise FormatError(f"{name} at ({m}, {n}) needs {k} maps")
                    frozen = []
                    for a in maps:
                        arr = _frozen(a)
                        tm, tn = m + dm, n + dn
                        if len(arr) != self.counts[m][n] or (len(arr) and (arr.min() < 0 or arr.max() >= self.counts[tm][tn])):
                            raise FormatError(f"{name} at ({m}, {n}) is malformed")
                        frozen.append(arr)
                    row.append(tuple(frozen))
                out.append(tuple(row))
            return tuple(out)

        object.__setattr__(self, "hfaces", freeze(self.hfaces, 1, M, 0, N, -1, 0, "horizontal face"))
        object.__setattr__(self, "hdegens", freeze(self.hdegens, 0, M - 1, 0, N, 1, 0, "horizontal degeneracy"))
        object.__setattr__(self, "vfaces", freeze(self.vfaces, 0, M, 1, N, 0, -1, "vertical face"))
        object.__setattr__(self, "vdegens", freeze(self.vdegens, 0, M, 0, N - 1, 0, 1, "vertical degeneracy"))
        if self.action is not None:
            if self.group is None or len(self.action) != self.group.order:
                raise FormatError("an action needs a group and one table set per element")
            object.__setattr__(self, "action", tuple(
                tuple(tuple(_frozen(a) for a in row) for row in per_g) for per_g in self.action
            ))

    @classmethod
    def from_labels(
        cls,
        tops: tuple[int, int],
        levels: Sequence[Sequence[Sequence[Hashable]]],
        hface: Callable, hdegen: Callable, vface: Callable, vdegen: Callable,
        group: FinGroup | None = None,
        act: Callable | None = None,
    ) -> "BiSSet":
        """Structure maps are given on labels: ``hface(m, n, i, label)`` etc.;
        ``act(g, m, n, label)`` names ``g·label``."""
        M, N = tops
        idx = [_index_levels(levels[m]) for m in range(M + 1)]

        def table(fn, dm, dn, ok):
            out = []
            for m in range(M + 1):
                row = []
                for n in range(N + 1):
                    if not ok(m, n):
                        row.append(())
                        continue
                    k = (m if dm else n) + 1
                    target = idx[m + dm][n + dn]
                    row.append(tuple([target[fn(m, n, i, lab)] for lab in levels[m][n]] for i in range(k)))
                out.append(tuple(row))
            return tuple(out)

        hf = table(hface, -1, 0, lambda m, n: m >= 1)
        hd = table(hdegen, 1, 0, lambda m, n: m < M)
        vf = table(vface, 0, -1, lambda m, n: n >= 1)
        vd = table(vdegen, 0, 1, lambda m, n: n < N)
        action = None
        if group is not None:
            action = tuple(
                tuple(
                    tuple(
                        np.arange(len(levels[m][n]), dtype=INDEX) if g == 0
                        else [idx[m][n][act(g, m, n, lab)] for lab in levels[m][n]]
                        for n in range(N + 1)
                    )
                    for m in range(M + 1)
                )
                for g in group.elements()
            )
        counts = tuple(tuple(len(levels[m][n]) for n in range(N + 1)) for m in range(M + 1))
        labels = tuple(tuple(tuple(levels[m][n]) for n in range(N + 1)) for m in range(M + 1))
        return cls(tops, counts, hf, hd, vf, vd, labels, group, action)

    def row(self, n: int) -> TruncatedSSet:
        """The horizontal simplicial set at vertical degree ``n``."""
        M, _ = self.tops
        return TruncatedSSet(
            M, tuple(self.counts[m][n] for m in range(M + 1)),
            tuple(self.hfaces[m][n] for m in range(M + 1)),
            tuple(self.hdegens[m][n] for m in range(M + 1)),
            tuple(tuple(self.labels[m][n]) for m in range(M + 1)) if self.labels else None,
        )

    def column(self, m: int) -> TruncatedSSet:
        """The vertical simplicial set at horizontal degree ``m``."""
        _, N = self.tops
        return TruncatedSSet(
            N, tuple(self.counts[m][n] for n in range(N + 1)),
            tuple(self.vfaces[m][n] for n in range(N + 1)),
            tuple(self.vdegens[m][n] for n in range(N + 1)),
            tuple(tuple(self.labels[m][n]) for n in range(N + 1)) if self.labels else None,
        )

    def __repr__(self) -> str:
        return f"BiSSet(tops={self.tops})"


def diagonal(b: BiSSet) -> TruncatedSSet | GSSet:
    """Degree ``n`` is bidegree ``(n, n)``; ``d_i`` is horizontal ``d_i`` after vertical ``d_i``."""
    M, N = b.tops
    if M != N:
        raise ValueError(f"the diagonal needs equal truncations, got {b.tops}")
    faces, degens = [()], []
    for n in range(N + 1):
        if n > 0:
            faces.append(tuple(b.hfaces[n][n - 1][i][b.vfaces[n][n][i]] for i in range(n + 1)))
        if n < N:
            degens.append(tuple(b.hdegens[n][n + 1][i][b.vdegens[n][n][i]] for i in range(n + 1)))
        else:
            degens.append(())
    labels = tuple(tuple(b.labels[n][n]) for n in range(N + 1)) if b.labels else None
    space = TruncatedSSet(N, tuple(b.counts[n][n] for n in range(N + 1)), tuple(faces), tuple(degens), labels)
    if b.action is None:
        return space
    return GSSet(space, b.group, tuple(tuple(b.action[g][n][n] for n in range(N + 1)) for g in b.group.elements()))

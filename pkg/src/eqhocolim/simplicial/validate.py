"""Checks of the simplicial identities, simplicial maps, and actions."""

from __future__ import annotations

from functools import singledispatch

import numpy as np

from ..errors import ValidationReport
from .bisimplicial import BiSSet
from .sset import GSSet, SimplicialMap, TruncatedSSet

MAX_REPORTED = 10


def _flag(report, rule, degree, lhs, rhs, detail, where_prefix=()):
    bad = np.flatnonzero(lhs != rhs)
    for s in bad[:MAX_REPORTED]:
        report.add(rule, where_prefix + (degree, int(s)), detail)
    return len(bad)


def _identities(faces, degens, counts, top, report, prefix="sset", where=()):
    """Simplicial identities for one simplicial direction.

    ``faces[n][i]`` maps degree n to n-1 and ``degens[n][i]`` maps n to n+1.
    """
    for n in range(2, top + 1):
        for j in range(n + 1):
            for i in range(j):
                _flag(report, f"{prefix}.face_face", n,
                      faces[n - 1][i][faces[n][j]], faces[n - 1][j - 1][faces[n][i]],
                      f"d_{i} d_{j} != d_{j - 1} d_{i}", where)
    for n in range(top):
        ident = np.arange(counts[n])
        for j in range(n + 1):
            up = degens[n][j]
            for i in range(n + 2):
                lhs = faces[n + 1][i][up]
                if i < j:
                    rhs = degens[n - 1][j - 1][faces[n][i]]
                    text = f"d_{i} s_{j} != s_{j - 1} d_{i}"
                elif i in (j, j + 1):
                    rhs = ident
                    text = f"d_{i} s_{j} != id"
                else:
                    rhs = degens[n - 1][j][faces[n][i - 1]]
                    text = f"d_{i} s_{j} != s_{j} d_{i - 1}"
                _flag(report, f"{prefix}.face_degeneracy", n, lhs, rhs, text, where)
    for n in range(top - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                _flag(report, f"{prefix}.degeneracy_degeneracy", n,
                      degens[n + 1][i][degens[n][j]], degens[n + 1][j + 1][degens[n][i]],
                      f"s_{i} s_{j} != s_{j + 1} s_{i}", where)


def _commutes(report, f, src, tgt, rule, where=()):
    """Whether the degreewise tables ``f`` commute with all structure maps."""
    for n in range(1, src.top + 1):
        for i in range(n + 1):
            _flag(report, f"{rule}.face", n, f[n - 1][src.faces[n][i]], tgt.faces[n][i][f[n]],
                  f"f d_{i} != d_{i} f", where)
    for n in range(src.top):
        for i in range(n + 1):
            _flag(report, f"{rule}.degeneracy", n, f[n + 1][src.degens[n][i]], tgt.degens[n][i][f[n]],
                  f"f s_{i} != s_{i} f", where)


@singledispatch
def validate_sset(value) -> ValidationReport:
    raise TypeError(f"cannot validate {type(value).__name__} as a simplicial object")


@validate_sset.register
def _(x: TruncatedSSet) -> ValidationReport:
    report = ValidationReport(repr(x))
    _identities(x.faces, x.degens, x.counts, x.top, report)
    return report


@validate_sset.register
def _(f: SimplicialMap) -> ValidationReport:
    report = ValidationReport(repr(f))
    _commutes(report, f.maps, f.source, f.target, "map")
    return report


@validate_sset.register
def _(x: GSSet) -> ValidationReport:
    report = ValidationReport(repr(x))
    report.extend(validate_sset(x.space))
    group = x.group
    for g in group.elements():
        _commutes(report, x.action[g], x.space, x.space, "action.simplicial", (g,))
        for n in range(x.top + 1):
            if len(np.unique(x.action[g][n])) != x.counts[n]:
                report.add("action.bijective", (g, n), "element does not permute this degree")
    for n in range(x.top + 1):
        if not np.array_equal(x.action[0][n], np.arange(x.counts[n])):
            report.add("action.identity", (0, n), "identity element acts nontrivially")
    for g1 in group.elements():
        for g2 in group.elements():
            g12 = group.mul(g1, g2)
            for n in range(x.top + 1):
                _flag(report, "action.homomorphism", n,
                      x.action[g1][n][x.action[g2][n]], x.action[g12][n],
                      "action of g1*g2 != action of g1 after g2", (g1, g2))
    return report


@validate_sset.register
def _(b: BiSSet) -> ValidationReport:
    report = ValidationReport(repr(b))
    M, N = b.tops
    for n in range(N + 1):
        _identities([b.hfaces[m][n] for m in range(M + 1)], [b.hdegens[m][n] for m in range(M + 1)],
                    [b.counts[m][n] for m in range(M + 1)], M, report, "horizontal", (("row", n),))
    for m in range(M + 1):
        _identities([b.vfaces[m][n] for n in range(N + 1)], [b.vdegens[m][n] for n in range(N + 1)],
                    [b.counts[m][n] for n in range(N + 1)], N, report, "vertical", (("column", m),))
    # horizontal and vertical structure maps commute
    for m in range(M + 1):
        for n in range(N + 1):
            where = (("bidegree", m, n),)
            for i in range(m + 1 if m >= 1 else 0):
                for j in range(n + 1 if n >= 1 else 0):
                    _flag(report, "bisimplicial.hface_vface", 0,
                          b.vfaces[m - 1][n][j][b.hfaces[m][n][i]], b.hfaces[m][n - 1][i][b.vfaces[m][n][j]],
                          f"dh_{i} dv_{j} do not commute", where)
                for j in range(n + 1 if n < N else 0):
                    _flag(report, "bisimplicial.hface_vdegen", 0,
                          b.vdegens[m - 1][n][j][b.hfaces[m][n][i]], b.hfaces[m][n + 1][i][b.vdegens[m][n][j]],
                          f"dh_{i} sv_{j} do not commute", where)
            for i in range(m + 1 if m < M else 0):
                for j in range(n + 1 if n >= 1 else 0):
                    _flag(report, "bisimplicial.hdegen_vface", 0,
                          b.vfaces[m + 1][n][j][b.hdegens[m][n][i]], b.hdegens[m][n - 1][i][b.vfaces[m][n][j]],
                          f"sh_{i} dv_{j} do not commute", where)
                for j in range(n + 1 if n < N else 0):
                    _flag(report, "bisimplicial.hdegen_vdegen", 0,
                          b.vdegens[m + 1][n][j][b.hdegens[m][n][i]], b.hdegens[m][n + 1][i][b.vdegens[m][n][j]],
                          f"sh_{i} sv_{j} do not commute", where)
    if b.action is not None:
        grp = b.group
        for g in grp.elements():
            a = b.action[g]
            for m in range(M + 1):
                for n in range(N + 1):
                    where = (g, ("bidegree", m, n))
                    if len(np.unique(a[m][n])) != b.counts[m][n]:
                        report.add("action.bijective", where, "element does not permute this bidegree")
                    for i in range(m + 1 if m >= 1 else 0):
                        _flag(report, "action.hface", 0, a[m - 1][n][b.hfaces[m][n][i]], b.hfaces[m][n][i][a[m][n]], "", where)
                    for i in range(m + 1 if m < M else 0):
                        _flag(report, "action.hdegen", 0, a[m + 1][n][b.hdegens[m][n][i]], b.hdegens[m][n][i][a[m][n]], "", where)
                    for j in range(n + 1 if n >= 1 else 0):
                        _flag(report, "action.vface", 0, a[m][n - 1][b.vfaces[m][n][j]], b.vfaces[m][n][j][a[m][n]], "", where)
                    for j in range(n + 1 if n < N else 0):
                        _flag(report, "action.vdegen", 0, a[m][n + 1][b.vdegens[m][n][j]], b.vdegens[m][n][j][a[m][n]], "", where)
        for g1 in grp.elements():
            for g2 in grp.elements():
                g12 = grp.mul(g1, g2)
                for m in range(M + 1):
                    for n in range(N + 1):
                        _flag(report, "action.homomorphism", 0,
                              b.action[g1][m][n][b.action[g2][m][n]], b.action[g12][m][n], "", (g1, g2, ("bidegree", m, n)))
    return report

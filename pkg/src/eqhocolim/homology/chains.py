"""Normalized chain complexes and their homology.

Chains are spanned by nondegenerate simplices and ``∂σ = Σ (−1)^i d_i σ``,
with degenerate faces contributing 0.  Homology is reported in degrees
``0..top−1``; the boundary out of degree ``top`` is kept so that degree
``top−1`` is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..simplicial.ops import nondegenerate
from ..simplicial.sset import INDEX, TruncatedSSet
from .smith import invariant_factors, rank_mod_p

Q = "q"
Z = "z"
DEFAULT_COEFFS = (Q, 2, 3, 5)


def parse_coeffs(spec) -> tuple:
    """``"q,2,3"`` or an iterable into a tuple of ``"q"``, ``"z"`` and primes."""
    items = spec.split(",") if isinstance(spec, str) else list(spec)
    out = []
    for item in items:
        item = str(item).strip().lower()
        if not item:
            continue
        if item in (Q, Z):
            out.append(item)
            continue
        p = int(item)
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"coefficient {item} is not a prime, 'q' or 'z'")
        out.append(p)
    if not out:
        raise ValueError("no coefficients given")
    return tuple(dict.fromkeys(out))


@dataclass(eq=False)
class ChainComplex:
    """``ids[n]`` are the nondegenerate simplices of degree ``n``; ``pos[n]``
    maps a simplex id to its basis position or -1.  ``boundaries[n]`` is the
    matrix of ``∂_n`` as sparse columns (index 0 is empty)."""

    space: TruncatedSSet
    ids: list[np.ndarray]
    pos: list[np.ndarray]
    boundaries: list[list[dict[int, int]]]
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def top(self) -> int:
        return self.space.top

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(len(i) for i in self.ids)

    def dense(self, n: int) -> np.ndarray:
        m = np.zeros((self.ranks[n - 1], self.ranks[n]), dtype=np.int64)
        for j, col in enumerate(self.boundaries[n]):
            for r, v in col.items():
                m[r, j] = v
        return m

    def factors(self, n: int) -> list[int]:
        """Invariant factors of ``∂_n`` (empty outside ``1..top``)."""
        if n < 1 or n > self.top:
            return []
        key = ("z", n)
        if key not in self._cache:
            self._cache[key] = invariant_factors(self.boundaries[n])
        return self._cache[key]

    def rank(self, n: int, coeff) -> int:
        if n < 1 or n > self.top:
            return 0
        if coeff in (Q, Z):
            return len(self.factors(n))
        key = (coeff, n)
        if key not in self._cache:
            self._cache[key] = rank_mod_p(self.boundaries[n], coeff)
        return self._cache[key]


def chain_complex(x: TruncatedSSet) -> ChainComplex:
    nd = nondegenerate(x)
    pos = []
    for n in range(x.top + 1):
        p = np.full(x.counts[n], -1, dtype=INDEX)
        p[nd[n]] = np.arange(len(nd[n]), dtype=INDEX)
        pos.append(p)
    boundaries: list[list[dict[int, int]]] = [[]]
    for n in range(1, x.top + 1):
        cols: list[dict[int, int]] = [dict() for _ in nd[n]]
        for i in range(n + 1):
            sign = -1 if i % 2 else 1
            rows = pos[n - 1][x.faces[n][i][nd[n]]]
            for j in np.flatnonzero(rows >= 0):
                col = cols[j]
                r = int(rows[j])
                v = col.get(r, 0) + sign
                if v:
                    col[r] = v
                else:
                    del col[r]
        boundaries.append(cols)
    cx = ChainComplex(x, nd, pos, boundaries)
    _check_square_zero(cx)
    return cx


def _check_square_zero(cx: ChainComplex) -> None:
    for n in range(2, cx.top + 1):
        lower = cx.boundaries[n - 1]
        for j, col in enumerate(cx.boundaries[n]):
            acc: dict[int, int] = {}
            for r, v in col.items():
                for rr, w in lower[r].items():
                    acc[rr] = acc.get(rr, 0) + v * w
            if any(acc.values()):
                raise AssertionError(f"boundary squared is nonzero on simplex {int(cx.ids[n][j])} of degree {n}")


@dataclass(frozen=True)
class HomologyProfile:
    """Homology in degrees ``0..top−1``.

    ``integral[k]`` is ``(free rank, torsion factors)`` when integral
    coefficients were requested; ``fields`` maps ``"q"`` or a prime to ranks.
    """

    top: int
    integral: tuple[tuple[int, tuple[int, ...]], ...] | None
    fields: dict

    def betti(self, coeff=Q) -> tuple[int, ...]:
        if coeff == Z:
            return tuple(free for free, _t in self.integral)
        return self.fields[coeff]

    def to_dict(self) -> dict:
        out: dict = {"degrees": list(range(self.top))}
        if self.integral is not None:
            out["integral"] = [{"free": free, "torsion": list(tors)} for free, tors in self.integral]
        for c, ranks in self.fields.items():
            out[str(c)] = list(ranks)
        return out

    def describe(self) -> str:
        parts = []
        if self.integral is not None:
            groups = []
            for free, tors in self.integral:
                terms = (["Z^%d" % free] if free > 1 else ["Z"] if free == 1 else []) + [f"Z/{t}" for t in tors]
                groups.append(" + ".join(terms) or "0")
            parts.append("Z: " + ", ".join(groups))
        for c, ranks in self.fields.items():
            name = "Q" if c == Q else f"F{c}"
            parts.append(f"{name}: " + " ".join(map(str, ranks)))
        return "; ".join(parts)


def homology(c: ChainComplex | TruncatedSSet, coeffs=(Z,) + DEFAULT_COEFFS) -> HomologyProfile:
    cx = c if isinstance(c, ChainComplex) else chain_complex(c)
    coeffs = parse_coeffs(coeffs)
    top = cx.top
    integral = None
    if Z in coeffs:
        integral = []
        for k in range(top):
            free = cx.ranks[k] - cx.rank(k, Z) - cx.rank(k + 1, Z)
            tors = tuple(t for t in cx.factors(k + 1) if t > 1)
            integral.append((free, tors))
        integral = tuple(integral)
    fields = {}
    for coeff in coeffs:
        if coeff == Z:
            continue
        fields[coeff] = tuple(cx.ranks[k] - cx.rank(k, coeff) - cx.rank(k + 1, coeff) for k in range(top))
    return HomologyProfile(top, integral, fields)


def field_ranks_from_factors(cx: ChainComplex, p: int) -> tuple[int, ...]:
    """``F_p`` Betti numbers read off the integral invariant factors.

    A second route to the same numbers as :func:`homology`, which eliminates
    modulo ``p`` directly: rank of ``∂`` mod ``p`` counts the factors ``p``
    does not divide.
    """
    def rk(n):
        return sum(1 for t in cx.factors(n) if t % p)
    return tuple(cx.ranks[k] - rk(k) - rk(k + 1) for k in range(cx.top))

"""Induced maps on homology and the fixed-point equivalence witness.

An equivariant map that is a G-homotopy equivalence restricts to homotopy
equivalences on every fixed subcomplex, so it induces isomorphisms on their
homology.  Checking this for every subgroup is a necessary condition only:
a passing report is "consistent with G-homotopy equivalence", not a proof.

The rank of ``H_k(f)`` over a field is read off one block matrix::

    M_k = [[∂_k^X, 0], [f_k, ∂_{k+1}^Y]]
    rank H_k(f) = rank M_k − rank ∂_k^X − rank ∂_{k+1}^Y

and ``H_k(f)`` is bijective iff that rank equals both Betti numbers.  The
integral verdict is the conjunction of the rational and all prime verdicts;
this is sound for every checked field but can miss torsion at primes that
were not configured.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra.groups import FinGroup, subgroups
from ..errors import EquivarianceError
from ..simplicial.ops import equivariance_failure, fixed_subcomplex, restrict_map
from ..simplicial.sset import GSSet, SimplicialMap
from .chains import DEFAULT_COEFFS, Q, Z, ChainComplex, HomologyProfile, chain_complex, homology, parse_coeffs
from .smith import rank_mod_p, rank_over_q


def chain_map_columns(f: SimplicialMap, cx: ChainComplex, cy: ChainComplex, n: int) -> list[dict[int, int]]:
    """``f_n`` on normalized chains; simplices sent to degenerate ones map to 0."""
    image = cy.pos[n][f.maps[n][cx.ids[n]]]
    return [{int(r): 1} if r >= 0 else {} for r in image]


def _rank(columns, coeff) -> int:
    return rank_over_q(columns) if coeff in (Q, Z) else rank_mod_p(columns, coeff)


def induced_rank(f: SimplicialMap, cx: ChainComplex, cy: ChainComplex, k: int, coeff) -> int:
    """Rank of ``H_k(f)`` over ``coeff`` (``"q"`` or a prime)."""
    shift = cx.ranks[k - 1] if k >= 1 else 0
    lower = cx.boundaries[k] if k >= 1 else [{}] * cx.ranks[0]
    cols = [dict(col) for col in lower]
    for j, col in enumerate(chain_map_columns(f, cx, cy, k)):
        for r, v in col.items():
            cols[j][shift + r] = v
    if k + 1 <= cy.top:
        for col in cy.boundaries[k + 1]:
            cols.append({shift + r: v for r, v in col.items()})
    return _rank(cols, coeff) - cx.rank(k, coeff) - cy.rank(k + 1, coeff)


@dataclass
class InducedIso:
    """Per coefficient system, per degree: source rank, target rank, rank of
    the induced map, and whether the map is bijective."""

    degrees: int
    verdicts: dict
    ranks: dict

    @property
    def ok(self) -> bool:
        return all(all(v) for v in self.verdicts.values())

    def first_failure(self):
        for k in range(self.degrees):
            for coeff, v in self.verdicts.items():
                if not v[k]:
                    return coeff, k
        return None


def induced_iso(f: SimplicialMap, coeffs=DEFAULT_COEFFS, max_degree: int | None = None,
                complexes: tuple[ChainComplex, ChainComplex] | None = None) -> InducedIso:
    """Whether ``f`` induces isomorphisms on homology in degrees ``0..max_degree``.

    ``max_degree`` defaults to ``top − 1``; with ``"z"`` among the coefficients
    an extra ``"z"`` verdict is the conjunction of all field verdicts.
    """
    coeffs = parse_coeffs(coeffs)
    top = f.source.top
    degrees = top if max_degree is None else min(max_degree + 1, top)
    cx, cy = complexes or (chain_complex(f.source), chain_complex(f.target))
    fields = [c for c in coeffs if c != Z]
    if Z in coeffs and Q not in fields:
        fields.insert(0, Q)
    verdicts, ranks = {}, {}
    for coeff in fields:
        vs, rs = [], []
        for k in range(degrees):
            bx = cx.ranks[k] - cx.rank(k, coeff) - cx.rank(k + 1, coeff)
            by = cy.ranks[k] - cy.rank(k, coeff) - cy.rank(k + 1, coeff)
            r = induced_rank(f, cx, cy, k, coeff) if bx == by else None
            vs.append(bx == by and r == bx)
            rs.append((bx, by, r))
        verdicts[coeff] = vs
        ranks[coeff] = rs
    if Z in coeffs:
        verdicts = {Z: [all(verdicts[c][k] for c in fields) for k in range(degrees)], **verdicts}
    return InducedIso(degrees, verdicts, ranks)


@dataclass
class SubgroupVerdict:
    subgroup: tuple[int, ...]
    source: HomologyProfile
    target: HomologyProfile
    induced: InducedIso

    @property
    def ok(self) -> bool:
        return self.induced.ok


@dataclass
class EquivalenceWitnessReport:
    group: FinGroup
    coeffs: tuple
    top: int
    per_subgroup: list[SubgroupVerdict] = field(default_factory=list)
    truncation_caveat: bool = True

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.per_subgroup)

    def first_failure(self) -> dict | None:
        for s in self.per_subgroup:
            hit = s.induced.first_failure()
            if hit is not None:
                coeff, k = hit
                rs = s.induced.ranks[Q if coeff == Z else coeff][k]
                return {"subgroup": list(s.subgroup), "coefficients": str(coeff), "degree": k,
                        "source_rank": rs[0], "target_rank": rs[1], "induced_rank": rs[2]}
        return None

    def summary(self) -> str:
        if self.ok:
            return (f"consistent with G-homotopy equivalence: homology isomorphism on all "
                    f"{len(self.per_subgroup)} fixed subcomplexes in degrees 0..{self.top - 1}")
        w = self.first_failure()
        return (f"not a G-homotopy equivalence: subgroup {w['subgroup']}, degree {w['degree']}, "
                f"coefficients {w['coefficients']} (ranks {w['source_rank']} -> {w['target_rank']}, "
                f"induced {w['induced_rank']})")

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "coefficients": [str(c) for c in self.coeffs],
            "degrees": list(range(self.top)),
            "truncation_caveat": self.truncation_caveat,
            "subgroups": [
                {"elements": list(s.subgroup), "ok": s.ok,
                 "source": s.source.to_dict(), "target": s.target.to_dict(),
                 "verdicts": {str(c): v for c, v in s.induced.verdicts.items()}}
                for s in self.per_subgroup
            ],
            "witness": self.first_failure(),
        }


def g_equivalence_witness(f: SimplicialMap, source: GSSet, target: GSSet,
                          coeffs=DEFAULT_COEFFS) -> EquivalenceWitnessReport:
    """Run :func:`induced_iso` on the restriction of ``f`` to every ``H``-fixed
    subcomplex, subgroups in the order :func:`subgroups` lists them.

    Raises :class:`EquivarianceError` before any homology if ``f`` is not
    equivariant.
    """
    if f.source is not source.space and not f.source.same_tables(source.space):
        raise ValueError("map source differs from the given G-simplicial set")
    if f.target is not target.space and not f.target.same_tables(target.space):
        raise ValueError("map target differs from the given G-simplicial set")
    bad = equivariance_failure(f, source, target)
    if bad:
        raise EquivarianceError("map is not equivariant", bad)
    coeffs = parse_coeffs(coeffs)
    report = EquivalenceWitnessReport(source.group, coeffs, f.source.top)
    for h in subgroups(source.group):
        xs, ix = fixed_subcomplex(source, h)
        ys, iy = fixed_subcomplex(target, h)
        fh = restrict_map(f, ix, iy)
        cx, cy = chain_complex(xs), chain_complex(ys)
        induced = induced_iso(fh, coeffs, complexes=(cx, cy))
        report.per_subgroup.append(SubgroupVerdict(tuple(int(e) for e in h.elements),
                                                   homology(cx, coeffs), homology(cy, coeffs), induced))
    return report


def identity_check(x: GSSet, coeffs=DEFAULT_COEFFS) -> EquivalenceWitnessReport:
    return g_equivalence_witness(SimplicialMap.identity(x.space), x, x, coeffs)


__all__ = [
    "EquivalenceWitnessReport", "InducedIso", "SubgroupVerdict", "chain_map_columns",
    "g_equivalence_witness", "identity_check", "induced_iso", "induced_rank",
]

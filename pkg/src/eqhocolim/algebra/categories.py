"""Finite categories, group actions on them, and functors between them.

Composition convention: ``comp[(g, f)]`` is ``g∘f``, "g after f", defined
exactly when ``tgt(f) == src(g)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from ..errors import EquivarianceError, FormatError, ValidationReport
from .groups import FinGroup, Subgroup

DEFAULT_MAX_OBJECTS = 8
DEFAULT_MAX_MORPHISMS = 40


@dataclass(frozen=True, eq=False)
class FinCategory:
    n_objects: int
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    identities: tuple[int, ...]
    comp: Mapping[tuple[int, int], int]
    obj_labels: tuple | None = None
    mor_labels: tuple | None = None
    factors: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "src", tuple(int(s) for s in self.src))
        object.__setattr__(self, "tgt", tuple(int(t) for t in self.tgt))
        object.__setattr__(self, "identities", tuple(int(i) for i in self.identities))
        object.__setattr__(self, "comp", {(int(g), int(f)): int(h) for (g, f), h in dict(self.comp).items()})
        n, m = self.n_objects, len(self.src)
        if n < 0:
            raise FormatError("negative object count")
        if len(self.tgt) != m:
            raise FormatError(f"{m} sources but {len(self.tgt)} targets")
        if len(self.identities) != n:
            raise FormatError(f"{len(self.identities)} identities for {n} objects")
        for f in range(m):
            if not (0 <= self.src[f] < n and 0 <= self.tgt[f] < n):
                raise FormatError(f"morphism {f} has an endpoint out of range")
        for x, i in enumerate(self.identities):
            if not 0 <= i < m:
                raise FormatError(f"identity of object {x} is morphism {i}, out of range")
        for (g, f), h in self.comp.items():
            if not (0 <= g < m and 0 <= f < m and 0 <= h < m):
                raise FormatError(f"composition entry ({g}, {f}) -> {h} is out of range")
        if self.obj_labels is not None and len(self.obj_labels) != n:
            raise FormatError("object label count does not match object count")
        if self.mor_labels is not None and len(self.mor_labels) != m:
            raise FormatError("morphism label count does not match morphism count")

    @property
    def n_morphisms(self) -> int:
        return len(self.src)

    def objects(self) -> range:
        return range(self.n_objects)

    def morphisms(self) -> range:
        return range(len(self.src))

    def compose(self, g: int, f: int) -> int:
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise ValueError(f"morphisms {g} and {f} are not composable") from None

    def compose_path(self, path: Sequence[int]) -> int:
        """Compose ``path = (f1, ..., fk)`` read left to right, i.e. ``fk∘...∘f1``."""
        h = path[0]
        for f in path[1:]:
            h = self.compose(f, h)
        return h

    def is_identity(self, f: int) -> bool:
        return self.identities[self.src[f]] == f

    @cached_property
    def _hom(self) -> dict[tuple[int, int], tuple[int, ...]]:
        table: dict[tuple[int, int], list[int]] = {}
        for f in range(self.n_morphisms):
            table.setdefault((self.src[f], self.tgt[f]), []).append(f)
        return {k: tuple(v) for k, v in table.items()}

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        return self._hom.get((x, y), ())

    @cached_property
    def _out(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n_objects)]
        for f in range(self.n_morphisms):
            out[self.src[f]].append(f)
        return tuple(tuple(o) for o in out)

    def out_of(self, x: int) -> tuple[int, ...]:
        return self._out[x]

    @cached_property
    def _in(self) -> tuple[tuple[int, ...], ...]:
        into: list[list[int]] = [[] for _ in range(self.n_objects)]
        for f in range(self.n_morphisms):
            into[self.tgt[f]].append(f)
        return tuple(tuple(o) for o in into)

    def into(self, y: int) -> tuple[int, ...]:
        return self._in[y]

    def composable_pairs(self):
        """Pairs ``(g, f)`` with ``tgt(f) == src(g)``."""
        for f in range(self.n_morphisms):
            for g in self._out[self.tgt[f]]:
                yield g, f

    def obj_label(self, x: int):
        return self.obj_labels[x] if self.obj_labels is not None else x

    def mor_label(self, f: int):
        return self.mor_labels[f] if self.mor_labels is not None else f

    @cached_property
    def _opposite(self) -> "FinCategory":
        op = FinCategory(
            self.n_objects,
            self.tgt,
            self.src,
            self.identities,
            {(f, g): h for (g, f), h in self.comp.items()},
            self.obj_labels,
            self.mor_labels,
        )
        op.__dict__["_opposite"] = self
        return op

    def opposite(self) -> "FinCategory":
        return self._opposite

    def same_as(self, other: "FinCategory") -> bool:
        return self is other or (
            self.n_objects == other.n_objects
            and self.src == other.src
            and self.tgt == other.tgt
            and self.identities == other.identities
            and self.comp == other.comp
        )

    def __repr__(self) -> str:
        return f"FinCategory({self.n_objects} objects, {self.n_morphisms} morphisms)"

    # -- standard categories ---------------------------------------------

    @classmethod
    def discrete(cls, n: int, labels=None) -> "FinCategory":
        return cls(n, tuple(range(n)), tuple(range(n)), tuple(range(n)),
                   {(x, x): x for x in range(n)}, labels)

    @classmethod
    def from_preorder(cls, n: int, relation, obj_labels=None) -> "FinCategory":
        """Thin category on ``n`` objects; ``relation`` is closed reflexively and transitively."""
        rel = {(x, x) for x in range(n)} | {(int(a), int(b)) for a, b in relation}
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(rel), list(rel)):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
        pairs = sorted(rel)
        index = {p: i for i, p in enumerate(pairs)}
        comp = {}
        for (b, c) in pairs:
            for (a, b2) in pairs:
                if b2 == b:
                    comp[(index[(b, c)], index[(a, b)])] = index[(a, c)]
        return cls(
            n,
            tuple(p[0] for p in pairs),
            tuple(p[1] for p in pairs),
            tuple(index[(x, x)] for x in range(n)),
            comp,
            obj_labels,
            tuple(pairs),
        )

    @classmethod
    def ordinal(cls, n: int) -> "FinCategory":
        """The poset ``[n] = {0 < 1 < ... < n}``."""
        return cls.from_preorder(n + 1, [(i, i + 1) for i in range(n)])

    @classmethod
    def one_object(cls, group: FinGroup) -> "FinCategory":
        """The category with a single object whose endomorphisms are ``group``."""
        n = group.order
        return cls(1, (0,) * n, (0,) * n, (0,),
                   {(g, f): group.mul(g, f) for g in range(n) for f in range(n)})

    @classmethod
    def free(cls, n: int, edges: Sequence[tuple[int, int]], obj_labels=None) -> "FinCategory":
        """Free category on an acyclic quiver; morphisms are edge paths.

        Morphism labels are the tuples of edge indices along each path
        (the empty tuple labels identities, paired with their object).
        """
        edges = [(int(a), int(b)) for a, b in edges]
        paths: list[tuple[int, int, tuple[int, ...]]] = [(x, x, ()) for x in range(n)]
        frontier = [p for p in paths]
        while frontier:
            nxt = []
            for (s, t, es) in frontier:
                for k, (a, b) in enumerate(edges):
                    if a == t:
                        p = (s, b, es + (k,))
                        if len(p[2]) > n:
                            raise FormatError("quiver has a cycle; free category would be infinite")
                        nxt.append(p)
            paths.extend(nxt)
            frontier = nxt
        index = {(p[0], p[2]): i for i, p in enumerate(paths)}
        comp = {}
        for gi, (gs, gt, ge) in enumerate(paths):
            for fi, (fs, ft, fe) in enumerate(paths):
                if ft == gs:
                    comp[(gi, fi)] = index[(fs, fe + ge)]
        return cls(
            n,
            tuple(p[0] for p in paths),
            tuple(p[1] for p in paths),
            tuple(range(n)),
            comp,
            obj_labels,
            tuple((p[0], p[2]) if not p[2] else p[2] for p in paths),
        )


def product_category(a: FinCategory, b: FinCategory) -> FinCategory:
    """``a × b``: object ``(x, y)`` has id ``x*|obj b| + y``, morphism ``(f, h)`` id ``f*|mor b| + h``."""
    nb, mb = b.n_objects, b.n_morphisms
    src = tuple(a.src[f] * nb + b.src[h] for f in a.morphisms() for h in b.morphisms())
    tgt = tuple(a.tgt[f] * nb + b.tgt[h] for f in a.morphisms() for h in b.morphisms())
    ids = tuple(a.identities[x] * mb + b.identities[y] for x in a.objects() for y in b.objects())
    pairs_b = list(b.composable_pairs())
    comp = {}
    for g, f in a.composable_pairs():
        gf = a.comp[(g, f)]
        for k, h in pairs_b:
            comp[(g * mb + k, f * mb + h)] = gf * mb + b.comp[(k, h)]
    obj_labels = tuple((a.obj_label(x), b.obj_label(y)) for x in a.objects() for y in b.objects())
    mor_labels = tuple((a.mor_label(f), b.mor_label(h)) for f in a.morphisms() for h in b.morphisms())
    return FinCategory(a.n_objects * nb, src, tgt, ids, comp, obj_labels, mor_labels, factors=(a, b))


def validate_category(cat: FinCategory) -> ValidationReport:
    report = ValidationReport(repr(cat))
    for x, i in enumerate(cat.identities):
        if cat.src[i] != x or cat.tgt[i] != x:
            report.add("category.identity_endpoints", (x,), f"identity {i} is not an endomorphism of {x}")
    expected = set(cat.composable_pairs())
    for key in cat.comp:
        if key not in expected:
            report.add("category.comp_domain", key, "composition defined on a non-composable pair")
    for key in expected:
        if key not in cat.comp:
            report.add("category.comp_missing", key, "composable pair has no composite")
    for (g, f), h in cat.comp.items():
        if (g, f) in expected and (cat.src[h] != cat.src[f] or cat.tgt[h] != cat.tgt[g]):
            report.add("category.comp_endpoints", (g, f), f"composite {h} has wrong endpoints")
    if not report.ok:
        return report
    for f in cat.morphisms():
        if cat.comp[(cat.identities[cat.tgt[f]], f)] != f:
            report.add("category.left_unit", (f,), "1∘f != f")
        if cat.comp[(f, cat.identities[cat.src[f]])] != f:
            report.add("category.right_unit", (f,), "f∘1 != f")
    comp = cat.comp
    for g, f in expected:
        gf = comp[(g, f)]
        for h in cat.into(cat.src[f]):
            if comp[(gf, h)] != comp[(g, comp[(f, h)])]:
                report.add("category.associativity", (g, f, h), "(g∘f)∘h != g∘(f∘h)")
    return report


@dataclass(frozen=True, eq=False)
class GCatAction:
    """A finite group acting on a finite category by functors.

    ``obj_perm[g][x]`` is ``g·x``; ``mor_perm[g][f]`` is ``g·f``.
    """

    group: FinGroup
    category: FinCategory
    obj_perm: tuple[tuple[int, ...], ...]
    mor_perm: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "obj_perm", tuple(tuple(int(v) for v in p) for p in self.obj_perm))
        object.__setattr__(self, "mor_perm", tuple(tuple(int(v) for v in p) for p in self.mor_perm))
        n, m, k = self.category.n_objects, self.category.n_morphisms, self.group.order
        if len(self.obj_perm) != k or len(self.mor_perm) != k:
            raise FormatError(f"action needs one object and one morphism permutation per element ({k})")
        for g in range(k):
            if len(self.obj_perm[g]) != n or any(not 0 <= v < n for v in self.obj_perm[g]):
                raise FormatError(f"object permutation of element {g} is malformed")
            if len(self.mor_perm[g]) != m or any(not 0 <= v < m for v in self.mor_perm[g]):
                raise FormatError(f"morphism permutation of element {g} is malformed")

    def obj(self, g: int, x: int) -> int:
        return self.obj_perm[g][x]

    def mor(self, g: int, f: int) -> int:
        return self.mor_perm[g][f]

    @classmethod
    def trivial(cls, group: FinGroup, category: FinCategory) -> "GCatAction":
        return cls(group, category,
                   (tuple(category.objects()),) * group.order,
                   (tuple(category.morphisms()),) * group.order)

    @classmethod
    def on_thin(cls, group: FinGroup, category: FinCategory, obj_perm) -> "GCatAction":
        """The action on a thin category determined by its object permutations."""
        index = {(category.src[f], category.tgt[f]): f for f in category.morphisms()}
        if len(index) != category.n_morphisms:
            raise FormatError("category is not thin")
        mor_perm = []
        for perm in obj_perm:
            try:
                mor_perm.append(tuple(index[(perm[category.src[f]], perm[category.tgt[f]])]
                                      for f in category.morphisms()))
            except KeyError:
                raise FormatError("object permutation does not preserve the order relation") from None
        return cls(group, category, tuple(obj_perm), tuple(mor_perm))

    def restrict(self, subgroup: Subgroup) -> "GCatAction":
        """The action of ``subgroup`` (reindexed as its own group)."""
        return GCatAction(subgroup.group, self.category,
                          tuple(self.obj_perm[g] for g in subgroup.elements),
                          tuple(self.mor_perm[g] for g in subgroup.elements))

    def on_opposite(self) -> "GCatAction":
        return GCatAction(self.group, self.category.opposite(), self.obj_perm, self.mor_perm)

    def chain(self, g: int, x0: int, morphs: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
        """Apply ``g`` to a chain labelled ``(x0, (f1, ..., fn))``."""
        return self.obj_perm[g][x0], tuple(self.mor_perm[g][f] for f in morphs)


def product_action(a: GCatAction, b: GCatAction, category: FinCategory | None = None) -> GCatAction:
    if not a.group.same_as(b.group):
        raise ValueError("product action needs both factors acted on by the same group")
    cat = category or product_category(a.category, b.category)
    nb, mb = b.category.n_objects, b.category.n_morphisms
    obj = tuple(
        tuple(a.obj_perm[g][x] * nb + b.obj_perm[g][y] for x in a.category.objects() for y in b.category.objects())
        for g in a.group.elements()
    )
    mor = tuple(
        tuple(a.mor_perm[g][f] * mb + b.mor_perm[g][h] for f in a.category.morphisms() for h in b.category.morphisms())
        for g in a.group.elements()
    )
    return GCatAction(a.group, cat, obj, mor)


def validate_action(action: GCatAction) -> ValidationReport:
    report = ValidationReport("category action")
    cat, grp = action.category, action.group
    for g in grp.elements():
        op, mp = action.obj_perm[g], action.mor_perm[g]
        if len(set(op)) != len(op) or len(set(mp)) != len(mp):
            report.add("action.bijective", (g,), "element does not act bijectively")
        for f in cat.morphisms():
            if cat.src[mp[f]] != op[cat.src[f]] or cat.tgt[mp[f]] != op[cat.tgt[f]]:
                report.add("action.functor_endpoints", (g, f), "g·f has the wrong endpoints")
        for x in cat.objects():
            if mp[cat.identities[x]] != cat.identities[op[x]]:
                report.add("action.functor_identity", (g, x), "g does not preserve the identity of x")
        for (h, f), hf in cat.comp.items():
            key = (mp[h], mp[f])
            if cat.comp.get(key) != mp[hf]:
                report.add("action.functor_composition", (g, h, f), "g·(h∘f) != g·h ∘ g·f")
    if action.obj_perm[0] != tuple(cat.objects()) or action.mor_perm[0] != tuple(cat.morphisms()):
        report.add("action.identity", (0,), "the identity element does not act trivially")
    for g1 in grp.elements():
        for g2 in grp.elements():
            g12 = grp.mul(g1, g2)
            o1, o2, o12 = action.obj_perm[g1], action.obj_perm[g2], action.obj_perm[g12]
            m1, m2, m12 = action.mor_perm[g1], action.mor_perm[g2], action.mor_perm[g12]
            if any(o12[x] != o1[o2[x]] for x in cat.objects()) or any(
                m12[f] != m1[m2[f]] for f in cat.morphisms()
            ):
                report.add("action.homomorphism", (g1, g2), "action of g1*g2 != action of g1 after g2")
    return report


def stabilizer(action: GCatAction, x: int) -> Subgroup:
    if not 0 <= x < action.category.n_objects:
        raise IndexError(f"object {x} is out of range")
    return Subgroup(action.group, tuple(g for g in action.group.elements() if action.obj_perm[g][x] == x))


def orbits(action: GCatAction) -> list[list[int]]:
    """Partition of the objects into orbits, each sorted; ordered by least element."""
    seen: set[int] = set()
    result = []
    for x in action.category.objects():
        if x in seen:
            continue
        orbit = sorted({action.obj_perm[g][x] for g in action.group.elements()})
        seen.update(orbit)
        result.append(orbit)
    return result


@dataclass(frozen=True, eq=False)
class CatFunctor:
    """A functor between finite categories."""

    source: FinCategory
    target: FinCategory
    obj_map: tuple[int, ...]
    mor_map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "obj_map", tuple(int(v) for v in self.obj_map))
        object.__setattr__(self, "mor_map", tuple(int(v) for v in self.mor_map))
        if len(self.obj_map) != self.source.n_objects or len(self.mor_map) != self.source.n_morphisms:
            raise FormatError("functor tables do not match the source category")
        if any(not 0 <= v < self.target.n_objects for v in self.obj_map):
            raise FormatError("functor sends an object out of range")
        if any(not 0 <= v < self.target.n_morphisms for v in self.mor_map):
            raise FormatError("functor sends a morphism out of range")

    @classmethod
    def identity(cls, cat: FinCategory) -> "CatFunctor":
        return cls(cat, cat, tuple(cat.objects()), tuple(cat.morphisms()))

    def then(self, other: "CatFunctor") -> "CatFunctor":
        """``other ∘ self``."""
        return CatFunctor(self.source, other.target,
                          tuple(other.obj_map[x] for x in self.obj_map),
                          tuple(other.mor_map[f] for f in self.mor_map))

    def opposite(self) -> "CatFunctor":
        return CatFunctor(self.source.opposite(), self.target.opposite(), self.obj_map, self.mor_map)

    def same_as(self, other: "CatFunctor") -> bool:
        return self.obj_map == other.obj_map and self.mor_map == other.mor_map

    def equivariance_failures(self, act_src: GCatAction, act_tgt: GCatAction) -> list[tuple]:
        """``(g, "object"|"morphism", index)`` for every place ``S(g·c) != g·S(c)``."""
        out = []
        for g in act_src.group.elements():
            for x in self.source.objects():
                if self.obj_map[act_src.obj_perm[g][x]] != act_tgt.obj_perm[g][self.obj_map[x]]:
                    out.append((g, "object", x))
            for f in self.source.morphisms():
                if self.mor_map[act_src.mor_perm[g][f]] != act_tgt.mor_perm[g][self.mor_map[f]]:
                    out.append((g, "morphism", f))
        return out

    def is_equivariant(self, act_src: GCatAction, act_tgt: GCatAction) -> bool:
        return not self.equivariance_failures(act_src, act_tgt)

    def require_equivariant(self, act_src: GCatAction, act_tgt: GCatAction) -> None:
        bad = self.equivariance_failures(act_src, act_tgt)
        if bad:
            g, kind, c = bad[0]
            raise EquivarianceError(f"functor is not equivariant: fails for g={g} at {kind} {c}", (g, c))


def validate_cat_functor(func: CatFunctor) -> ValidationReport:
    report = ValidationReport("functor")
    s, t = func.source, func.target
    for f in s.morphisms():
        h = func.mor_map[f]
        if t.src[h] != func.obj_map[s.src[f]] or t.tgt[h] != func.obj_map[s.tgt[f]]:
            report.add("functor.endpoints", (f,), "image morphism has the wrong endpoints")
    for x in s.objects():
        if func.mor_map[s.identities[x]] != t.identities[func.obj_map[x]]:
            report.add("functor.identity", (x,), "identity not preserved")
    for (g, f), h in s.comp.items():
        if t.comp.get((func.mor_map[g], func.mor_map[f])) != func.mor_map[h]:
            report.add("functor.composition", (g, f), "F(g∘f) != F(g)∘F(f)")
    return report

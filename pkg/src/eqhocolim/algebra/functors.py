"""Diagrams of simplicial sets or categories, and group actions on them.

A diagram is a functor from a finite category into simplicial sets
(``kind="sset"``) or into finite categories (``kind="cat"``).  A right
G-functor adds a family ``eta[g][x]: F(x) -> F(g·x)``.  A contravariant
diagram on ``C`` is a diagram on ``C.opposite()``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..errors import FormatError, ValidationReport
from ..simplicial.sset import GSSet, SimplicialMap, TruncatedSSet
from .categories import CatFunctor, FinCategory, GCatAction, stabilizer
from .groups import FinGroup, Subgroup

SSET = "sset"
CAT = "cat"


def _identity_of(value):
    if isinstance(value, TruncatedSSet):
        return SimplicialMap.identity(value)
    return CatFunctor.identity(value)


def _same_map(a, b) -> bool:
    return a.same_as(b)


def _same_object(a, b) -> bool:
    if a is b:
        return True
    if isinstance(a, TruncatedSSet) and isinstance(b, TruncatedSSet):
        return a.same_tables(b)
    if isinstance(a, FinCategory) and isinstance(b, FinCategory):
        return a.same_as(b)
    return False


@dataclass(frozen=True, eq=False)
class FunctorData:
    source: FinCategory
    kind: str
    values: tuple
    maps: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "maps", tuple(self.maps))
        if self.kind not in (SSET, CAT):
            raise FormatError(f"unknown diagram kind {self.kind!r}")
        if len(self.values) != self.source.n_objects:
            raise FormatError(f"diagram has {len(self.values)} values for {self.source.n_objects} objects")
        if len(self.maps) != self.source.n_morphisms:
            raise FormatError(f"diagram has {len(self.maps)} maps for {self.source.n_morphisms} morphisms")
        expected = TruncatedSSet if self.kind == SSET else FinCategory
        for v in self.values:
            if not isinstance(v, expected):
                raise FormatError(f"{self.kind} diagram has a value of type {type(v).__name__}")

    def value(self, x: int):
        return self.values[x]

    def map(self, f: int):
        return self.maps[f]

    @classmethod
    def build(cls, source: FinCategory, kind: str, value_fn: Callable[[int], object],
              map_fn: Callable[[int, object, object], object]) -> "FunctorData":
        """``map_fn(f, source_value, target_value)`` builds the map for morphism ``f``."""
        values = [value_fn(x) for x in source.objects()]
        maps = [map_fn(f, values[source.src[f]], values[source.tgt[f]]) for f in source.morphisms()]
        return cls(source, kind, tuple(values), tuple(maps))

    @classmethod
    def constant(cls, source: FinCategory, value, kind: str = SSET) -> "FunctorData":
        ident = _identity_of(value)
        return cls(source, kind, (value,) * source.n_objects, (ident,) * source.n_morphisms)

    def __repr__(self) -> str:
        return f"FunctorData({self.kind}, {self.source!r})"


@dataclass(frozen=True, eq=False)
class RightGFunctor:
    """A diagram with ``eta[g][x]: F(x) -> F(g·x)`` defining a group action on it."""

    functor: FunctorData
    action: GCatAction
    eta: tuple

    def __post_init__(self):
        object.__setattr__(self, "eta", tuple(tuple(row) for row in self.eta))
        if not self.action.category.same_as(self.functor.source):
            raise FormatError("the action is on a different category than the diagram's source")
        if len(self.eta) != self.action.group.order:
            raise FormatError("eta needs one row per group element")
        for g, row in enumerate(self.eta):
            if len(row) != self.functor.source.n_objects:
                raise FormatError(f"eta row for element {g} needs one map per object")

    @property
    def source(self) -> FinCategory:
        return self.functor.source

    @property
    def group(self) -> FinGroup:
        return self.action.group

    @property
    def kind(self) -> str:
        return self.functor.kind

    def value(self, x: int):
        return self.functor.values[x]

    def map(self, f: int):
        return self.functor.maps[f]

    def eta_map(self, g: int, x: int):
        return self.eta[g][x]

    @classmethod
    def build(cls, action: GCatAction, kind: str, value_fn, map_fn, eta_fn) -> "RightGFunctor":
        """``eta_fn(g, x, source_value, target_value)`` builds ``eta[g][x]``."""
        functor = FunctorData.build(action.category, kind, value_fn, map_fn)
        vals = functor.values
        eta = tuple(
            tuple(
                _identity_of(vals[x]) if g == 0 else eta_fn(g, x, vals[x], vals[action.obj_perm[g][x]])
                for x in action.category.objects()
            )
            for g in action.group.elements()
        )
        return cls(functor, action, eta)

    @classmethod
    def constant(cls, action: GCatAction, value: GSSet) -> "RightGFunctor":
        """Constant diagram on a G-simplicial set; ``eta[g][x]`` is the action of ``g``."""
        if not value.group.same_as(action.group):
            raise ValueError("the constant value must carry an action of the same group")
        functor = FunctorData.constant(action.category, value.space)
        eta = tuple((value.element_map(g),) * action.category.n_objects for g in action.group.elements())
        return cls(functor, action, eta)

    def restrict_group(self, subgroup: Subgroup) -> "RightGFunctor":
        """The same diagram with only ``subgroup`` acting."""
        return RightGFunctor(self.functor, self.action.restrict(subgroup),
                             tuple(self.eta[g] for g in subgroup.elements))

    def __repr__(self) -> str:
        return f"RightGFunctor({self.kind}, {self.source!r}, {self.group!r})"


@dataclass(frozen=True, eq=False)
class GFunctorMorphism:
    """Components ``eps[x]: F1(x) -> F2(x)`` of a map of right G-functors."""

    source: RightGFunctor
    target: RightGFunctor
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.source.source.same_as(self.target.source):
            raise FormatError("source and target diagrams live on different categories")
        if len(self.components) != self.source.source.n_objects:
            raise FormatError("a morphism needs one component per object")

    @classmethod
    def build(cls, source: RightGFunctor, target: RightGFunctor, fn) -> "GFunctorMorphism":
        """``fn(x, source_value, target_value)`` builds the component at ``x``."""
        return cls(source, target, tuple(fn(x, source.value(x), target.value(x)) for x in source.source.objects()))


# -- validation ---------------------------------------------------------------

def _validate_value(v) -> ValidationReport:
    from ..simplicial.validate import validate_sset
    from .categories import validate_category
    return validate_sset(v) if isinstance(v, TruncatedSSet) else validate_category(v)


def _validate_map(m) -> ValidationReport:
    from ..simplicial.validate import validate_sset
    from .categories import validate_cat_functor
    return validate_sset(m) if isinstance(m, SimplicialMap) else validate_cat_functor(m)


def validate_functor_data(func: FunctorData, check_values: bool = True) -> ValidationReport:
    report = ValidationReport(repr(func))
    cat = func.source
    if check_values:
        for x, v in enumerate(func.values):
            report.extend(_validate_value(v), f"value[{x}].")
    for f, m in enumerate(func.maps):
        if not (_same_object(m.source, func.values[cat.src[f]]) and _same_object(m.target, func.values[cat.tgt[f]])):
            report.add("functor.endpoints", (f,), "map does not go from F(src) to F(tgt)")
            continue
        if check_values:
            report.extend(_validate_map(m), f"map[{f}].")
    if not report.ok:
        return report
    for x in cat.objects():
        if not func.maps[cat.identities[x]].same_as(_identity_of(func.values[x])):
            report.add("functor.identity", (x,), "F(1_x) is not the identity")
    for (g, f), h in cat.comp.items():
        if not func.maps[f].then(func.maps[g]).same_as(func.maps[h]):
            report.add("functor.composition", (g, f), "F(g∘f) != F(g)∘F(f)")
    return report


def validate_right_g_functor(rf: RightGFunctor, check_values: bool = True) -> ValidationReport:
    from .categories import validate_action
    report = ValidationReport(repr(rf))
    report.extend(validate_action(rf.action))
    report.extend(validate_functor_data(rf.functor, check_values))
    if not report.ok:
        return report
    act, cat, grp = rf.action, rf.source, rf.group
    for g in grp.elements():
        for x in cat.objects():
            e = rf.eta[g][x]
            if not (_same_object(e.source, rf.value(x)) and _same_object(e.target, rf.value(act.obj_perm[g][x]))):
                report.add("def1.endpoints", (g, x), "eta[g][x] does not go from F(x) to F(g·x)")
    if not report.ok:
        return report
    for x in cat.objects():
        if not rf.eta[0][x].same_as(_identity_of(rf.value(x))):
            report.add("def1.unit", (x,), "eta for the identity element is not the identity (axiom 1)")
    for g1 in grp.elements():
        for g2 in grp.elements():
            g12 = grp.mul(g1, g2)
            for x in cat.objects():
                lhs = rf.eta[g2][x].then(rf.eta[g1][act.obj_perm[g2][x]])
                if not lhs.same_as(rf.eta[g12][x]):
                    report.add("def1.cocycle", (g1, g2, x), "eta[g1][g2·x] ∘ eta[g2][x] != eta[g1*g2][x] (axiom 2)")
    for g in grp.elements():
        for f in cat.morphisms():
            x, y = cat.src[f], cat.tgt[f]
            lhs = rf.map(f).then(rf.eta[g][y])
            rhs = rf.eta[g][x].then(rf.map(act.mor_perm[g][f]))
            if not lhs.same_as(rhs):
                report.add("def1.naturality", (g, f), "eta[g][y] ∘ F(f) != F(g·f) ∘ eta[g][x] (axiom 3)")
    return report


def validate_morphism(eps: GFunctorMorphism, check_values: bool = False) -> ValidationReport:
    report = ValidationReport("morphism of right G-functors")
    f1, f2 = eps.source, eps.target
    cat, act = f1.source, f1.action
    for x, c in enumerate(eps.components):
        if not (_same_object(c.source, f1.value(x)) and _same_object(c.target, f2.value(x))):
            report.add("morphism.endpoints", (x,), "component does not go from F1(x) to F2(x)")
        elif check_values:
            report.extend(_validate_map(c), f"component[{x}].")
    if not report.ok:
        return report
    for f in cat.morphisms():
        x, y = cat.src[f], cat.tgt[f]
        if not f1.map(f).then(eps.components[y]).same_as(eps.components[x].then(f2.map(f))):
            report.add("morphism.naturality", (f,), "eps[y] ∘ F1(f) != F2(f) ∘ eps[x]")
    for g in f1.group.elements():
        for x in cat.objects():
            lhs = eps.components[x].then(f2.eta[g][x])
            rhs = f1.eta[g][x].then(eps.components[act.obj_perm[g][x]])
            if not lhs.same_as(rhs):
                report.add("def2.equivariance", (g, x), "eta2[g][x] ∘ eps[x] != eps[g·x] ∘ eta1[g][x]")
    return report


# -- operations ---------------------------------------------------------------

def restrict_action(rf: RightGFunctor, x: int):
    """``F(x)`` as an object with an action of the stabilizer of ``x``.

    Returns ``(value_with_action, stabilizer)`` where the first entry is a
    :class:`GSSet` for simplicial diagrams or a :class:`GCatAction` for
    category-valued ones, indexed by the stabilizer's own group.
    """
    stab = stabilizer(rf.action, x)
    maps = [rf.eta[g][x] for g in stab.elements]
    if rf.kind == SSET:
        return GSSet(rf.value(x), stab.group, tuple(m.maps for m in maps)), stab
    return GCatAction(stab.group, rf.value(x), tuple(m.obj_map for m in maps), tuple(m.mor_map for m in maps)), stab


def precompose_action(rf: RightGFunctor, s: CatFunctor, act_s: GCatAction) -> RightGFunctor:
    """``F∘S`` for an equivariant ``S``; ``eta`` is ``eta[g][S(d)]``."""
    if not s.target.same_as(rf.source):
        raise ValueError("S must land in the source category of F")
    s.require_equivariant(act_s, rf.action)
    functor = FunctorData(
        s.source, rf.kind,
        tuple(rf.value(s.obj_map[d]) for d in s.source.objects()),
        tuple(rf.map(s.mor_map[f]) for f in s.source.morphisms()),
    )
    eta = tuple(tuple(rf.eta[g][s.obj_map[d]] for d in s.source.objects()) for g in rf.group.elements())
    return RightGFunctor(functor, act_s, eta)


def postcompose_action(t, rf: RightGFunctor, kind: str | None = None) -> RightGFunctor:
    """``T∘F`` for a plain functor ``T`` given by ``on_object`` and ``on_map``.

    ``t.on_map(m, source=..., target=...)`` receives the already-built
    images of the endpoints so every map shares the same value objects.
    """
    cat = rf.source
    values = tuple(t.on_object(v) for v in rf.functor.values)

    def image(m, x, y):
        return t.on_map(m, source=values[x], target=values[y])

    maps = tuple(image(rf.map(f), cat.src[f], cat.tgt[f]) for f in cat.morphisms())
    out_kind = kind or getattr(t, "kind", None) or (SSET if isinstance(values[0] if values else None, TruncatedSSet) else rf.kind)
    eta = tuple(
        tuple(image(rf.eta[g][x], x, rf.action.obj_perm[g][x]) for x in cat.objects())
        for g in rf.group.elements()
    )
    return RightGFunctor(FunctorData(cat, out_kind, values, maps), rf.action, eta)


def compose_morphisms(first: GFunctorMorphism, second: GFunctorMorphism) -> GFunctorMorphism:
    return GFunctorMorphism(first.source, second.target,
                            tuple(a.then(b) for a, b in zip(first.components, second.components)))

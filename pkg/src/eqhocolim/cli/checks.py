"""The named checks run by ``verify``.

Each check pulls its inputs from a document (a G-category ``A``, a
simplicial diagram ``F`` on it, and where needed an equivariant ``S: D -> C``
with the action on ``D``), runs one construction or canonical map, and
returns a :class:`CheckResult` with a located witness on failure.

Name                 What is checked
===================  =========================================================
axioms               every block validates; nerve, bar, coend, hocolim and the
                     Grothendieck construction of ``X -> X↓C`` validate
iso:eq1              ``(F×*) ⊗ N(-↓C↓-) -> B(C, F×*)`` is an equivariant bijection
iso:eq2              ``F ⊗ N(-↓C↓-) ⊗ * -> B(F, C, *)`` likewise
iso:eq7              ``hocolim_D F∘S -> F ⊗_C N(-↓S)`` likewise
iso:eq11             ``N(-↓C↓-) ⊗ * -> N(-↓C)``, objectwise and natural
iso:eq12             ``B(F, C, *) -> hocolim F``
iso:eq22             ``B(B(F, C, T), D, *) -> B(F, C, B(T, D, *))``, ``T = hom(-, S-)``
contractible:eq28    every fixed subcomplex of every ``N(c↓C)`` under subgroups of
                     ``G_c`` has the homology of a point
witness:thm1         bar map induced by the thickening ``Z × Δ¹ -> Z`` of ``Z = F×*``
witness:thm2         hocolim map induced by the thickening ``F × Δ¹ -> F``, or by a
                     given diagram map
witness:thm4         ``hocolim_C S_h F -> hocolim_D F``
witness:thm5         ``hocolim_D F∘S -> hocolim_C F``
equivariance:eq9     ``hocolim F -> colim F`` commutes with the action
equivariance:eq10    ``hocolim F -> N(C)`` commutes with the action
===================  =========================================================

Every ``witness:*`` check also accepts an explicit equivariant map between
two G-simplicial sets, which is then witnessed directly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..algebra.categories import CatFunctor, GCatAction, validate_action, validate_category
from ..algebra.functors import SSET, GFunctorMorphism, RightGFunctor, restrict_action
from ..algebra.groups import subgroups
from ..algebra.validate import validate
from ..constructions import (
    assoc, bar_ft, bar_induced, bar_to_hocolim, coend, coend_to_bar, coend_to_bar_ft, cofinality_map,
    comma_collapse, comma_under_functor, grothendieck, hocolim, hocolim_induced, hom_profunctor, nerve,
    nerve_of, product_diagram, pushdown_map, reduction, terminal, thickening, to_colim, to_nerve,
    truncated, under_categories, under_nerves,
)
from ..errors import FormatError
from ..homology import g_equivalence_witness, homology, parse_coeffs
from ..simplicial.ops import fixed_subcomplex
from ..simplicial.sset import GSSet, SimplicialMap
from ..simplicial.validate import validate_sset
from .document import Block, Document

CHECK_NAMES = (
    "axioms", "iso:eq1", "iso:eq2", "iso:eq7", "iso:eq11", "iso:eq12", "iso:eq22", "contractible:eq28",
    "witness:thm1", "witness:thm2", "witness:thm4", "witness:thm5", "equivariance:eq9", "equivariance:eq10",
)


class InputError(FormatError):
    """The document lacks what a check needs; reported with exit status 2."""


@dataclass
class CheckResult:
    name: str
    ok: bool
    summary: str
    details: dict = field(default_factory=dict)
    witness: dict | None = None
    caveats: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "summary": self.summary, "details": self.details,
                "witness": self.witness, "caveats": self.caveats, "seconds": round(self.seconds, 4)}


@dataclass
class Inputs:
    """Names chosen in a document; ``None`` picks the first fitting block."""

    doc: Document
    top: int | None = None
    coeffs: tuple = ("q", 2, 3, 5)
    diagram: str | None = None
    action: str | None = None
    functor: str | None = None
    map: str | None = None

    def __post_init__(self):
        self.coeffs = parse_coeffs(self.coeffs)

    # -- resolution -----------------------------------------------------------

    def _diagrams(self) -> list[Block]:
        return [b for b in self.doc.of_kind("functor", "diagram") if b.refs["kind"] == SSET]

    def diagram_block(self) -> Block:
        if self.diagram is not None:
            b = self.doc.block(self.diagram, ("functor",))
            if b.refs.get("sub") != "diagram" or b.refs["kind"] != SSET:
                raise InputError(f"{self.diagram!r} is not a simplicial diagram")
            return b
        ds = self._diagrams()
        if self.action is not None:
            ds = [b for b in ds if b.refs["on"] == self.action]
        if not ds:
            raise InputError("the document has no simplicial diagram (functor ... on ACTION)")
        return ds[0]

    def level(self) -> int:
        if self.top is not None:
            return self.top
        ds = self._diagrams()
        return ds[0].value.value(0).top if ds and ds[0].value.source.n_objects else self.doc.top

    def f(self) -> RightGFunctor:
        rf = self.diagram_block().value
        return self._cut(rf)

    def _cut(self, rf: RightGFunctor) -> RightGFunctor:
        have = rf.value(0).top if rf.source.n_objects else self.level()
        want = self.level()
        if want > have:
            raise InputError(f"truncation {want} exceeds the diagram's stored truncation {have}")
        return rf if want == have else truncated(rf, want)

    def a(self) -> GCatAction:
        if self.action is not None:
            return self.doc.get(self.action, ("gaction",))
        ds = self._diagrams()
        if ds:
            return self.doc.get(ds[0].refs["on"])
        acts = self.doc.of_kind("gaction")
        if not acts:
            raise InputError("the document has no gaction block")
        return acts[0].value

    def s(self) -> tuple[CatFunctor, GCatAction, GCatAction]:
        """``S``, the action on its source and the action on its target."""
        blocks = self.doc.of_kind("functor", "cat")
        if self.functor is not None:
            b = self.doc.block(self.functor, ("functor",))
            if b.refs.get("sub") != "cat":
                raise InputError(f"{self.functor!r} is not a functor between categories")
        elif blocks:
            b = blocks[0]
        else:
            raise InputError("the document has no functor S: D -> C ('functor S from D to C')")
        s = b.value
        act_c = self._action_on(b.refs["to"])
        act_d = self._action_on(b.refs["from"], act_c.group)
        return s, act_d, act_c

    def _action_on(self, cname: str, group=None) -> GCatAction:
        for b in self.doc.of_kind("gaction"):
            if b.refs["on"] == cname and (group is None or b.value.group.same_as(group)):
                return b.value
        raise InputError(f"no gaction block on category {cname!r}")

    def explicit_map(self):
        if self.map is None:
            return None
        b = self.doc.block(self.map, ("map",))
        if isinstance(b.value, SimplicialMap):
            src = self.doc.get(b.refs["from"])
            tgt = self.doc.get(b.refs["to"])
            if not isinstance(src, GSSet) or not isinstance(tgt, GSSet):
                raise InputError(f"map {self.map!r} must go between ssets declared 'by GROUP'")
            return b.value, src, tgt
        return b.value


# -- helpers ----------------------------------------------------------------------

def _iso_result(name: str, cm, detail: dict | None = None) -> CheckResult:
    res = cm.check_iso()
    ok = bool(res)
    summary = "equivariant bijection in every degree" if ok else "not an equivariant bijection"
    return CheckResult(name, ok, summary, detail or {}, None if ok else _jsonable(res.witness))


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "item"):
        return value.item()
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return repr(value)


def _truncation_caveat(top: int) -> str:
    return f"homology compared in degrees 0..{top - 1} of a truncation-{top} model"


def _witness_result(name: str, report, extra: dict | None = None) -> CheckResult:
    details = {"subgroups": len(report.per_subgroup), "coefficients": [str(c) for c in report.coeffs]}
    details.update(extra or {})
    return CheckResult(name, report.ok, report.summary(), details, _jsonable(report.first_failure()),
                       [_truncation_caveat(report.top)])


def _point_homology(x: GSSet, coeffs) -> dict | None:
    """First subgroup whose fixed subcomplex does not look like a point."""
    for h in subgroups(x.group):
        sub, _inc = fixed_subcomplex(x, h)
        prof = homology(sub, coeffs)
        for c, ranks in prof.fields.items():
            for k, r in enumerate(ranks):
                if r != (1 if k == 0 else 0):
                    return {"subgroup": list(h.elements), "coefficients": str(c), "degree": k, "rank": r}
    return None


# -- checks ------------------------------------------------------------------------

def check_axioms(inp: Inputs) -> CheckResult:
    failures = []
    for b in inp.doc.blocks:
        if b.kind == "eta":
            continue
        report = validate(b.value)
        if not report.ok:
            v = report.violations[0]
            failures.append({"block": b.name, "rule": v.rule, "where": _jsonable(v.where), "detail": v.detail})
    built = 0
    if not failures:
        top = inp.level()
        for b in inp._diagrams():
            f = inp._cut(b.value)
            act = f.action
            outputs = {
                "nerve": nerve(act.category, act, top),
                "bar": bar_ft(f, terminal(act.on_opposite(), top), top).gsset,
                "coend": coend(product_diagram(f, terminal(act.on_opposite(), top))).gsset,
                "hocolim": hocolim(f, top).gsset,
            }
            for what, value in outputs.items():
                built += 1
                report = validate_sset(value)
                if not report.ok:
                    v = report.violations[0]
                    failures.append({"block": b.name, "construction": what, "rule": v.rule,
                                     "where": _jsonable(v.where), "detail": v.detail})
            gc = grothendieck(under_categories(act))
            built += 1
            for report in (validate_category(gc.category), validate_action(gc.action),
                           validate_sset(nerve(gc.category, gc.action, top))):
                if not report.ok:
                    v = report.violations[0]
                    failures.append({"block": b.name, "construction": "grothendieck", "rule": v.rule,
                                     "where": _jsonable(v.where), "detail": v.detail})
        for b in inp.doc.of_kind("functor", "diagram"):
            if b.refs["kind"] != SSET:
                gc = grothendieck(b.value)
                built += 1
                for report in (validate_category(gc.category), validate_action(gc.action)):
                    if not report.ok:
                        v = report.violations[0]
                        failures.append({"block": b.name, "construction": "grothendieck", "rule": v.rule,
                                         "where": _jsonable(v.where), "detail": v.detail})
    ok = not failures
    blocks = sum(1 for b in inp.doc.blocks if b.kind != "eta")
    summary = (f"{blocks} blocks and {built} constructions valid" if ok
               else f"{len(failures)} failure(s); first in {failures[0]['block']}")
    return CheckResult("axioms", ok, summary, {"blocks": blocks, "constructions": built},
                       failures[0] if failures else None)


def check_eq1(inp):
    f = inp.f()
    z = product_diagram(f, terminal(f.action.on_opposite(), inp.level()))
    return _iso_result("iso:eq1", coend_to_bar(z, inp.level()))


def check_eq2(inp):
    f = inp.f()
    return _iso_result("iso:eq2", coend_to_bar_ft(f, terminal(f.action.on_opposite(), inp.level()), inp.level()))


def check_eq7(inp):
    s, act_d, _act_c = inp.s()
    return _iso_result("iso:eq7", reduction(inp.f(), s, act_d, inp.level()))


def check_eq11(inp):
    return _iso_result("iso:eq11", comma_collapse(inp.a(), inp.level()))


def check_eq12(inp):
    return _iso_result("iso:eq12", bar_to_hocolim(inp.f(), inp.level()))


def check_eq22(inp):
    s, act_d, act_c = inp.s()
    top = inp.level()
    t = hom_profunctor(CatFunctor.identity(s.target), s, act_c, act_d, act_c, top)
    return _iso_result("iso:eq22", assoc(inp.f(), t, terminal(act_d.on_opposite(), top), top))


def check_eq28(inp):
    act = inp.a()
    top = inp.level()
    un = under_nerves(act, top)
    checked = 0
    for c in act.category.objects():
        value, stab = restrict_action(un, c)
        checked += len(subgroups(value.group))
        bad = _point_homology(value, inp.coeffs)
        if bad is not None:
            bad["subgroup"] = [stab.elements[k] for k in bad["subgroup"]]
            bad["object"] = c
            return CheckResult("contractible:eq28", False,
                               f"N({c}↓C) has a fixed subcomplex that is not acyclic", {"pairs": checked},
                               bad, [_truncation_caveat(top)])
    return CheckResult("contractible:eq28", True,
                       f"all {checked} (object, subgroup of its stabilizer) fixed subcomplexes have "
                       "the homology of a point", {"pairs": checked}, None, [_truncation_caveat(top)])


def _explicit(inp, name):
    m = inp.explicit_map()
    if isinstance(m, tuple):
        f, src, tgt = m
        return _witness_result(name, g_equivalence_witness(f, src, tgt, inp.coeffs), {"map": inp.map})
    return m


def _component_hypothesis(eps: GFunctorMorphism, coeffs) -> dict | None:
    """First object ``X`` where ``ε_X`` fails the witness over ``G_X``."""
    src, tgt = eps.source, eps.target
    for x in src.source.objects():
        a, _stab = restrict_action(src, x)
        b, _ = restrict_action(tgt, x)
        rep = g_equivalence_witness(eps.components[x], a, b, coeffs)
        if not rep.ok:
            return dict(rep.first_failure(), object=x)
    return None


def check_thm1(inp):
    m = _explicit(inp, "witness:thm1")
    if isinstance(m, CheckResult):
        return m
    f = inp.f()
    top = inp.level()
    z = product_diagram(f, terminal(f.action.on_opposite(), top))
    cm = bar_induced(thickening(z), top)
    return _witness_result("witness:thm1", g_equivalence_witness(cm.map, cm.source, cm.target, inp.coeffs),
                           {"epsilon": "thickening Z×Δ¹ -> Z"})


def check_thm2(inp):
    m = _explicit(inp, "witness:thm2")
    if isinstance(m, CheckResult):
        return m
    if isinstance(m, GFunctorMorphism):
        eps, what = m, inp.map
    else:
        eps, what = thickening(inp.f()), "thickening F×Δ¹ -> F"
    cm = hocolim_induced(eps, inp.level())
    hyp = _component_hypothesis(eps, inp.coeffs)
    res = _witness_result("witness:thm2", g_equivalence_witness(cm.map, cm.source, cm.target, inp.coeffs),
                          {"epsilon": what, "hypothesis_holds": hyp is None})
    if hyp is not None:
        res.details["hypothesis_witness"] = _jsonable(hyp)
    return res


def _under_s_hypothesis(s, act_d, act_c, top, coeffs) -> dict | None:
    un = nerve_of(comma_under_functor(s, act_d, act_c), top)
    for c in s.target.objects():
        value, stab = restrict_action(un, c)
        bad = _point_homology(value, coeffs)
        if bad is not None:
            bad["subgroup"] = [stab.elements[k] for k in bad["subgroup"]]
            bad["object"] = c
            return bad
    return None


def check_thm4(inp):
    m = _explicit(inp, "witness:thm4")
    if isinstance(m, CheckResult):
        return m
    s, act_d, act_c = inp.s()
    top = inp.level()
    fd, given = None, "terminal"
    for b in inp._diagrams():
        if b.value.source.same_as(s.source) and b.value.action.obj_perm == act_d.obj_perm:
            fd, given = inp._cut(b.value), b.name
            break
    if fd is None:
        fd = terminal(act_d, top)
    cm = pushdown_map(s, fd, act_c, top)
    return _witness_result("witness:thm4", g_equivalence_witness(cm.map, cm.source, cm.target, inp.coeffs),
                           {"diagram_on_D": given})


def check_thm5(inp):
    m = _explicit(inp, "witness:thm5")
    if isinstance(m, CheckResult):
        return m
    s, act_d, act_c = inp.s()
    top = inp.level()
    cm = cofinality_map(inp.f(), s, act_d, top)
    hyp = _under_s_hypothesis(s, act_d, act_c, top, inp.coeffs)
    res = _witness_result("witness:thm5", g_equivalence_witness(cm.map, cm.source, cm.target, inp.coeffs),
                          {"hypothesis_holds": hyp is None})
    if hyp is not None:
        res.details["hypothesis_witness"] = _jsonable(hyp)
        res.caveats.append("fibres N(c↓S) are not all acyclic on fixed points; the theorem does not apply")
    return res


def _equivariance(name, cm):
    bad = cm.equivariance()
    report = validate_sset(cm.map)
    ok = not bad and report.ok
    if ok:
        return CheckResult(name, True, "well-defined simplicial map commuting with the action")
    witness = _jsonable(bad) if bad else {"rule": report.violations[0].rule}
    return CheckResult(name, False, "map does not commute with the action", {}, witness)


def check_eq9(inp):
    return _equivariance("equivariance:eq9", to_colim(inp.f(), inp.level()))


def check_eq10(inp):
    return _equivariance("equivariance:eq10", to_nerve(inp.f(), inp.level()))


CHECKS = {
    "axioms": check_axioms, "iso:eq1": check_eq1, "iso:eq2": check_eq2, "iso:eq7": check_eq7,
    "iso:eq11": check_eq11, "iso:eq12": check_eq12, "iso:eq22": check_eq22, "contractible:eq28": check_eq28,
    "witness:thm1": check_thm1, "witness:thm2": check_thm2, "witness:thm4": check_thm4,
    "witness:thm5": check_thm5, "equivariance:eq9": check_eq9, "equivariance:eq10": check_eq10,
}


def run_check(name: str, inp: Inputs) -> CheckResult:
    if name not in CHECKS:
        raise InputError(f"unknown check {name!r}; choose from {', '.join(CHECK_NAMES)}")
    t0 = time.perf_counter()
    res = CHECKS[name](inp)
    res.seconds = time.perf_counter() - t0
    return res

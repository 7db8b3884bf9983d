"""The Grothendieck construction ``C∫F`` of a category-valued diagram.

Objects are pairs ``(X, a)`` with ``a`` an object of ``F(X)``; a morphism
``(X, a) -> (Y, b)`` is a pair ``(f, u)`` with ``f: X -> Y`` and
``u: F(f)(a) -> b`` in ``F(Y)``.  Composition is
``(f', u')∘(f, u) = (f'∘f, u'∘F(f')(u))``.  A right G-functor structure gives
the action ``g(X, a) = (gX, η_{g,X}(a))`` and ``g(f, u) = (gf, η_{g,Y}(u))``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra.categories import FinCategory, GCatAction
from ..algebra.functors import CAT, RightGFunctor


@dataclass(frozen=True, eq=False)
class GrothendieckCategory:
    category: FinCategory
    action: GCatAction
    diagram: RightGFunctor

    def object_of(self, x: int, a: int) -> int:
        return self.category.obj_labels.index((x, a))


def grothendieck(f: RightGFunctor) -> GrothendieckCategory:
    if f.kind != CAT:
        raise ValueError("the Grothendieck construction needs a category-valued diagram")
    base = f.source
    objects = [(x, a) for x in base.objects() for a in f.value(x).objects()]
    oidx = {o: i for i, o in enumerate(objects)}
    mors = []
    for (x, a) in objects:
        for fm in base.out_of(x):
            y = base.tgt[fm]
            fa = f.map(fm).obj_map[a]
            fy = f.value(y)
            for u in fy.out_of(fa):
                mors.append((oidx[(x, a)], fm, u, oidx[(y, fy.tgt[u])]))
    midx = {(fm, u, s): k for k, (s, fm, u, _t) in enumerate(mors)}
    comp = {}
    for k2, (s2, f2, u2, t2) in enumerate(mors):
        for k1, (s1, f1, u1, t1) in enumerate(mors):
            if t1 != s2:
                continue
            z = base.tgt[f2]
            u = f.value(z).compose(u2, f.map(f2).mor_map[u1])
            comp[(k2, k1)] = midx[(base.compose(f2, f1), u, s1)]
    idents = tuple(midx[(base.identities[x], f.value(x).identities[a], oidx[(x, a)])] for (x, a) in objects)
    cat = FinCategory(
        len(objects),
        tuple(s for s, _f, _u, _t in mors),
        tuple(t for _s, _f, _u, t in mors),
        idents,
        comp,
        tuple(objects),
        tuple((fm, u) for _s, fm, u, _t in mors),
    )
    act = f.action
    obj_perm, mor_perm = [], []
    for g in f.group.elements():
        eta = f.eta[g]
        obj_perm.append(tuple(oidx[(act.obj_perm[g][x], eta[x].obj_map[a])] for (x, a) in objects))
        row = []
        for (s, fm, u, _t) in mors:
            y = base.tgt[fm]
            row.append(midx[(act.mor_perm[g][fm], eta[y].mor_map[u], obj_perm[-1][s])])
        mor_perm.append(tuple(row))
    return GrothendieckCategory(cat, GCatAction(f.group, cat, tuple(obj_perm), tuple(mor_perm)), f)

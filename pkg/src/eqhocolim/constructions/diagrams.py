"""Standard diagrams: constants, hom functors, nerves of category-valued diagrams,
and slices of diagrams on product categories."""

from __future__ import annotations

import numpy as np

from ..algebra.categories import CatFunctor, FinCategory, GCatAction, product_action, product_category
from ..algebra.functors import CAT, SSET, FunctorData, RightGFunctor, postcompose_action
from ..simplicial.sset import DEFAULT_TOP, INDEX, GSSet, SimplicialMap, TruncatedSSet, constant, point
from .nerve import nerve_chains, nerve_map


class NerveFunctor:
    """``N`` as a functor from finite categories to simplicial sets."""

    kind = SSET

    def __init__(self, top: int = DEFAULT_TOP):
        self.top = top

    def on_object(self, cat: FinCategory) -> TruncatedSSet:
        return nerve_chains(cat, self.top).sset

    def on_map(self, functor: CatFunctor, source=None, target=None) -> SimplicialMap:
        return nerve_map(functor, self.top, source, target)


def nerve_of(rf: RightGFunctor, top: int = DEFAULT_TOP) -> RightGFunctor:
    """Compose a category-valued right G-functor with the nerve."""
    if rf.kind != CAT:
        raise ValueError("only category-valued diagrams have a nerve")
    return postcompose_action(NerveFunctor(top), rf, SSET)


def terminal(action: GCatAction, top: int = DEFAULT_TOP) -> RightGFunctor:
    """The constant diagram ``*`` with one simplex in each degree."""
    return RightGFunctor.constant(action, GSSet.trivial(point(top), action.group))


def constant_functor(action: GCatAction, value: GSSet) -> RightGFunctor:
    return RightGFunctor.constant(action, value)


def _set_map(source: TruncatedSSet, target: TruncatedSSet, table) -> SimplicialMap:
    arr = np.asarray(table, dtype=INDEX)
    return SimplicialMap(source, target, (arr,) * (source.top + 1))


def hom_profunctor(s1: CatFunctor, s2: CatFunctor, act_a: GCatAction, act_b: GCatAction,
                   act_x: GCatAction, top: int = DEFAULT_TOP) -> RightGFunctor:
    """``(a, b) -> hom(S1 a, S2 b)`` on ``A^op × B`` as constant simplicial sets.

    ``(φ, ψ)`` acts by ``f -> S2(ψ)∘f∘S1(φ)`` and ``η`` by ``f -> g·f``.
    Elements of each hom set are ordered by morphism id and labelled by it.
    """
    s1.require_equivariant(act_a, act_x)
    s2.require_equivariant(act_b, act_x)
    a, b, x = s1.source, s2.source, s1.target
    base = product_category(a.opposite(), b)
    action = product_action(act_a.on_opposite(), act_b, base)
    _nb, mb = b.n_objects, b.n_morphisms
    homs = [x.hom(s1.obj_map[i], s2.obj_map[j]) for i in a.objects() for j in b.objects()]
    values = [constant(h, top) for h in homs]
    pos = [{f: i for i, f in enumerate(h)} for h in homs]

    def fmap(k, src, tgt):
        phi, psi = divmod(k, mb)
        u1, u2 = s1.mor_map[phi], s2.mor_map[psi]
        target = base.tgt[k]
        return _set_map(src, tgt, [pos[target][x.compose(x.compose(u2, u), u1)] for u in homs[base.src[k]]])

    def eta(g, ij, src, tgt):
        target = action.obj_perm[g][ij]
        return _set_map(src, tgt, [pos[target][act_x.mor_perm[g][u]] for u in homs[ij]])

    return RightGFunctor.build(action, SSET, lambda ij: values[ij], fmap, eta)


def hom_bifunctor(functor: CatFunctor, act_src: GCatAction, act_tgt: GCatAction,
                  top: int = DEFAULT_TOP) -> RightGFunctor:
    """``(X, Y) -> hom(F X, F Y)`` on ``C^op × C`` with ``η(f) = g·f``."""
    return hom_profunctor(functor, functor, act_src, act_src, act_tgt, top)


def representable(cat: FinCategory, action: GCatAction, c: int, covariant: bool = True,
                  top: int = DEFAULT_TOP) -> RightGFunctor:
    """``hom(c, -)`` on ``C`` (or ``hom(-, c)`` on ``C^op``) with the stabilizer of ``c`` acting.

    The returned functor's group is the stabilizer, reindexed as a group.
    """
    from ..algebra.categories import stabilizer
    stab = stabilizer(action, c)
    act = action.restrict(stab)
    homs = [cat.hom(c, x) if covariant else cat.hom(x, c) for x in cat.objects()]
    values = [constant(h, top) for h in homs]
    pos = [{f: i for i, f in enumerate(h)} for h in homs]
    if covariant:
        def fmap(f, s, t):
            return _set_map(s, t, [pos[cat.tgt[f]][cat.compose(f, u)] for u in homs[cat.src[f]]])
        base_act = act
    else:
        def fmap(f, s, t):
            return _set_map(s, t, [pos[cat.src[f]][cat.compose(u, f)] for u in homs[cat.tgt[f]]])
        base_act = act.on_opposite()

    def eta(g, x, s, t):
        return _set_map(s, t, [pos[act.obj_perm[g][x]][act.mor_perm[g][u]] for u in homs[x]])

    return RightGFunctor.build(base_act, SSET, lambda x: values[x], fmap, eta)


# -- diagrams on product categories -------------------------------------------

def factor_actions(action: GCatAction) -> tuple[GCatAction, GCatAction]:
    """The actions on ``A`` and ``B`` underlying an action on ``A × B``."""
    a, b = action.category.factors
    _na, nb, _ma, mb = a.n_objects, b.n_objects, a.n_morphisms, b.n_morphisms
    elems = action.group.elements()
    op, mp = action.obj_perm, action.mor_perm
    act_a = GCatAction(action.group, a,
                       tuple(tuple(op[g][x * nb] // nb for x in a.objects()) for g in elems),
                       tuple(tuple(mp[g][f * mb] // mb for f in a.morphisms()) for g in elems))
    act_b = GCatAction(action.group, b,
                       tuple(tuple(op[g][y] % nb for y in b.objects()) for g in elems),
                       tuple(tuple(mp[g][h] % mb for h in b.morphisms()) for g in elems))
    return act_a, act_b


def slice_functor(rf: RightGFunctor, p: int, first: bool = True) -> FunctorData:
    """Restrict a diagram on ``P × A`` to ``{p} × A`` (or on ``A × P`` to ``A × {p}``)."""
    cat = rf.source
    pcat, acat = cat.factors if first else cat.factors[::-1]
    na, ma = acat.n_objects, acat.n_morphisms
    ip = pcat.identities[p]
    if first:
        objs = [p * na + a for a in acat.objects()]
        mors = [ip * ma + f for f in acat.morphisms()]
    else:
        np_, mp = pcat.n_objects, pcat.n_morphisms
        objs = [a * np_ + p for a in acat.objects()]
        mors = [f * mp + ip for f in acat.morphisms()]
    return FunctorData(acat, rf.kind, tuple(rf.value(x) for x in objs), tuple(rf.map(f) for f in mors))


def swap_factors(rf: RightGFunctor) -> RightGFunctor:
    """The same diagram viewed on ``B × A`` instead of ``A × B``."""
    a, b = rf.source.factors
    base = product_category(b, a)
    act_full = rf.action
    na, nb, ma, mb = a.n_objects, b.n_objects, a.n_morphisms, b.n_morphisms
    obj = [None] * base.n_objects
    for x in a.objects():
        for y in b.objects():
            obj[y * na + x] = x * nb + y
    mor = [None] * base.n_morphisms
    for f in a.morphisms():
        for h in b.morphisms():
            mor[h * ma + f] = f * mb + h
    functor = FunctorData(base, rf.kind, tuple(rf.value(o) for o in obj), tuple(rf.map(f) for f in mor))
    # the action on B × A, read off from the action on A × B
    inv_obj = {v: k for k, v in enumerate(obj)}
    inv_mor = {v: k for k, v in enumerate(mor)}
    action = GCatAction(
        act_full.group, base,
        tuple(tuple(inv_obj[act_full.obj_perm[g][o]] for o in obj) for g in act_full.group.elements()),
        tuple(tuple(inv_mor[act_full.mor_perm[g][f]] for f in mor) for g in act_full.group.elements()),
    )
    eta = tuple(tuple(rf.eta[g][o] for o in obj) for g in act_full.group.elements())
    return RightGFunctor(functor, action, eta)


def product_diagram(f: RightGFunctor, t: RightGFunctor) -> RightGFunctor:
    """``(X, Y) -> F(X) × T(Y)`` on the product of the two source categories."""
    from ..simplicial.ops import product, product_map
    a, b = f.source, t.source
    base = product_category(a, b)
    action = product_action(f.action, t.action, base)
    nb, mb = b.n_objects, b.n_morphisms
    prods = {}

    def value(xy):
        x, y = divmod(xy, nb)
        if xy not in prods:
            prods[xy] = product(f.value(x), t.value(y))[0]
        return prods[xy]

    def fmap(k, s, tt):
        fa, fb = divmod(k, mb)
        return product_map(f.map(fa), t.map(fb), s, tt)

    def eta(g, xy, s, tt):
        x, y = divmod(xy, nb)
        return product_map(f.eta[g][x], t.eta[g][y], s, tt)

    return RightGFunctor.build(action, SSET, value, fmap, eta)


def truncated(rf: RightGFunctor, top: int) -> RightGFunctor:
    """``rf`` with every value cut down to degrees ``0..top``."""
    from ..simplicial.ops import Truncation
    if rf.kind != SSET:
        raise ValueError("only simplicial-set valued diagrams can be truncated")
    if rf.source.n_objects == 0 or rf.value(0).top == top:
        return rf
    return postcompose_action(Truncation(top), rf, SSET)

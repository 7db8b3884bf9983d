"""Small hand-built inputs shared by the test modules."""

import numpy as np

from eqhocolim.algebra.categories import CatFunctor, FinCategory, GCatAction, product_action, product_category
from eqhocolim.algebra.groups import FinGroup
from eqhocolim.simplicial.sset import GSSet, SimplicialMap, constant, point

Z2 = FinGroup.cyclic(2)


def swap_pair(group=Z2):
    """Two discrete objects exchanged by the generator of Z/2."""
    d = FinCategory.discrete(2)
    return d, GCatAction(group, d, ((0, 1), (1, 0)), ((0, 1), (1, 0)))


def fork():
    """0 -> 1, 0 -> 2 with Z/2 swapping the two arrows."""
    c = FinCategory.from_preorder(3, [(0, 1), (0, 2)])
    return c, GCatAction.on_thin(Z2, c, ((0, 1, 2), (0, 2, 1)))


def interval_trivial(group=Z2):
    c = FinCategory.ordinal(1)
    return c, GCatAction.trivial(group, c)


def swapped_points(top=3):
    x = constant([0, 1], top)
    ident = tuple(np.arange(c) for c in x.counts)
    flip = tuple(np.arange(c)[::-1].copy() for c in x.counts)
    return GSSet(x, Z2, (ident, flip))


def fixed_point(top=3, group=Z2):
    return GSSet.trivial(point(top), group)


def collapse(source: GSSet, target: GSSet) -> SimplicialMap:
    return SimplicialMap(source.space, target.space,
                         tuple(np.zeros(c, dtype=np.int64) for c in source.space.counts))


def projection_with_initial(cat, act, fibre="interval"):
    """``S: C × E -> C`` where every ``c↓S`` has a fixed initial object.

    ``E`` is ``[1]`` with trivial action, or the fork with its arrows swapped;
    both have an initial object fixed by the whole group.
    """
    if fibre == "interval":
        e, ea = interval_trivial(act.group)
    else:
        e = FinCategory.from_preorder(3, [(0, 1), (0, 2)])
        ea = GCatAction.on_thin(act.group, e, [(0, 1, 2) if g == 0 else (0, 2, 1) for g in act.group.elements()]) \
            if act.group.order == 2 else GCatAction.trivial(act.group, e)
    pc = product_category(cat, e)
    pa = product_action(act, ea, pc)
    s = CatFunctor(pc, cat, tuple(x // e.n_objects for x in pc.objects()),
                   tuple(f // e.n_morphisms for f in pc.morphisms()))
    return s, pa

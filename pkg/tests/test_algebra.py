import numpy as np
import pytest

from eqhocolim.algebra.categories import (
    CatFunctor, FinCategory, GCatAction, orbits, stabilizer, validate_category,
)
from eqhocolim.algebra.functors import (
    SSET, RightGFunctor, postcompose_action, precompose_action, restrict_action, validate_right_g_functor,
)
from eqhocolim.algebra.groups import FinGroup, Subgroup, subgroups, validate_group
from eqhocolim.algebra.validate import validate
from eqhocolim.constructions import induce, terminal
from eqhocolim.simplicial.ops import nondegenerate
from eqhocolim.simplicial.sset import GSSet, SimplicialMap, constant, point

from instances import Z2, fork, swap_pair


def test_z2_table_is_a_group():
    g = FinGroup(((0, 1), (1, 0)))
    assert g.order == 2
    assert validate_group(g).ok


def test_group_associativity_violation_named():
    # a 3-element loop with identity 0 that is not associative
    table = ((0, 1, 2), (1, 0, 0), (2, 2, 0))
    report = validate_group(FinGroup(table))
    assert "group.associativity" in report.rules()


def test_category_associativity_violation_names_triple():
    c = FinCategory.ordinal(2)
    good = validate_category(c)
    assert good.ok
    # 0 -> 1 -> 2 -> 2 with a wrong composite; break one entry and look for it
    f01, f12 = c.hom(0, 1)[0], c.hom(1, 2)[0]
    comp = dict(c.comp)
    comp[(f12, f01)] = c.identities[0]
    bad = FinCategory(c.n_objects, c.src, c.tgt, c.identities, comp)
    report = validate_category(bad)
    assert not report.ok
    assert any(v.where == (f12, f01) for v in report.violations)


def test_eta_unit_violation_cites_axiom_one():
    _, act = swap_pair()
    y = constant([0, 1], 2)
    good = RightGFunctor.build(act, SSET, lambda o: y, lambda f, s, t: SimplicialMap.identity(y),
                               lambda g, o, s, t: SimplicialMap.identity(y))
    assert validate_right_g_functor(good).ok
    flip = SimplicialMap(y, y, tuple(np.arange(c)[::-1].copy() for c in y.counts))
    eta = ((flip, good.eta[0][1]),) + tuple(good.eta[1:])
    report = validate_right_g_functor(RightGFunctor(good.functor, act, eta))
    assert "def1.unit" in report.rules()
    assert any("axiom 1" in v.detail for v in report.violations)


def test_stabilizer_in_s3_of_a_point_has_order_two():
    s3 = FinGroup.symmetric(3)
    act = _s3_on_points(s3, FinCategory.discrete(3))
    assert stabilizer(act, 0).order == 2


def _s3_on_points(s3, d):
    # S3 acting on the three cosets of an order-2 subgroup, i.e. on three points
    for h in subgroups(s3):
        if h.order != 2:
            continue
        reps = sorted({min(s3.mul(a, e) for e in h.elements) for a in s3.elements()})
        coset = {min(s3.mul(a, e) for e in h.elements): i for i, a in enumerate(reps)}
        perm = [tuple(coset[min(s3.mul(s3.mul(g, a), e) for e in h.elements)] for a in reps)
                for g in s3.elements()]
        return GCatAction(s3, d, tuple(perm), tuple(perm))


def test_stabilizer_trivial_action_is_whole_group():
    d = FinCategory.discrete(2)
    assert stabilizer(GCatAction.trivial(Z2, d), 1).order == 2


def test_stabilizer_swap_is_identity_only():
    _, act = swap_pair()
    assert stabilizer(act, 0).elements == (0,)


def test_orbits():
    _, act = swap_pair()
    assert orbits(act) == [[0, 1]]
    d3 = FinCategory.discrete(3)
    assert orbits(GCatAction.trivial(Z2, d3)) == [[0], [1], [2]]
    z4 = FinGroup.cyclic(4)
    d4 = FinCategory.discrete(4)
    shift = tuple(tuple((x + g) % 4 for x in range(4)) for g in z4.elements())
    assert orbits(GCatAction(z4, d4, shift, shift)) == [[0, 1, 2, 3]]


@pytest.mark.parametrize("group, count", [
    (FinGroup.cyclic(2), 2), (FinGroup.cyclic(4), 3), (FinGroup.symmetric(3), 6),
    (FinGroup.direct_product(FinGroup.cyclic(2), FinGroup.cyclic(2)), 5), (FinGroup.cyclic(6), 4),
])
def test_subgroup_counts(group, count):
    # independent count: closed subsets found by brute force over all element subsets
    n = group.order
    brute = 0
    for mask in range(1 << n):
        els = [e for e in range(n) if mask >> e & 1]
        if 0 in els and all(group.mul(a, b) in els for a in els for b in els):
            brute += 1
    assert brute == count
    assert len(subgroups(group)) == count


def test_restrict_action_trivial_group_and_free_orbit():
    _, act = swap_pair()
    value, stab = restrict_action(terminal(act, 2), 0)
    assert stab.elements == (0,)
    assert value.group.order == 1


def test_restrict_action_on_induced_value():
    # Ind_H^G(Z) with H = {0, 2} in Z/4 acting on two swapped points by its generator
    z4 = FinGroup.cyclic(4)
    h = Subgroup(z4, (0, 2))
    x = constant([0, 1], 2)
    ident = tuple(np.arange(c) for c in x.counts)
    flip = tuple(np.arange(c)[::-1].copy() for c in x.counts)
    z = GSSet(x, h.group, (ident, flip))
    ind = induce(h, z).gsset
    assert ind.counts[0] == 4
    # g = 2 lies in H and fixes each coset; it acts on each copy as h = 2, the swap
    assert sorted(ind.action[2][0].tolist()) == [0, 1, 2, 3]
    assert all(ind.action[2][0][v] != v for v in range(4))
    # g = 1 moves the identity coset to the other one
    assert set(ind.action[1][0][:2].tolist()) == {2, 3}


def test_precompose_identity_is_unchanged():
    c, act = fork()
    f = terminal(act, 2)
    g = precompose_action(f, CatFunctor.identity(c), act)
    assert validate_right_g_functor(g).ok
    assert all(g.value(x) is f.value(x) or g.value(x).same_tables(f.value(x)) for x in c.objects())


class _NondegenerateCounts:
    """Sends X to a discrete set with one point per nondegenerate simplex."""

    kind = SSET

    def on_object(self, x):
        return constant(range(sum(len(a) for a in nondegenerate(x))), x.top)

    def on_map(self, m, source, target):
        return SimplicialMap(source, target, tuple(np.zeros(c, dtype=np.int64) for c in source.counts))


def test_postcompose_counts_constant_on_orbits():
    from eqhocolim.cli.generate import Caps, generate_document
    for seed in range(1, 11):
        f = generate_document(seed, Caps(max_group=4)).get("F")
        counts = postcompose_action(_NondegenerateCounts(), f)
        for orbit in orbits(f.action):
            assert len({counts.value(x).counts for x in orbit}) == 1


def test_validate_dispatches_every_type():
    c, act = fork()
    for value in (Z2, c, act, terminal(act, 2), point(2), CatFunctor.identity(c)):
        assert validate(value).ok

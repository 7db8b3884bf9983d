import numpy as np
import pytest

from eqhocolim.algebra.groups import FinGroup, Subgroup
from eqhocolim.constructions import bar, bar_bi, induce, nerve, product_diagram, terminal
from eqhocolim.errors import FormatError
from eqhocolim.simplicial.bisimplicial import diagonal
from eqhocolim.simplicial.ops import coproduct, fixed_subcomplex, is_isomorphism, nondegenerate, product
from eqhocolim.simplicial.sset import (
    GSSet, SimplicialMap, TruncatedSSet, boundary_simplex, point, standard_simplex,
)
from eqhocolim.simplicial.validate import validate_sset

from instances import Z2, interval_trivial, swap_pair, swapped_points


def test_interval_at_truncation_two_is_valid():
    x = standard_simplex(1, 2)
    assert x.counts == (2, 3, 4)
    assert validate_sset(x).ok


def _corrupt_face(x: TruncatedSSet, n: int, i: int, s: int, value: int) -> TruncatedSSet:
    faces = [list(level) for level in x.faces]
    table = np.array(faces[n][i])
    table[s] = value
    faces[n][i] = table
    return TruncatedSSet(x.top, x.counts, tuple(tuple(f) for f in faces), x.degens)


def test_corrupted_face_table_is_located():
    x = standard_simplex(2, 2)
    # the nondegenerate 2-simplex is the only one whose d_0 is the edge 12
    top = int(nondegenerate(x)[2][0])
    bad = _corrupt_face(x, 2, 0, top, int(x.faces[2][1][top]))
    report = validate_sset(bad)
    assert not report.ok
    degrees = {v.where[0] for v in report.violations if v.rule == "sset.face_face"}
    assert degrees == {2}
    assert any(top in v.where for v in report.violations if v.rule == "sset.face_face")


def test_every_nerve_is_valid():
    for cat, act in (interval_trivial(), swap_pair()):
        assert validate_sset(nerve(cat, act, top=3)).ok


def test_coproduct_of_two_points():
    x, inj = coproduct([point(2), point(2)])
    assert x.counts == (2, 2, 2)
    assert [len(a) for a in nondegenerate(x)] == [2, 0, 0]
    assert validate_sset(x).ok and len(inj) == 2


def test_product_with_point_is_identity_law():
    y = standard_simplex(2, 3)
    x, (p1, p2) = product(point(3), y)
    assert is_isomorphism(p2).ok


def test_square_has_two_nondegenerate_triangles():
    # classical count: shuffles of (1, 1) give 2 nondegenerate 2-simplices
    x, _ = product(standard_simplex(1, 2), standard_simplex(1, 2))
    assert [len(a) for a in nondegenerate(x)] == [4, 5, 2]


def test_nondegenerate_counts():
    assert [len(a) for a in nondegenerate(standard_simplex(1, 3))] == [2, 1, 0, 0]
    assert [len(a) for a in nondegenerate(point(3))] == [1, 0, 0, 0]


def test_nerve_of_z2_one_nondegenerate_per_degree():
    from eqhocolim.algebra.categories import FinCategory
    x = nerve(FinCategory.one_object(Z2), top=3)
    assert [len(a) for a in nondegenerate(x.space)] == [1, 1, 1, 1]


def test_fixed_subcomplex_trivial_subgroup_is_everything():
    x = swapped_points()
    sub, inc = fixed_subcomplex(x, Subgroup.trivial(Z2))
    assert sub.counts == x.space.counts


def test_fixed_subcomplex_of_swapped_points_is_empty():
    sub, _ = fixed_subcomplex(swapped_points(), Subgroup.whole(Z2))
    assert sub.counts == (0, 0, 0, 0)


def test_induced_point_has_no_fixed_simplex():
    z4 = FinGroup.cyclic(4)
    h = Subgroup(z4, (0, 2))
    ind = induce(h, GSSet.trivial(point(2), h.group)).gsset
    sub, _ = fixed_subcomplex(ind, Subgroup.whole(z4))
    assert sub.counts == (0, 0, 0)


def test_is_isomorphism_identity_and_point_into_interval():
    x = standard_simplex(1, 2)
    assert is_isomorphism(SimplicialMap.identity(x)).ok
    vertex = SimplicialMap(point(2), x, tuple(np.zeros(1, dtype=np.int64) for _ in range(3)))
    res = is_isomorphism(vertex)
    assert not res.ok and res.witness["degree"] == 0


def test_is_isomorphism_checks_equivariance():
    x = swapped_points(2)
    triv = GSSet.trivial(x.space, Z2)
    res = is_isomorphism(SimplicialMap.identity(x.space), x, triv)
    assert not res.ok


def test_diagonal_of_bar_bisimplicial_matches_bar():
    cat, act = swap_pair()
    z = product_diagram(terminal(act, 3), terminal(act.on_opposite(), 3))
    d = diagonal(bar_bi(z, (3, 3)))
    b = bar(z, 3)
    space = d.space if isinstance(d, GSSet) else d
    assert space.counts == b.space.counts
    assert validate_sset(space).ok


def test_bisimplicial_interval_point_count():
    cat, act = interval_trivial()
    z = product_diagram(terminal(act, 2), terminal(act.on_opposite(), 2))
    bi = bar_bi(z, (2, 2))
    assert bi.counts[1][1] == 3


def test_malformed_counts_rejected():
    with pytest.raises(FormatError):
        TruncatedSSet(1, (1,), ((),), ((np.zeros(1, dtype=np.int64),),))


def test_boundary_of_triangle_counts():
    x = boundary_simplex(2, 2)
    assert [len(a) for a in nondegenerate(x)] == [3, 3, 0]
    assert validate_sset(x).ok

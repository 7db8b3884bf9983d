import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from eqhocolim.algebra.categories import FinCategory
from eqhocolim.algebra.groups import FinGroup
from eqhocolim.cli.generate import Caps, generate_document
from eqhocolim.constructions import hocolim, nerve, thickening
from eqhocolim.errors import EquivarianceError
from eqhocolim.homology import (
    chain_complex, field_ranks_from_factors, g_equivalence_witness, homology, identity_check, induced_iso,
)
from eqhocolim.homology.smith import dense_smith, invariant_factors, rank_mod_p, rank_over_q
from eqhocolim.simplicial.ops import coproduct, product
from eqhocolim.simplicial.sset import GSSet, SimplicialMap, boundary_simplex, point, standard_simplex

from instances import Z2, collapse, fixed_point, fork, swap_pair, swapped_points
from oracles import _rank_mod, integral_homology, mod_p_betti, nerve_boundaries


# -- fixed values ---------------------------------------------------------------

def test_interval_boundary_column():
    cx = chain_complex(standard_simplex(1, 2))
    (col,) = cx.boundaries[1]
    assert sorted(col.values()) == [-1, 1]


def test_point_has_zero_boundaries():
    cx = chain_complex(point(3))
    assert all(not col for n in range(1, 4) for col in cx.boundaries[n])


def test_interval_homology():
    assert homology(standard_simplex(1, 3)).betti("q") == (1, 0, 0)


def test_circle_homology():
    prof = homology(boundary_simplex(2, 3))
    assert prof.betti("q") == (1, 1, 0)
    assert prof.integral == ((1, ()), (1, ()), (0, ()))


def test_bz2_against_oracle():
    cat = FinCategory.one_object(Z2)
    prof = homology(nerve(cat, top=4).space)
    sizes, mats = nerve_boundaries(cat, 4)
    assert [(f, list(t)) for f, t in prof.integral] == integral_homology(sizes, mats, 4)
    assert list(prof.betti(2)) == mod_p_betti(sizes, mats, 4, 2) == [1, 1, 1, 1]
    assert prof.integral[1] == (0, (2,)) and prof.integral[3] == (0, (2,))


@pytest.mark.parametrize("cat", [
    FinCategory.one_object(FinGroup.cyclic(3)),
    FinCategory.one_object(FinGroup.symmetric(3)),
    FinCategory.one_object(FinGroup.direct_product(FinGroup.cyclic(2), FinGroup.cyclic(2))),
    fork()[0],
    FinCategory.ordinal(2),
])
def test_nerve_homology_against_oracle(cat):
    top = 3
    prof = homology(nerve(cat, top=top).space, ("z", "q", 2, 3))
    sizes, mats = nerve_boundaries(cat, top)
    assert [(f, list(t)) for f, t in prof.integral] == integral_homology(sizes, mats, top)
    for p in (2, 3):
        assert list(prof.betti(p)) == mod_p_betti(sizes, mats, top, p)


def test_generated_hocolims_against_nerve_oracle_size():
    # normalized chain ranks are the nondegenerate counts, i.e. the oracle basis sizes for N(C)
    for seed in range(1, 6):
        cat = generate_document(seed).get("C")
        cx = chain_complex(nerve(cat, top=3).space)
        sizes, _ = nerve_boundaries(cat, 3)
        assert list(cx.ranks) == sizes


# -- Smith form and the two field routes ------------------------------------------

matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


def _columns(m):
    return [{r: m[r][c] for r in range(len(m)) if m[r][c]} for c in range(len(m[0]))]


@given(matrices)
@settings(max_examples=150, deadline=None)
def test_invariant_factors_match_sympy(m):
    snf = smith_normal_form(Matrix(m), domain=ZZ)
    expected = sorted(abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0)
    assert invariant_factors(_columns(m)) == expected
    assert rank_over_q(_columns(m)) == Matrix(m).rank()


@given(matrices, st.sampled_from([2, 3, 5, 7]))
@settings(max_examples=150, deadline=None)
def test_rank_mod_p_two_routes(m, p):
    factors = invariant_factors(_columns(m))
    assert rank_mod_p(_columns(m), p) == sum(1 for t in factors if t % p) == _rank_mod(m, p)


def test_dense_smith_known_matrix():
    assert dense_smith([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


def test_field_ranks_from_factors_agree_on_corpus():
    for seed in range(1, 11):
        x = hocolim(generate_document(seed).get("F"), 3).space
        cx = chain_complex(x)
        prof = homology(cx)
        for p in (2, 3, 5):
            assert field_ranks_from_factors(cx, p) == prof.betti(p)


# -- invariants -------------------------------------------------------------------

def test_square_zero_on_corpus():
    # chain_complex asserts ∂∂ = 0 itself; check it independently here as well
    for seed in range(1, 21):
        x = hocolim(generate_document(seed).get("F"), 3).space
        cx = chain_complex(x)
        for n in range(2, cx.top + 1):
            for col in cx.boundaries[n]:
                acc = {}
                for r, v in col.items():
                    for r2, w in cx.boundaries[n - 1][r].items():
                        acc[r2] = acc.get(r2, 0) + v * w
                assert not any(acc.values())


small_spaces = st.sampled_from([
    lambda: point(3), lambda: standard_simplex(1, 3), lambda: standard_simplex(2, 3),
    lambda: boundary_simplex(2, 3), lambda: boundary_simplex(3, 3),
    lambda: nerve(FinCategory.one_object(Z2), top=3).space,
    lambda: nerve(fork()[0], top=3).space,
])


@given(st.lists(small_spaces, min_size=1, max_size=3))
@settings(max_examples=30, deadline=None)
def test_rational_homology_additive_on_coproducts(makers):
    parts = [m() for m in makers]
    total, _ = coproduct(parts)
    expected = np.sum([homology(x, ("q",)).betti("q") for x in parts], axis=0)
    assert list(homology(total, ("q",)).betti("q")) == list(expected)


@given(small_spaces)
@settings(max_examples=20, deadline=None)
def test_functoriality_projection_then_identity(maker):
    x = maker()
    xi, (p1, _p2) = product(x, standard_simplex(1, x.top))
    f = p1
    g = SimplicialMap.identity(x)
    assert induced_iso(f).ok and induced_iso(g).ok
    assert induced_iso(f.then(g)).ok


@given(st.integers(1, 40))
@settings(max_examples=20, deadline=None)
def test_identity_witness_passes_on_generated_spaces(seed):
    x = hocolim(generate_document(seed, Caps(max_objects=3)).get("F"), 3).gsset
    assert identity_check(x).ok


# -- witness ----------------------------------------------------------------------

def test_induced_iso_identity_and_collapse():
    x = swapped_points()
    assert induced_iso(SimplicialMap.identity(x.space)).ok
    res = induced_iso(collapse(x, fixed_point()))
    assert res.first_failure() == ("q", 0)


def test_projection_off_interval_is_homology_iso():
    x = boundary_simplex(2, 3)
    _, (p1, _) = product(x, standard_simplex(1, 3))
    assert induced_iso(p1).ok


def test_collapse_of_swapped_points_fails_at_trivial_subgroup_degree_zero():
    rep = g_equivalence_witness(collapse(swapped_points(), fixed_point()), swapped_points(), fixed_point())
    w = rep.first_failure()
    assert not rep.ok
    assert w["subgroup"] == [0] and w["degree"] == 0
    assert (w["source_rank"], w["target_rank"]) == (2, 1)
    assert "consistent" not in rep.summary()


def test_witness_rejects_non_equivariant_map():
    x = swapped_points()
    triv = GSSet.trivial(x.space, Z2)
    with pytest.raises(EquivarianceError):
        g_equivalence_witness(SimplicialMap.identity(x.space), x, triv)


def test_thickening_instance_passes():
    _, act = swap_pair()
    from eqhocolim.constructions import hocolim_induced, terminal
    cm = hocolim_induced(thickening(terminal(act, 3)))
    rep = g_equivalence_witness(cm.map, cm.source, cm.target)
    assert rep.ok
    assert rep.summary().startswith("consistent with G-homotopy equivalence")

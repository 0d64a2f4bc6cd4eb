from fractions import Fraction as F

import pytest

from circpers.field import GF2, QQ, rank
from circpers.complexes import (
    ComplexError,
    GenericityWarning,
    MapError,
    build_complex,
    critical_structure,
    fiber_minor,
    incidence_matrix,
    normalize_angle,
    validate_circle_map,
)
from circpers.cutting import cut_at_levels
from circpers.fixtures import brute_force_homology


def hollow_triangle_map():
    cx = build_complex([(0, 1), (1, 2), (0, 2)])
    return validate_circle_map(cx, [F(0), F(1, 3), F(2, 3)])


def test_build_complex_counts():
    assert len(build_complex([[0, 1, 2]]).simplices) == 7
    assert len(build_complex([[0, 1], [1, 2], [0, 2]]).simplices) == 6
    cx = build_complex([[0]])
    assert list(cx.simplices) == [(0,)]


def test_build_complex_errors():
    with pytest.raises(ComplexError):
        build_complex([])
    with pytest.raises(ComplexError):
        build_complex([[0, 0]])
    with pytest.raises(ComplexError):
        build_complex([[-1, 2]])


def test_face_closure_and_order():
    cx = build_complex([[2, 0, 1]])
    assert (0, 2) in cx.index
    assert (1, 2) in cx.index
    # dimension-sorted order gives Condition A: faces come first
    for i, s in enumerate(cx.simplices):
        for j, t in enumerate(cx.simplices):
            if len(s) == len(t) - 1 and set(s) < set(t):
                assert i < j


def test_winding_number_of_default_lifts():
    pm = hollow_triangle_map()
    total = (pm.edge_lift(0, 1) + pm.edge_lift(1, 2) + pm.edge_lift(2, 0))
    assert total == 1


def test_explicit_extra_wrap_lift():
    cx = build_complex([(0, 1)])
    pm = validate_circle_map(cx, [F(0), F(1, 2)], {(0, 1): F(3, 2)})
    assert pm.edge_lift(0, 1) == F(3, 2)
    assert pm.edge_lift(1, 0) == -F(3, 2)


def test_triangle_lift_condition_enforced():
    cx = build_complex([(0, 1, 2)])
    with pytest.raises(MapError):
        # lifts sum to 1 around the 2-simplex boundary
        validate_circle_map(cx, [F(0), F(1, 3), F(2, 3)],
                            {(0, 1): F(1, 3), (1, 2): F(1, 3),
                             (0, 2): -F(1, 3)})


def test_lift_must_match_angles_mod_one():
    cx = build_complex([(0, 1)])
    with pytest.raises(MapError):
        validate_circle_map(cx, [F(0), F(1, 2)], {(0, 1): F(1, 3)})


def test_genericity_warning_on_shared_angle():
    cx = build_complex([(0, 1)])
    with pytest.warns(GenericityWarning):
        validate_circle_map(cx, [F(1, 4), F(1, 4)])


def test_critical_structure_midpoints():
    crit = critical_structure(hollow_triangle_map())
    assert crit.s == [F(1, 3), F(2, 3), F(1)]
    assert [crit.t_angle(i) for i in (1, 2, 3)] == [F(1, 6), F(1, 2),
                                                    F(5, 6)]


def test_critical_structure_single_angle():
    cx = build_complex([(0, 1)])
    with pytest.warns(GenericityWarning):
        pm = validate_circle_map(cx, [F(1, 4), F(1, 4)])
    crit = critical_structure(pm)
    assert crit.m == 1
    assert crit.s == [F(1, 4)]
    # the single gap spans the whole circle; its midpoint is antipodal
    assert crit.t_angle(1) == normalize_angle(F(1, 4) - F(1, 2))


def test_cut_single_edge_multiple_crossings():
    cx = build_complex([(0, 1)])
    pm = validate_circle_map(cx, [F(0), F(1, 2)], {(0, 1): F(3, 2)})
    cut = cut_at_levels(pm, [F(1, 4)])
    # lifted level copies 1/4 and 5/4 both land inside (0, 3/2)
    assert len(cut.complex.simplices_of_dim(1)) == 3
    assert len(cut.complex.simplices_of_dim(0)) == 4


def test_cut_preserves_homology():
    pm = hollow_triangle_map()
    crit = critical_structure(pm)
    cut = cut_at_levels(pm, crit.cut_angles())
    assert len(cut.complex.simplices_of_dim(0)) == 6
    assert len(cut.complex.simplices_of_dim(1)) == 6
    for fld in (QQ, GF2):
        for r in (0, 1):
            assert (brute_force_homology(cut.complex, r, fld)
                    == brute_force_homology(pm.complex, r, fld))


def test_cut_rejects_level_at_vertex():
    pm = hollow_triangle_map()
    with pytest.raises(ValueError):
        cut_at_levels(pm, [F(1, 3)])


def test_incidence_condition_a():
    cx = build_complex([(0, 1, 2), (2, 3)])
    inc = incidence_matrix(cx)
    for i in range(len(inc.order)):
        for j in range(len(inc.order)):
            if inc.entries[i][j]:
                assert i < j
                assert len(inc.order[i]) == len(inc.order[j]) - 1


def test_signed_boundary_squares_to_zero():
    cx = build_complex([(0, 1, 2), (1, 2, 3)])
    d1 = cx.boundary_matrix(1, QQ)
    d2 = cx.boundary_matrix(2, QQ)
    assert d1.mul(d2).is_zero()
    # hollow triangle boundary has rank 2
    hollow = build_complex([(0, 1), (1, 2), (0, 2)])
    assert rank(hollow.boundary_matrix(1, QQ)) == 2


def test_fiber_minor_circle_slice():
    pm = hollow_triangle_map()
    fm = fiber_minor(pm, F(1, 6))
    assert fm.betti(0) == 1
    assert fm.betti(1) == 0


def test_fiber_minor_solid_triangle_segment():
    cx = build_complex([(0, 1, 2)])
    pm = validate_circle_map(cx, [F(0), F(1, 4), F(1, 2)])
    fm = fiber_minor(pm, F(3, 8))
    # two sliced edges, one sliced triangle: a segment
    assert len(fm.cells.get(0, [])) == 2
    assert len(fm.cells.get(1, [])) == 1
    assert fm.betti(0) == 1


def test_fiber_minor_vertex_rule():
    cx = build_complex([(0, 1, 2)])
    pm = validate_circle_map(cx, [F(0), F(1, 4), F(1, 2)])
    fm = fiber_minor(pm, F(1, 4))
    # vertex 1 contributes an extra 0-cell against the sliced triangle
    assert fm.betti(0) == 1


def test_fiber_minor_rejects_two_vertices_at_angle():
    cx = build_complex([(0, 1)])
    with pytest.warns(GenericityWarning):
        pm = validate_circle_map(cx, [F(1, 4), F(1, 4)])
    with pytest.raises(MapError):
        fiber_minor(pm, F(1, 4))


def test_fiber_minor_matches_cut_fiber_mod2():
    pm = hollow_triangle_map()
    crit = critical_structure(pm)
    cut = cut_at_levels(pm, crit.cut_angles())
    from circpers.fibers import homology_rank, level_subcomplex
    for i in (1, 2, 3):
        t = crit.t_angle(i)
        fm = fiber_minor(pm, t)
        sub = level_subcomplex(cut, t)
        for r in (0, 1):
            assert fm.betti(r) == homology_rank(sub, r, GF2)

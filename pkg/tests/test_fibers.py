from fractions import Fraction as F

import pytest

from circpers.field import GF2, QQ, Matrix
from circpers.complexes import (build_complex, critical_structure,
                                validate_circle_map)
from circpers.cutting import cut_at_levels
from circpers.fibers import (
    FiberError,
    full_subcomplex,
    homology_basis,
    homology_rank,
    induced_map,
    interval_subcomplex,
    level_subcomplex,
)
from circpers.fixtures import mapping_torus_fixture


def triangle_cut():
    cx = build_complex([(0, 1), (1, 2), (0, 2)])
    pm = validate_circle_map(cx, [F(0), F(1, 3), F(2, 3)])
    crit = critical_structure(pm)
    return cut_at_levels(pm, crit.cut_angles()), crit


def test_level_of_degree_one_map_is_a_point():
    cut, crit = triangle_cut()
    for i in (1, 2, 3):
        sub = level_subcomplex(cut, crit.t_angle(i))
        assert len(sub.simplices) == 1
        assert homology_rank(sub, 0, QQ) == 1
        assert homology_rank(sub, 1, QQ) == 0


def test_level_rejects_non_cut_angle():
    cut, crit = triangle_cut()
    with pytest.raises(FiberError):
        level_subcomplex(cut, F(1, 100))


def test_interval_pieces_are_arcs():
    cut, crit = triangle_cut()
    for i in (1, 2, 3):
        sub = interval_subcomplex(cut, i, crit)
        assert homology_rank(sub, 0, QQ) == 1
        assert homology_rank(sub, 1, QQ) == 0


def test_interval_index_range():
    cut, crit = triangle_cut()
    with pytest.raises(FiberError):
        interval_subcomplex(cut, 0, crit)
    with pytest.raises(FiberError):
        interval_subcomplex(cut, 4, crit)


def test_torus_fiber_is_a_circle():
    pm = mapping_torus_fixture("torus")
    crit = critical_structure(pm)
    cut = cut_at_levels(pm, crit.cut_angles())
    sub = level_subcomplex(cut, crit.t_angle(1))
    assert homology_rank(sub, 0, QQ) == 1
    assert homology_rank(sub, 1, QQ) == 1
    iv = interval_subcomplex(cut, 1, crit)
    assert homology_rank(iv, 0, QQ) == 1
    assert homology_rank(iv, 1, QQ) == 1


def test_homology_basis_reps_are_cycles():
    pm = mapping_torus_fixture("torus")
    crit = critical_structure(pm)
    cut = cut_at_levels(pm, crit.cut_angles())
    sub = interval_subcomplex(cut, 1, crit)
    basis = homology_basis(sub, 1, GF2)
    bd = sub.boundary_matrix(1, GF2)
    assert basis.rank == 1
    for j in range(basis.rank):
        col = basis.reps.column(j)
        assert all(x == GF2.zero for x in bd.apply(col))


def test_identity_inclusion_is_identity_matrix():
    cut, crit = triangle_cut()
    sub = interval_subcomplex(cut, 1, crit)
    basis = homology_basis(sub, 0, QQ)
    M = induced_map(basis, basis, sub, sub)
    assert M == Matrix.identity(QQ, basis.rank)


def test_point_into_arc():
    cut, crit = triangle_cut()
    lvl = level_subcomplex(cut, crit.t_angle(1))
    iv = interval_subcomplex(cut, 1, crit)
    M = induced_map(homology_basis(lvl, 0, QQ), homology_basis(iv, 0, QQ),
                    lvl, iv)
    assert (M.rows, M.cols) == (1, 1)
    assert M[0, 0] != QQ.zero


def test_induced_map_requires_inclusion():
    cut, crit = triangle_cut()
    a = level_subcomplex(cut, crit.t_angle(1))
    b = level_subcomplex(cut, crit.t_angle(2))
    with pytest.raises(FiberError):
        induced_map(homology_basis(a, 0, QQ), homology_basis(b, 0, QQ),
                    a, b)


def test_functoriality_of_inclusions():
    pm = mapping_torus_fixture("torus")
    crit = critical_structure(pm)
    cut = cut_at_levels(pm, crit.cut_angles())
    lvl = level_subcomplex(cut, crit.t_angle(1))
    iv = interval_subcomplex(cut, 1, crit)
    full = full_subcomplex(cut.complex)
    for r in (0, 1):
        ba = homology_basis(lvl, r, GF2)
        bb = homology_basis(iv, r, GF2)
        bc = homology_basis(full, r, GF2)
        ac = induced_map(ba, bc, lvl, full)
        ab = induced_map(ba, bb, lvl, iv)
        bc_m = induced_map(bb, bc, iv, full)
        assert ac == bc_m.mul(ab)


def test_empty_subcomplex_rank_zero():
    cut, crit = triangle_cut()
    from circpers.fibers import SubcomplexHandle
    empty = SubcomplexHandle(cut.complex, [], ("empty",))
    assert homology_rank(empty, 0, QQ) == 0
    basis = homology_basis(empty, 0, QQ)
    assert basis.rank == 0

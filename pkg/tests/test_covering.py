from collections import Counter
from fractions import Fraction as F

import pytest

from circpers.field import GF2, QQ, parse_field
from circpers.complexes import (PLCircleMap, build_complex,
                                critical_structure)
from circpers.cutting import cut_at_levels
from circpers.covering import (
    CoveringError,
    build_truncated_covering,
    covering_route_bars,
    dissect,
    estimate_truncation,
    extract_circle_bars,
    prepare_level_structure,
)
from circpers.quiver import CircleBarCode, build_representation, decompose


def make_map(simplices, angles, lifts):
    cx = build_complex(simplices)
    return PLCircleMap(cx, [F(a) for a in angles],
                       {e: F(d) for e, d in lifts.items()})


def triangle_map():
    return make_map([(0, 1), (1, 2), (0, 2)], [0, F(1, 3), F(2, 3)],
                    {(0, 1): F(1, 3), (1, 2): F(1, 3), (0, 2): -F(1, 3)})


def three_component_map():
    return make_map(
        [(0, 1), (1, 2), (0, 2), (3, 4), (5, 6), (6, 7)],
        [0, F(1, 3), F(2, 3), F(1, 4), F(5, 12), F(1, 10), F(3, 5),
         F(1, 5)],
        {(0, 1): F(1, 3), (1, 2): F(1, 3), (0, 2): -F(1, 3),
         (3, 4): F(1, 6), (5, 6): F(1, 2), (6, 7): F(3, 5)})


def degree_two_map():
    return make_map(
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)],
        [0, F(1, 3), F(2, 3), 0, F(1, 3), F(2, 3)],
        {(0, 1): F(1, 3), (1, 2): F(1, 3), (2, 3): F(1, 3),
         (3, 4): F(1, 3), (4, 5): F(1, 3), (0, 5): -F(1, 3)})


def route_pair(pm, r, fld):
    crit = critical_structure(pm)
    cut = cut_at_levels(pm, crit.cut_angles())
    rep = build_representation(cut, crit, r, fld)
    direct, _ = decompose(rep)
    cover, _, _ = covering_route_bars(cut, crit, r, fld)
    return direct, cover


@pytest.mark.parametrize("field_spec", ["q", "zp:2", "zp:5"])
@pytest.mark.parametrize("r", [0, 1])
def test_triangle_routes_agree(field_spec, r):
    fld = parse_field(field_spec)
    direct, cover = route_pair(triangle_map(), r, fld)
    assert direct == cover


def test_triangle_degree_one_invariants():
    # fibers of a degree-1 map are points with identity monodromy: no
    # bars, one Jordan cell, and the covering route sees nothing
    from circpers.field import JordanBlock
    pm = triangle_map()
    crit = critical_structure(pm)
    cut = cut_at_levels(pm, crit.cut_angles())
    bars, cells = decompose(build_representation(cut, crit, 0, QQ))
    assert bars == Counter()
    assert cells == Counter([JordanBlock((F(-1), F(1)), 1)])
    cover, _, _ = covering_route_bars(cut, crit, 0, QQ)
    assert cover == Counter()


@pytest.mark.parametrize("r", [0, 1])
def test_three_component_routes_agree(r):
    direct, cover = route_pair(three_component_map(), r, QQ)
    assert direct == cover


@pytest.mark.parametrize("r", [0, 1])
def test_degree_two_routes_agree(r):
    direct, cover = route_pair(degree_two_map(), r, QQ)
    assert direct == cover


def test_truncation_estimate_is_fiber_rank_plus_two():
    pm = triangle_map()
    # the fiber of a degree-1 circle map is a point
    assert estimate_truncation(pm, 0, QQ) == 3
    assert estimate_truncation(pm, 1, QQ) == 2
    # degree 2: fibers are two points
    assert estimate_truncation(degree_two_map(), 0, GF2) == 4


def test_extract_rejects_small_k():
    pm = triangle_map()
    crit = critical_structure(pm)
    cut = cut_at_levels(pm, crit.cut_angles())
    with pytest.raises(CoveringError):
        covering_route_bars(cut, crit, 0, QQ, k=1)


def test_covering_size_scales_with_k():
    pm = triangle_map()
    crit = critical_structure(pm)
    cut = cut_at_levels(pm, crit.cut_angles())
    theta = crit.t_angle(1)
    c2 = build_truncated_covering(cut, theta, 2)
    c3 = build_truncated_covering(cut, theta, 3)
    assert c3.k == 3
    n2 = len(c2.complex.simplices_of_dim(1))
    n3 = len(c3.complex.simplices_of_dim(1))
    assert n3 - n2 == len(cut.complex.simplices_of_dim(1))
    assert min(c2.values) == theta
    assert max(c2.values) == theta + 2


def test_covering_values_cover_every_domain():
    pm = triangle_map()
    crit = critical_structure(pm)
    cut = cut_at_levels(pm, crit.cut_angles())
    theta = crit.t_angle(1)
    cov = build_truncated_covering(cut, theta, 2)
    copies = {n for _, n in cov.provenance}
    assert copies == {0, 1, 2}


def test_prepare_level_structure_regulars_interleave():
    pm = triangle_map()
    crit = critical_structure(pm)
    cut = cut_at_levels(pm, crit.cut_angles())
    rc = prepare_level_structure(
        build_truncated_covering(cut, crit.t_angle(1), 2))
    assert len(rc.regulars) == len(rc.criticals) - 1
    for i, reg in enumerate(rc.regulars):
        assert rc.criticals[i] < reg < rc.criticals[i + 1]
    # every regular value is a vertex value after the recut
    vals = set(rc.values)
    for reg in rc.regulars:
        assert reg in vals


def test_dissect_partitions_simplices():
    pm = triangle_map()
    crit = critical_structure(pm)
    cut = cut_at_levels(pm, crit.cut_angles())
    theta = crit.t_angle(1)
    parts = dissect(cut, theta)
    sizes = sum(len(v) for v in parts.values())
    assert sizes == len(cut.complex.simplices)
    assert len(parts["L"]) > 0
    for s in parts["L"]:
        vals = {cut.map.angles[v] for v in s}
        assert vals == {theta}


def test_dissect_rejects_non_level():
    pm = triangle_map()
    crit = critical_structure(pm)
    cut = cut_at_levels(pm, crit.cut_angles())
    with pytest.raises(CoveringError):
        dissect(cut, F(1, 1000))


def test_extract_window_drops_first_domain_bars():
    # components mapping to proper sub-intervals of the circle give
    # genuine bars that survive extraction
    pm = three_component_map()
    crit = critical_structure(pm)
    cut = cut_at_levels(pm, crit.cut_angles())
    bars, rc, k = covering_route_bars(cut, crit, 0, QQ)
    assert extract_circle_bars(Counter(), rc, crit, crit.t_angle(1),
                               k) == Counter()
    assert sum(bars.values()) >= 2
    for bar in bars:
        assert bar.m == crit.m

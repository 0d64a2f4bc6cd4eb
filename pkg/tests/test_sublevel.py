from collections import Counter
from fractions import Fraction as F

import pytest

from circpers.field import GF2, QQ, parse_field
from circpers.complexes import build_complex
from circpers.covering import RealCut, build_linear_representation, cut_real
from circpers.fibers import full_subcomplex
from circpers.quiver import LinearBar, decompose_linear
from circpers.sublevel import (
    LevelCountContext,
    level_bar_counts,
    sublevel_mu,
    sublevel_route_bars,
)


def make_rc(simplices, values):
    cx = build_complex(simplices)
    values = [F(v) for v in values]
    crits = sorted(set(values))
    regs = [(crits[i] + crits[i + 1]) / 2 for i in range(len(crits) - 1)]
    dx, vals = cut_real(cx, values, regs)
    return RealCut(dx, vals, regs, crits)


SHAPES = {
    "segment": ([(0, 1)], [0, 1]),
    "valley": ([(0, 1), (1, 2)], [1, 0, 1]),
    "peak": ([(0, 1), (1, 2)], [0, 1, 0]),
    "seg+pt": ([(0, 1), (2,)], [0, 1, F(1, 2)]),
    "circle": ([(0, 1), (1, 3), (0, 2), (2, 3)],
               [0, F(1, 2), F(1, 2), 1]),
    "zigzag": ([(0, 1), (1, 2), (2, 3)], [0, 1, F(1, 4), F(3, 4)]),
    "triangle": ([(0, 1, 2)], [0, 1, F(1, 2)]),
    "theta": ([(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)],
              [0, 1, F(1, 2), F(1, 2), F(1, 2)]),
}


@pytest.mark.parametrize("name", sorted(SHAPES))
@pytest.mark.parametrize("field_spec", ["q", "zp:2"])
def test_counts_match_linear_decomposition(name, field_spec):
    simplices, values = SHAPES[name]
    rc = make_rc(simplices, values)
    fld = parse_field(field_spec)
    for r in (0, 1):
        direct = decompose_linear(build_linear_representation(rc, r, fld))
        counts = sublevel_route_bars(rc, r, fld)
        assert direct == counts, f"{name} r={r}"


def test_octahedron_counts_all_dims():
    rc = make_rc([(0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 2),
                  (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 2)],
                 [0, 1, F(1, 2), F(1, 2), F(1, 2), F(1, 2)])
    for r in (0, 1, 2):
        direct = decompose_linear(build_linear_representation(rc, r, QQ))
        assert direct == sublevel_route_bars(rc, r, QQ)


def test_segment_bars_pinned():
    rc = make_rc([(0, 1)], [0, 1])
    # criticals 0, 1: one component through both levels
    assert sublevel_route_bars(rc, 0, QQ) == Counter([LinearBar(2, 4)])
    assert sublevel_route_bars(rc, 1, QQ) == Counter()


def test_valley_bars_pinned():
    rc = make_rc([(0, 1), (1, 2)], [1, 0, 1])
    # the two legs are separate components above the bottom: one full
    # bar and one born open at the middle fiber
    assert sublevel_route_bars(rc, 0, QQ) == Counter(
        {LinearBar(2, 4): 1, LinearBar(3, 4): 1})


def test_peak_bars_pinned():
    rc = make_rc([(0, 1), (1, 2)], [0, 1, 0])
    # two legs merge at the top: a full bar and a closed-at-death bar
    bars = sublevel_route_bars(rc, 0, QQ)
    assert bars == Counter({LinearBar(2, 4): 1, LinearBar(2, 3): 1})


def test_circle_by_height_bars_pinned():
    rc = make_rc([(0, 1), (1, 3), (0, 2), (2, 3)],
                 [0, F(1, 2), F(1, 2), 1])
    # the two side branches are distinct between the extremes
    assert sublevel_route_bars(rc, 0, QQ) == Counter(
        {LinearBar(2, 6): 1, LinearBar(3, 5): 1})
    # no single piece between regulars contains the whole loop
    assert sublevel_route_bars(rc, 1, QQ) == Counter()


def test_sublevel_mu_segment():
    cx = build_complex([(0, 1), (1, 2)])
    sub = full_subcomplex(cx)
    values = {s: max(F(v) for v in
                     [[0, 1, F(1, 2)][u] for u in s]) for s in cx.simplices}
    pc = sublevel_mu(sub, values, 0, QQ)
    # one class born at 0 that never dies, one born at 1/2 dying at 1
    assert pc.mu(F(0), None) == 1
    assert pc.mu(F(1, 2), F(1)) == 1
    assert pc.born_at(F(0)) == 1


def test_count_context_internals():
    rc = make_rc([(0, 1), (1, 2), (2, 3)], [0, 1, F(1, 4), F(3, 4)])
    ctx = LevelCountContext(rc, 0, GF2)
    assert ctx.M == len(rc.criticals)
    # counts are consistent with the assembled multiset
    bars = level_bar_counts(ctx)
    for bar, cnt in bars.items():
        assert cnt > 0
    total = sum(bars.values())
    assert total == sum(
        ctx.bar_count(i, j, lc, rcl)
        for i in range(1, ctx.M + 1) for j in range(i, ctx.M + 1)
        for lc in (True, False) for rcl in (True, False)
        if not (i == j and not (lc and rcl)))

"""Scratch: sublevel route vs linear quiver decomposition."""
from fractions import Fraction as F

from circpers.field import parse_field
from circpers.complexes import build_complex
from circpers.covering import RealCut, cut_real, build_linear_representation
from circpers.quiver import decompose_linear
from circpers.sublevel import sublevel_route_bars


def make_rc(simplices, values):
    cx = build_complex(simplices)
    values = [F(v) for v in values]
    crits = sorted(set(values))
    regs = [(crits[i] + crits[i + 1]) / 2 for i in range(len(crits) - 1)]
    dx, vals = cut_real(cx, values, regs)
    return RealCut(dx, vals, regs, crits)


def check(name, simplices, values, rs=(0, 1)):
    rc = make_rc(simplices, values)
    fld = parse_field("q")
    for r in rs:
        a = decompose_linear(build_linear_representation(rc, r, fld))
        b = sublevel_route_bars(rc, r, fld)
        ok = a == b
        print(f"{name} r={r}: {'OK' if ok else 'MISMATCH'}")
        if not ok:
            print("  quiver:  ", dict(a))
            print("  counts:  ", dict(b))


# segment [0,1]
check("segment", [(0, 1)], [0, 1])
# V shape: two ends up at 1, middle at 0
check("V", [(0, 1), (1, 2)], [1, 0, 1])
# Lambda shape
check("Lambda", [(0, 1), (1, 2)], [0, 1, 0])
# isolated vertex mid-range plus segment
check("seg+pt", [(0, 1), (2,)], [0, 1, F(1, 2)])
# two segments, one short (vanishing closed end)
check("two segs", [(0, 1), (2, 3)], [0, 1, 0, F(1, 2)])
# circle by height: 4 vertices
check("circle", [(0, 1), (1, 3), (0, 2), (2, 3)], [0, F(1, 2), F(1, 2), 1])
# N shape: zigzag path 0-1-2-3 with heights 0,1,1/4,3/4
check("N", [(0, 1), (1, 2), (2, 3)], [0, 1, F(1, 4), F(3, 4)])
# filled triangle slanted
check("tri2", [(0, 1, 2)], [0, 1, F(1, 2)])
# theta graph: two vertices, three edges -> subdivide: 0 bottom, 1 top,
# three middle vertices
check("theta", [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)],
      [0, 1, F(1, 2), F(1, 2), F(1, 2)])
# sphere-ish: octahedron boundary by height
check("octa", [(0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 2),
               (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 2)],
      [0, 1, F(1, 2), F(1, 2), F(1, 2), F(1, 2)], rs=(0, 1, 2))

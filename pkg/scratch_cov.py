"""Scratch: quiver route vs covering route on circle maps."""
from fractions import Fraction as F

from circpers.field import parse_field
from circpers.complexes import build_complex, PLCircleMap, critical_structure
from circpers.cutting import cut_at_levels
from circpers.covering import covering_route_bars
from circpers.quiver import build_representation, decompose
from circpers.sublevel import sublevel_route_bars
from circpers.covering import extract_circle_bars


def run(name, simplices, angles, lifts, rs=(0, 1)):
    cx = build_complex(simplices)
    pm = PLCircleMap(cx, [F(a) for a in angles],
                     {e: F(d) for e, d in lifts.items()})
    crit = critical_structure(pm)
    cut = cut_at_levels(pm, crit.cut_angles())
    fld = parse_field("q")
    for r in rs:
        rep = build_representation(cut, crit, r, fld)
        bars_q, cells = decompose(rep)
        bars_c, rc, k = covering_route_bars(cut, crit, r, fld)
        ok = bars_q == bars_c
        # third route: N-counts on the same real cut
        lin = sublevel_route_bars(rc, r, fld)
        bars_s = extract_circle_bars(lin, rc, crit, crit.t_angle(1), k)
        ok3 = bars_q == bars_s
        print(f"{name} r={r}: quiver-vs-cover {'OK' if ok else 'BAD'}, "
              f"quiver-vs-counts {'OK' if ok3 else 'BAD'}, "
              f"cells={dict(cells)}")
        if not (ok and ok3):
            print("  quiver:", {b.type_str(): c for b, c in bars_q.items()})
            print("  cover: ", {b.type_str(): c for b, c in bars_c.items()})
            print("  counts:", {b.type_str(): c for b, c in bars_s.items()})


# hollow triangle, winding 1
run("triangle", [(0, 1), (1, 2), (0, 2)],
    [0, F(1, 3), F(2, 3)],
    {(0, 1): F(1, 3), (1, 2): F(1, 3), (0, 2): -F(1, 3)})

# triangle + arc + path (three components)
run("3comp",
    [(0, 1), (1, 2), (0, 2), (3, 4), (5, 6), (6, 7)],
    [0, F(1, 3), F(2, 3), F(1, 4), F(5, 12), F(1, 10), F(3, 5), F(1, 5)],
    {(0, 1): F(1, 3), (1, 2): F(1, 3), (0, 2): -F(1, 3),
     (3, 4): F(1, 6), (5, 6): F(1, 2), (6, 7): F(3, 5)})

# degree-2 circle map: hexagon winding twice over triangle angles
run("deg2", [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)],
    [0, F(1, 3), F(2, 3), 0, F(1, 3), F(2, 3)],
    {(0, 1): F(1, 3), (1, 2): F(1, 3), (2, 3): F(1, 3),
     (3, 4): F(1, 3), (4, 5): F(1, 3), (0, 5): -F(1, 3)})

"""Built-in complexes, maps and representation fixtures, plus a
brute-force homology oracle kept deliberately independent of the main
linear algebra paths.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .field import Field, Matrix
from .complexes import (PLCircleMap, SimplicialComplex, build_complex,
                        validate_circle_map)
from .quiver import CircleBarCode, CyclicQuiverRep, synthesize_model
from .field import JordanBlock


class FixtureError(ValueError):
    pass


# -- brute force homology ---------------------------------------------


def _naive_rank(fld: Field, rows: List[List]) -> int:
    """Plain Gaussian elimination, written out locally so the oracle
    does not share code with the optimized matrix routines."""
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col] != fld.zero:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = fld.inv(rows[rank][col])
        rows[rank] = [fld.mul(inv, x) for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != fld.zero:
                c = rows[i][col]
                rows[i] = [fld.sub(x, fld.mul(c, y))
                           for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def brute_force_homology(cx: SimplicialComplex, r: int, fld: Field) -> int:
    """dim H_r as dim ker boundary_r minus rank boundary_{r+1}."""
    def boundary_rows(d: int) -> List[List]:
        lower = cx.simplices_of_dim(d - 1)
        upper = cx.simplices_of_dim(d)
        idx = {s: i for i, s in enumerate(lower)}
        rows = [[fld.zero] * len(upper) for _ in lower]
        for j, s in enumerate(upper):
            for k in range(len(s)):
                rows[idx[s[:k] + s[k + 1:]]][j] = fld.from_int((-1) ** k)
        return rows

    n_r = len(cx.simplices_of_dim(r))
    if n_r == 0:
        return 0
    if r == 0:
        ker = n_r
    else:
        ker = n_r - _naive_rank(fld, boundary_rows(r))
    return ker - _naive_rank(fld, boundary_rows(r + 1))


# -- mapping torus fixtures -------------------------------------------


def _circle_band(n_lo: int, lo_ids: List[int], hi_ids: List[int],
                 proj: Dict[int, int]) -> List[Tuple[int, int, int]]:
    """Mapping cylinder triangles of a cyclic projection: the lower
    circle has n_lo vertices, proj sends its indices onto indices of the
    upper circle."""
    tris = []
    for j in range(n_lo):
        a = lo_ids[j]
        b = lo_ids[(j + 1) % n_lo]
        c = hi_ids[proj[j]]
        d = hi_ids[proj[(j + 1) % n_lo]]
        tris.append((a, b, d))
        if c != d:
            tris.append((a, c, d))
    return tris


def mapping_torus_fixture(kind: str) -> PLCircleMap:
    """Triangulated mapping torus with its projection circle map.

    kinds: "torus" (identity monodromy on a circle fiber), "klein"
    (reflection), "degree:d" (a two-band telescope whose fiber winds d
    times onto a smaller circle and comes back, net monodromy d on
    first homology).
    """
    if kind in ("torus", "klein"):
        n, L = 3, 3
        def vid(level, j):
            return level * n + j % n
        if kind == "torus":
            phi = {j: j for j in range(n)}
        else:
            phi = {j: (-j) % n for j in range(n)}
        tris: List[Tuple[int, int, int]] = []
        for level in range(L):
            nxt = level + 1
            if nxt < L:
                pr = {j: j for j in range(n)}
                hi = [vid(nxt, j) for j in range(n)]
            else:
                pr = phi
                hi = [vid(0, j) for j in range(n)]
            tris += _circle_band(n, [vid(level, j) for j in range(n)],
                                 hi, pr)
        cx = build_complex(tris)
        angles = [Fraction(v // n, L) for v in range(n * L)]
        lifts = {}
        for (u, v) in cx.edges():
            lu, lv = u // n, v // n
            if lu == lv:
                d = Fraction(0)
            elif (lu, lv) in ((0, L - 1),):
                d = Fraction(-1, L)
            else:
                d = Fraction(lv - lu, L)
            lifts[(u, v)] = d
        return validate_circle_map(cx, angles, lifts)
    if kind.startswith("degree:"):
        d = int(kind.split(":", 1)[1])
        if d < 1:
            raise FixtureError("degree must be positive")
        # small circle S at angle 0, big circle B (its d-fold
        # subdivision) at 1/2, a buffer copy M of B at 3/4.  Going up:
        # B collapses onto S by forgetting the subdivision (degree 1),
        # then B ~ M winds d times onto S at the full turn; the
        # monodromy on first homology is multiplication by d.
        small, big = 3, 3 * d
        S = list(range(small))
        B = list(range(small, small + big))
        M = list(range(small + big, small + big + big))
        sigma = {j: j // d for j in range(big)}   # collapse subdivision
        q = {j: j % small for j in range(big)}    # d-fold projection
        tris = _circle_band(big, B, S, sigma)
        tris += _circle_band(big, B, M, {j: j for j in range(big)})
        tris += _circle_band(big, M, S, q)
        cx = build_complex(tris)
        angles = ([Fraction(0)] * small + [Fraction(1, 2)] * big
                  + [Fraction(3, 4)] * big)
        lifts: Dict[Tuple[int, int], Fraction] = {}
        for (u, v) in cx.edges():
            if angles[u] == angles[v]:
                lifts[(u, v)] = Fraction(0)
            elif u in range(small) and v in range(small + big,
                                                 small + big + big):
                # S below a second-band vertex: the band tops out at
                # the next turn
                lifts[(u, v)] = Fraction(-1, 4)
            else:
                lifts[(u, v)] = angles[v] - angles[u]
        return validate_circle_map(cx, angles, lifts)
    raise FixtureError(f"unknown mapping torus kind {kind!r}")


# -- representation-level fixture --------------------------------------


def figure_rep_fixture(fld: Field) -> Tuple[CyclicQuiverRep, tuple]:
    """Direct sum of model representations over six critical angles:
    three bars of three different closure types and two Jordan cells,
    with the expected invariants returned alongside."""
    m = 6
    bars = [
        CircleBarCode(6, 1, 1, False, True, m),
        CircleBarCode(2, 3, 0, True, True, m),
        CircleBarCode(4, 5, 0, False, False, m),
    ]
    cells = [
        JordanBlock((fld.neg(fld.from_int(3)), fld.one), 1),
        JordanBlock((fld.neg(fld.one), fld.one), 2),
    ]
    reps = [synthesize_model(b, m, fld) for b in bars]
    reps += [synthesize_model(c, m, fld) for c in cells]
    return CyclicQuiverRep.direct_sum(reps), (bars, cells)


# -- random corpus -----------------------------------------------------


_ANGLE_POOL = [Fraction(n, 12) for n in range(12)]


def random_circle_map(seed: int, max_vertices: int = 7) -> PLCircleMap:
    """Deterministic small random map: a null-homotopic part built from
    a random potential plus, sometimes, a winding polygon."""
    rng = random.Random(seed)
    n = rng.randint(2, max_vertices)
    pot = [Fraction(rng.randint(-6, 12), 12) for _ in range(n)]
    simplices: List[Tuple[int, ...]] = [(v,) for v in range(n)]
    # spanning path keeps the null-homotopic part connected, which keeps
    # the fiber dimensions (and so the decomposition cost) moderate
    simplices += [(v, v + 1) for v in range(n - 1)]
    for _ in range(rng.randint(1, n + 2)):
        k = rng.choice([2, 2, 3, 4])
        if n >= k:
            simplices.append(tuple(sorted(rng.sample(range(n), k))))
    nxt = n
    if rng.random() < 0.6:
        # winding polygon, at least 3 distinct angles per turn
        w = rng.choice([1, 1, 2])
        steps = 3 * w
        poly = list(range(nxt, nxt + steps))
        nxt += steps
        for i in range(steps):
            simplices.append((poly[i], poly[(i + 1) % steps]))
        simplices.append((0, poly[0]))  # tether, keeps one component
        pot += [Fraction(i, 3) for i in range(steps)]
    cx = build_complex(simplices)
    angles = [p - (p.numerator // p.denominator) for p in pot]
    lifts: Dict[Tuple[int, int], Fraction] = {}
    for (u, v) in cx.edges():
        d = pot[v] - pot[u]
        if u >= n and v >= n and d < 0:
            d += 1  # polygon wrap edge climbs forward
        lifts[(u, v)] = d
    return validate_circle_map(cx, angles, lifts)

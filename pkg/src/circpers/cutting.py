"""Level-cut subdivision of a PL circle valued map.

cut_at_levels subdivides the complex so that the preimage of every
chosen regular angle becomes a subcomplex, and every derived simplex
lies inside one closed slab between consecutive level lifts.  Each
maximal simplex is sliced by the lifted level hyperplanes and every slab
polytope is triangulated by the pulling construction over a global
vertex order; the order restricts consistently to shared faces, so the
pieces glue to a simplicial complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .field import QQ, Matrix, rank
from .complexes import (MapError, PLCircleMap, SimplicialComplex,
                        normalize_angle)

# A derived vertex is an original vertex ('v', i) or a crossing point
# ('x', u, w, t): the point of edge (u, w), u < w, at barycentric
# parameter t from u.  The parameter is lift-shift invariant, so the key
# is globally well defined.
PointKey = tuple


def _affdim(coords: List[tuple]) -> int:
    if not coords:
        return -1
    if len(coords) == 1:
        return 0
    base = coords[0]
    rows = [[c[k] - base[k] for k in range(len(base))] for c in coords[1:]]
    return rank(Matrix(QQ, len(rows), len(base), rows))


class _SimplexCutter:
    """Slices one maximal simplex along the lifted levels."""

    def __init__(self, simplex: Tuple[int, ...], lift: Dict[int, Fraction],
                 levels: List[Fraction], periodic: bool = True):
        self.simplex = simplex
        self.lift = lift
        self.pos = {v: i for i, v in enumerate(simplex)}
        lo, hi = min(lift.values()), max(lift.values())
        cuts = set()
        if periodic:
            for c in levels:
                n = (lo - c).numerator // (lo - c).denominator
                while c + n <= hi:
                    if lo < c + n < hi:
                        cuts.add(c + n)
                    n += 1
        else:
            cuts = {c for c in levels if lo < c < hi}
        self.cuts = sorted(cuts)
        self._points_memo: Dict[tuple, dict] = {}
        self._pull_memo: Dict[frozenset, list] = {}

    def _coord(self, key: PointKey) -> tuple:
        n = len(self.simplex)
        if key[0] == "v":
            return tuple(Fraction(1 if self.pos[key[1]] == k else 0)
                         for k in range(n))
        _, u, w, t = key
        out = [Fraction(0)] * n
        out[self.pos[u]] = 1 - t
        out[self.pos[w]] = t
        return tuple(out)

    def _points(self, F: tuple, lo, hi) -> dict:
        """Vertex points of the cell F ∩ {lo <= g <= hi}: key -> lift value."""
        mk = (F, lo, hi)
        if mk in self._points_memo:
            return self._points_memo[mk]
        pts = {}
        for v in F:
            gv = self.lift[v]
            if (lo is None or gv >= lo) and (hi is None or gv <= hi):
                pts[("v", v)] = gv
        bounds = {b for b in (lo, hi) if b is not None}
        for u, w in combinations(F, 2):
            gu, gw = self.lift[u], self.lift[w]
            if gu == gw:
                continue
            for b in bounds:
                if min(gu, gw) < b < max(gu, gw):
                    t = (b - gu) / (gw - gu)
                    pts[("x", u, w, t)] = b
        self._points_memo[mk] = pts
        return pts

    def _order_key(self, key: PointKey, value: Fraction):
        if key[0] == "v":
            return (value, 0, key[1], 0, Fraction(0))
        return (value, 1, key[1], key[2], key[3])

    def _pull(self, F: tuple, lo, hi) -> List[frozenset]:
        pts = self._points(F, lo, hi)
        ck = frozenset(pts)
        if ck in self._pull_memo:
            return self._pull_memo[ck]
        coords = [self._coord(k) for k in pts]
        d = _affdim(coords)
        if len(pts) == d + 1:
            res = [ck]
        else:
            v0 = min(pts, key=lambda k: self._order_key(k, pts[k]))
            cands = [(tuple(x for x in F if x != v), lo, hi) for v in F]
            if lo is not None and lo != hi:
                cands.append((F, lo, lo))
            if hi is not None and lo != hi:
                cands.append((F, hi, hi))
            res = []
            seen = set()
            for F2, lo2, hi2 in cands:
                p2 = self._points(F2, lo2, hi2)
                if not p2 or v0 in p2:
                    continue
                fk = frozenset(p2)
                if fk == ck or fk in seen:
                    continue
                if _affdim([self._coord(k) for k in p2]) != d - 1:
                    continue
                seen.add(fk)
                for S in self._pull(F2, lo2, hi2):
                    res.append(S | {v0})
        self._pull_memo[ck] = res
        return res

    def pieces(self) -> List[Tuple[frozenset, dict]]:
        """All top-dimensional derived simplices with their point lift
        values, one batch per slab."""
        bounds = [None] + self.cuts + [None]
        out = []
        for i in range(len(bounds) - 1):
            lo, hi = bounds[i], bounds[i + 1]
            pts = self._points(self.simplex, lo, hi)
            for S in self._pull(self.simplex, lo, hi):
                out.append((S, {k: pts[k] for k in S}))
        return out


@dataclass
class CutComplex:
    """Subdivision of a circle map with chosen regular levels realized
    as subcomplexes.

    keys[i] is the derived vertex identity of vertex i; map is the
    induced circle map on the derived complex; levels are the cut angles
    in [0, 1).  No derived simplex has a level lift strictly inside its
    lift span.
    """

    complex: SimplicialComplex
    map: PLCircleMap
    keys: List[PointKey]
    levels: List[Fraction]
    back: Dict[Tuple[int, ...], Tuple[int, ...]]

    def vertex_at_level(self, i: int) -> bool:
        return self.map.angle(i) in self._level_set()

    def _level_set(self):
        if not hasattr(self, "_lvl"):
            self._lvl = set(self.levels)
        return self._lvl

    def simplex_lift_span(self, s: Tuple[int, ...]):
        vals = self.map.simplex_lift(s)
        return min(vals.values()), max(vals.values())

    def is_level_simplex(self, s: Tuple[int, ...]) -> Optional[Fraction]:
        """The level angle if s lies inside one fiber, else None."""
        vals = self.map.simplex_lift(s)
        vs = set(vals.values())
        if len(vs) != 1:
            return None
        a = normalize_angle(next(iter(vs)))
        return a if a in self._level_set() else None

    def sample_angle(self, s: Tuple[int, ...]) -> Fraction:
        """An interior angle of the simplex's image; for a non-level
        simplex it avoids every cut angle."""
        lo, hi = self.simplex_lift_span(s)
        return normalize_angle((lo + hi) / 2)


def cut_at_levels(plmap: PLCircleMap, levels) -> CutComplex:
    """Subdivide so each level's preimage is a subcomplex.

    levels: iterable of angles in turn units (taken mod 1); none may
    equal a vertex angle.
    """
    lv = sorted({normalize_angle(Fraction(c)) for c in levels})
    for v in range(plmap.complex.n_vertices):
        if plmap.angle(v) in lv:
            raise MapError(
                f"cut level {plmap.angle(v)} equals the angle of vertex {v}")
    maximal = plmap.complex.maximal_simplices()
    key_angle: Dict[PointKey, Fraction] = {}
    derived: List[frozenset] = []
    back_raw: Dict[frozenset, Tuple[int, ...]] = {}
    lift_diff: Dict[Tuple[PointKey, PointKey], Fraction] = {}
    for sigma in maximal:
        lift = plmap.simplex_lift(sigma)
        cutter = _SimplexCutter(sigma, lift, lv)
        for S, vals in cutter.pieces():
            derived.append(S)
            back_raw.setdefault(S, sigma)
            for k, val in vals.items():
                if k[0] == "v":
                    key_angle[k] = plmap.angle(k[1])
                else:
                    key_angle[k] = normalize_angle(val)
            for a, b in combinations(sorted(S), 2):
                d = vals[b] - vals[a]
                prev = lift_diff.get((a, b))
                assert prev is None or prev == d, \
                    "inconsistent lift difference on a shared face"
                lift_diff[(a, b)] = d
    all_keys = sorted(key_angle)
    kid = {k: i for i, k in enumerate(all_keys)}
    from .complexes import build_complex
    dx = build_complex([tuple(sorted(kid[k] for k in S)) for S in derived])
    angles = [key_angle[k] for k in all_keys]
    lifts = {}
    for (a, b), d in lift_diff.items():
        i, j = kid[a], kid[b]
        if i < j:
            lifts[(i, j)] = d
        else:
            lifts[(j, i)] = -d
    # closure can contain edges not listed? every derived edge occurs
    # inside some derived maximal simplex, so all lifts are present.
    dmap = PLCircleMap(dx, angles, lifts)
    back = {tuple(sorted(kid[k] for k in S)): sig
            for S, sig in back_raw.items()}
    return CutComplex(complex=dx, map=dmap, keys=all_keys, levels=lv,
                      back=back)

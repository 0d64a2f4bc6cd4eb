"""Finite simplicial complexes and piecewise linear circle valued maps.

Angles are rational fractions of a full turn, stored as Fraction in
[0, 1); the symbol 2*pi never appears numerically.  A circle valued map
is a vertex angle assignment plus an integer-offset lift value on each
oriented edge, subject to antisymmetry and the triangle cocycle
condition, which together make the map linear on every simplex.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .field import Field, Matrix, rank


class ComplexError(ValueError):
    pass


class MapError(ValueError):
    pass


class GenericityWarning(UserWarning):
    pass


class SimplicialComplex:
    """Finite abstract simplicial complex with a fixed total order.

    Simplices are tuples of vertex indices sorted ascending.  The global
    order is (dimension, lexicographic), so every proper face precedes
    its cofaces (the order condition required of incidence matrices).
    """

    def __init__(self, simplices: Sequence[Tuple[int, ...]]):
        ordered = sorted(set(tuple(sorted(s)) for s in simplices),
                         key=lambda s: (len(s), s))
        if not ordered:
            raise ComplexError("empty complex")
        self.simplices: List[Tuple[int, ...]] = ordered
        self.index: Dict[Tuple[int, ...], int] = {
            s: i for i, s in enumerate(ordered)}
        verts = sorted({v for s in ordered for v in s})
        if verts != list(range(len(verts))):
            raise ComplexError("vertex indices must be dense from 0")
        self.n_vertices = len(verts)
        # face closure check
        for s in ordered:
            if len(s) > 1:
                for f in combinations(s, len(s) - 1):
                    if f not in self.index:
                        raise ComplexError(f"missing face {f} of {s}")
        self.dim = max(len(s) for s in ordered) - 1

    def simplices_of_dim(self, d: int) -> List[Tuple[int, ...]]:
        return [s for s in self.simplices if len(s) == d + 1]

    def maximal_simplices(self) -> List[Tuple[int, ...]]:
        out = []
        for s in self.simplices:
            sset = set(s)
            if not any(len(t) == len(s) + 1 and sset < set(t)
                       for t in self.simplices_of_dim(len(s))):
                out.append(s)
        return out

    def edges(self) -> List[Tuple[int, int]]:
        return self.simplices_of_dim(1)

    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.simplices)

    def boundary_matrix(self, d: int, field: Field) -> Matrix:
        """Signed boundary from d-chains to (d-1)-chains, vertices
        ascending, standard alternating signs."""
        rows = self.simplices_of_dim(d - 1)
        cols = self.simplices_of_dim(d)
        ridx = {s: i for i, s in enumerate(rows)}
        M = [[field.zero] * len(cols) for _ in rows]
        for j, s in enumerate(cols):
            for k in range(len(s)):
                f = s[:k] + s[k + 1:]
                M[ridx[f]][j] = field.from_int((-1) ** k)
        return Matrix(field, len(rows), len(cols), M)


def build_complex(maximal_simplices: Sequence[Sequence[int]]) -> SimplicialComplex:
    """Complex generated by the given simplices, closed under faces."""
    if not maximal_simplices:
        raise ComplexError("no simplices given")
    all_faces = set()
    for s in maximal_simplices:
        s = tuple(sorted(s))
        if len(set(s)) != len(s):
            raise ComplexError(f"repeated vertex in simplex {s}")
        if any(v < 0 for v in s):
            raise ComplexError("negative vertex index")
        for k in range(1, len(s) + 1):
            all_faces.update(combinations(s, k))
    return SimplicialComplex(sorted(all_faces, key=lambda s: (len(s), s)))


@dataclass
class IncidenceMatrix:
    """Unsigned codimension-1 incidence over a fixed simplex order."""

    order: List[Tuple[int, ...]]
    entries: List[List[int]]  # 0/1, entries[i][j] = 1 iff order[i] codim-1 face of order[j]


def incidence_matrix(cx: SimplicialComplex) -> IncidenceMatrix:
    n = len(cx.simplices)
    E = [[0] * n for _ in range(n)]
    for j, s in enumerate(cx.simplices):
        if len(s) == 1:
            continue
        for k in range(len(s)):
            f = s[:k] + s[k + 1:]
            E[cx.index[f]][j] = 1
    return IncidenceMatrix(list(cx.simplices), E)


def normalize_angle(a: Fraction) -> Fraction:
    return a - (a.numerator // a.denominator)


class PLCircleMap:
    """Circle valued PL map: vertex angles + exact edge lift offsets.

    edge_lift(u, v) is the real-valued difference of any linear lift of
    the map along the edge, in turn units; it equals
    angle(v) - angle(u) mod 1 and is antisymmetric.  The sum around any
    2-simplex vanishes, so the map is linear on each simplex.
    """

    def __init__(self, cx: SimplicialComplex, angles: Sequence[Fraction],
                 lifts: Dict[Tuple[int, int], Fraction]):
        self.complex = cx
        self.angles = tuple(angles)
        self._lifts = dict(lifts)

    def angle(self, v: int) -> Fraction:
        return self.angles[v]

    def edge_lift(self, u: int, v: int) -> Fraction:
        if u < v:
            return self._lifts[(u, v)]
        return -self._lifts[(v, u)]

    def simplex_lift(self, simplex: Tuple[int, ...]) -> Dict[int, Fraction]:
        """One linear lift of the map over the simplex: exact values per
        vertex, anchored at the lowest vertex's angle."""
        v0 = simplex[0]
        out = {v0: self.angles[v0]}
        for v in simplex[1:]:
            out[v] = out[v0] + self.edge_lift(v0, v)
        return out


def validate_circle_map(cx: SimplicialComplex,
                        vertex_angle: Sequence[Fraction],
                        edge_lift: Optional[Dict[Tuple[int, int], Fraction]] = None
                        ) -> PLCircleMap:
    """Check a circle map's data and fill in default shortest-arc lifts.

    Default lift on (u, v): the representative of angle(v) - angle(u)
    in (-1/2, 1/2], ties at half a turn resolved to +1/2.
    """
    if len(vertex_angle) != cx.n_vertices:
        raise MapError("need one angle per vertex")
    angles = [normalize_angle(Fraction(a)) for a in vertex_angle]
    lifts: Dict[Tuple[int, int], Fraction] = {}
    given = edge_lift or {}
    norm_given: Dict[Tuple[int, int], Fraction] = {}
    for (u, v), val in given.items():
        val = Fraction(val)
        if u == v:
            raise MapError("edge lift on a degenerate edge")
        if u < v:
            key, kval = (u, v), val
        else:
            key, kval = (v, u), -val
        if key in norm_given and norm_given[key] != kval:
            raise MapError(f"edge lift on {key} violates antisymmetry")
        norm_given[key] = kval
    for (u, v) in cx.edges():
        d = normalize_angle(angles[v] - angles[u])
        if (u, v) in norm_given:
            val = norm_given[(u, v)]
            if normalize_angle(val) != d:
                raise MapError(
                    f"edge lift on ({u},{v}) inconsistent with angles mod 1")
        else:
            val = d if d <= Fraction(1, 2) else d - 1
        lifts[(u, v)] = val
    for key in norm_given:
        if key not in lifts:
            raise MapError(f"edge lift given on non-edge {key}")
    m = PLCircleMap(cx, angles, lifts)
    for tri in cx.simplices_of_dim(2):
        x, y, z = tri
        s = m.edge_lift(x, y) + m.edge_lift(y, z) + m.edge_lift(z, x)
        if s != 0:
            raise MapError(
                f"lifts around 2-simplex {tri} sum to {s}, not 0")
    if len(set(angles)) < len(angles):
        warnings.warn("two vertices share an angle; the map is not "
                      "injective on vertices", GenericityWarning)
    return m


@dataclass
class CriticalStructure:
    """Critical angles s_1 < ... < s_m in (0, 1] (turn units) and regular
    angles t_i, one per gap, with t_i < s_i < t_{i+1} as representatives.

    t_1 is the midpoint of the gap below s_1 and its representative may
    be <= 0 (its angle is t_1 mod 1); all other t_i are midpoints in
    (s_{i-1}, s_i).  Interval piece i is [t_i, t_{i+1}] and contains the
    single critical angle s_i (index m wraps: [t_m, t_1 + 1]).
    """

    s: List[Fraction]
    t: List[Fraction]

    @property
    def m(self) -> int:
        return len(self.s)

    def t_angle(self, i: int) -> Fraction:
        """Angle of t_i in [0, 1)."""
        return normalize_angle(self.t[i - 1])

    def s_angle(self, i: int) -> Fraction:
        return normalize_angle(self.s[i - 1])

    def cut_angles(self) -> List[Fraction]:
        return [self.t_angle(i) for i in range(1, self.m + 1)]

    def gap_of_angle(self, a: Fraction) -> int:
        """Index i with a strictly inside the circular gap (t_i, t_{i+1});
        raises if a is one of the t angles."""
        d = normalize_angle(Fraction(a) - self.t[0])
        if d == 0:
            raise ValueError(f"angle {a} is the regular angle t_1")
        r = self.t[0] + d  # representative in (t_1, t_1 + 1)
        for j in range(1, self.m):
            if r == self.t[j]:
                raise ValueError(f"angle {a} is the regular angle t_{j+1}")
            if r < self.t[j]:
                return j
        return self.m

    def critical_index_of_angle(self, a: Fraction) -> int:
        a = normalize_angle(a)
        for i in range(1, self.m + 1):
            if self.s_angle(i) == a:
                return i
        raise ValueError(f"{a} is not a critical angle")


def critical_structure(m: PLCircleMap) -> CriticalStructure:
    """Distinct vertex angles as the critical set, midpoint regulars.

    The critical set is taken to be all vertex angles; including a
    genuinely regular angle only inserts isomorphism arrows and does not
    change the decomposition.
    """
    s = sorted({a if a > 0 else a + 1 for a in m.angles})
    mm = len(s)
    t = []
    for i in range(mm):
        prev = s[i - 1] - 1 if i == 0 else s[i - 1]
        t.append((prev + s[i]) / 2)
    return CriticalStructure(s=s, t=t)


# -- fiber incidence minor (mod-2 slice complex) ----------------------


@dataclass
class FiberMinor:
    """Cell structure of the slice X_theta read off the incidence minor.

    cells: per slice-dimension lists of cell tags; matrix entries are the
    unsigned incidences, used mod 2 only.
    """

    theta: Fraction
    cells: Dict[int, List[tuple]]
    boundary: Dict[int, Matrix]  # slice-dim d -> matrix (d-1 cells) x (d cells), over Z/2

    def betti(self, r: int) -> int:
        nd = len(self.cells.get(r, []))
        if nd == 0:
            return 0
        bd = self.boundary.get(r)
        bd_up = self.boundary.get(r + 1)
        rk = rank(bd) if bd is not None and bd.rows > 0 else 0
        rk_up = rank(bd_up) if bd_up is not None and bd_up.rows > 0 else 0
        return nd - rk - rk_up


def _interior_crossings(vals: Dict[int, Fraction], theta: Fraction) -> int:
    lo = min(vals.values())
    hi = max(vals.values())
    # integers n with lo < theta + n < hi
    n_lo = (lo - theta).numerator // (lo - theta).denominator + 1
    count = 0
    n = n_lo
    while theta + n < hi:
        if theta + n > lo:
            count += 1
        n += 1
    return count


def fiber_minor(m: PLCircleMap, theta: Fraction) -> FiberMinor:
    """The slice complex at a regular-or-vertex angle theta, per the
    incidence-minor recipe: keep simplices whose interior image crosses
    theta, lower each dimension by one, unsigned entries, mod 2.

    If exactly one vertex sits at theta, it contributes an extra 0-cell
    incident (entry 1) to each 2-simplex containing it.  Two vertices at
    theta, or a simplex interior crossing theta more than once, are
    rejected.
    """
    from .field import GF2

    theta = normalize_angle(Fraction(theta))
    cx = m.complex
    at_theta = [v for v in range(cx.n_vertices) if m.angle(v) == theta]
    if len(at_theta) > 1:
        raise MapError("two or more vertices at the slice angle")
    included = {}
    for s in cx.simplices:
        if len(s) == 1:
            continue
        vals = m.simplex_lift(s)
        c = _interior_crossings(vals, theta)
        if c > 1:
            raise MapError(
                f"simplex {s} crosses the slice angle {c} times; "
                "refine the map first")
        if c == 1:
            included[s] = len(s) - 2  # slice dimension
    cells: Dict[int, List[tuple]] = {}
    for s, d in sorted(included.items(), key=lambda sd: (sd[1], sd[0])):
        cells.setdefault(d, []).append(("s", s))
    if at_theta:
        cells.setdefault(0, []).insert(0, ("v", at_theta[0]))
    boundary: Dict[int, Matrix] = {}
    for d in cells:
        if d == 0:
            continue
        rows = cells.get(d - 1, [])
        cols = cells[d]
        ridx = {c: i for i, c in enumerate(rows)}
        M = [[0] * len(cols) for _ in rows]
        for j, (_, s) in enumerate(cols):
            for k in range(len(s)):
                f = s[:k] + s[k + 1:]
                if ("s", f) in ridx:
                    M[ridx[("s", f)]][j] ^= 1
            if at_theta and d == 1 and at_theta[0] in s:
                M[ridx[("v", at_theta[0])]][j] ^= 1
        boundary[d] = Matrix.from_int_rows(GF2, M, cols=len(cols))
    return FiberMinor(theta=theta, cells=cells, boundary=boundary)

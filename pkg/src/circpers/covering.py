"""Truncated infinite cyclic covering and bar extraction.

The circle map pulls back over the universal covering of the circle to
a real-valued map on an infinite complex; truncating to k fundamental
domains gives a finite complex whose level persistence, restricted to
bars born in the second domain, reproduces the circle bar codes.  This
is an independent route used to cross-check the direct quiver
decomposition.  Jordan cells are invisible here by design.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .field import Field, Matrix
from .complexes import (CriticalStructure, PLCircleMap, SimplicialComplex,
                        build_complex, critical_structure, normalize_angle)
from .cutting import CutComplex, _SimplexCutter, cut_at_levels
from .fibers import (SubcomplexHandle, homology_basis, homology_rank,
                     induced_map, level_subcomplex)
from .quiver import (CircleBarCode, LinearBar, LinearQuiverRep,
                     decompose_linear)


class CoveringError(ValueError):
    pass


def estimate_truncation(plmap: PLCircleMap, r: int, fld: Field,
                        theta=None, cut: Optional[CutComplex] = None) -> int:
    """k = d + 2 where d = dim H_r of the fiber at theta (default t_1)."""
    crit = critical_structure(plmap)
    if theta is None:
        theta = crit.t_angle(1)
    theta = normalize_angle(Fraction(theta))
    if cut is None:
        cut = cut_at_levels(plmap, crit.cut_angles())
    d = homology_rank(level_subcomplex(cut, theta), r, fld)
    return d + 2


def dissect(cut: CutComplex, theta) -> Dict[str, List[Tuple[int, ...]]]:
    """Partition the simplices into the fiber at theta (L), its two
    collars (Lminus = image below theta, Lplus = above) and the rest (T).
    theta must be a cut level."""
    theta = normalize_angle(Fraction(theta))
    if theta not in set(cut.levels):
        raise CoveringError(f"{theta} is not a cut level")
    out = {"T": [], "L": [], "Lminus": [], "Lplus": []}
    for s in cut.complex.simplices:
        lv = cut.is_level_simplex(s)
        if lv == theta:
            out["L"].append(s)
            continue
        vals = cut.map.simplex_lift(s)
        lo, hi = min(vals.values()), max(vals.values())
        n = (lo - theta).numerator // (lo - theta).denominator
        touch_lo = theta + n == lo
        touch_hi = hi in (theta + n, theta + n + 1)
        # a non-level simplex can touch the fiber from one side only
        if touch_hi and not touch_lo:
            # top face on the fiber: image below theta
            out["Lminus"].append(s)
        elif touch_lo and not touch_hi:
            out["Lplus"].append(s)
        elif touch_lo and touch_hi:
            raise CoveringError(f"simplex {s} spans a whole turn at {theta}")
        else:
            out["T"].append(s)
    return out


@dataclass
class TruncatedCovering:
    """k fundamental domains of the cyclic covering of the circle map,
    with exact real vertex values spanning [theta, theta + k]."""

    complex: SimplicialComplex
    values: List[Fraction]
    k: int
    theta: Fraction
    provenance: List[Tuple[int, int]]  # per vertex: (cut vertex id, copy)


def _window_values(cut: CutComplex, theta: Fraction,
                   s: Tuple[int, ...]) -> Dict[int, Fraction]:
    """Lift values of a derived simplex, shifted into the fundamental
    window [theta, theta + 1]; a fiber simplex at theta is pinned at
    the bottom."""
    vals = cut.map.simplex_lift(s)
    lo, hi = min(vals.values()), max(vals.values())
    mid = (lo + hi) / 2
    d = normalize_angle(normalize_angle(mid) - theta)
    rep = theta + d
    shift = rep - mid
    assert shift.denominator == 1, "window shift is not a whole turn"
    return {v: val + shift for v, val in vals.items()}


def build_truncated_covering(cut: CutComplex, theta, k: int
                             ) -> TruncatedCovering:
    theta = normalize_angle(Fraction(theta))
    if theta not in set(cut.levels):
        raise CoveringError(f"{theta} is not a cut level")
    if k < 1:
        raise CoveringError("k must be at least 1")
    key_val: Dict[tuple, Fraction] = {}
    simplices: List[tuple] = []
    for s in cut.complex.maximal_simplices():
        w = _window_values(cut, theta, s)
        flat_bottom = (len(set(w.values())) == 1
                       and next(iter(w.values())) == theta)
        # the theta fiber bounds two copies; emit it once per boundary
        copies = range(k + 1) if flat_bottom else range(k)
        for n in copies:
            keys = []
            for v in s:
                kv = (v, w[v] + n)
                key_val[kv] = w[v] + n
                keys.append(kv)
            simplices.append(tuple(keys))
    order = sorted(key_val, key=lambda kv: (kv[1], kv[0]))
    kid = {kv: i for i, kv in enumerate(order)}
    cx = build_complex([tuple(sorted(kid[kv] for kv in s))
                        for s in simplices])
    values = [key_val[kv] for kv in order]
    prov = [(kv[0], int(kv[1] - theta)) for kv in order]
    return TruncatedCovering(cx, values, k, theta, prov)


# -- real-valued cutting and the level representation -----------------


@dataclass
class RealCut:
    """A complex with exact real vertex values, recut so each chosen
    regular value's preimage is a subcomplex; criticals are the distinct
    vertex values of the original complex, regulars the midpoints
    between consecutive ones."""

    complex: SimplicialComplex
    values: List[Fraction]
    regulars: List[Fraction]
    criticals: List[Fraction]

    def __post_init__(self):
        self._spans = {}
        for s in self.complex.simplices:
            vs = [self.values[v] for v in s]
            self._spans[s] = (min(vs), max(vs))

    def span(self, s: Tuple[int, ...]) -> Tuple[Fraction, Fraction]:
        return self._spans[s]


def cut_real(cx: SimplicialComplex, values: List[Fraction],
             levels: List[Fraction]
             ) -> Tuple[SimplicialComplex, List[Fraction]]:
    """Subdivide a real-valued complex at the given levels (none equal
    to a vertex value)."""
    lv = sorted(set(levels))
    for v, val in enumerate(values):
        if val in lv:
            raise CoveringError(f"cut level {val} equals vertex {v} value")
    key_val: Dict[tuple, Fraction] = {}
    derived: List[frozenset] = []
    for sigma in cx.maximal_simplices():
        lift = {v: values[v] for v in sigma}
        cutter = _SimplexCutter(sigma, lift, lv, periodic=False)
        for S, vals in cutter.pieces():
            derived.append(S)
            for kk, val in vals.items():
                key_val[kk] = val
    order = sorted(key_val)
    kid = {kk: i for i, kk in enumerate(order)}
    dx = build_complex([tuple(sorted(kid[kk] for kk in S))
                        for S in derived])
    return dx, [key_val[kk] for kk in order]


def prepare_level_structure(cov: TruncatedCovering) -> RealCut:
    """Recut the covering at midpoints between consecutive distinct
    vertex values, making every regular fiber a subcomplex."""
    crits = sorted(set(cov.values))
    regs = [(crits[i] + crits[i + 1]) / 2 for i in range(len(crits) - 1)]
    dx, vals = cut_real(cov.complex, cov.values, regs)
    return RealCut(dx, vals, regs, crits)


def _real_subcomplex(rc: RealCut, lo, hi) -> SubcomplexHandle:
    members = []
    for s in rc.complex.simplices:
        mn, mx = rc.span(s)
        if (lo is None or mn >= lo) and (hi is None or mx <= hi):
            members.append(s)
    return SubcomplexHandle(rc.complex, members, ("real", lo, hi))


def build_linear_representation(rc: RealCut, r: int, fld: Field
                                ) -> LinearQuiverRep:
    """Level representation of the real map: odd space i is the fiber at
    the regular value below the i-th critical (empty for i = 1), even
    space i the interval piece containing it."""
    M = len(rc.criticals)
    regs = rc.regulars  # length M - 1
    empty = SubcomplexHandle(rc.complex, [], ("empty",))
    fiber_subs = [empty]
    for i in range(2, M + 1):
        fiber_subs.append(SubcomplexHandle(
            rc.complex,
            [s for s in rc.complex.simplices
             if rc.span(s) == (regs[i - 2], regs[i - 2])],
            ("fiber", i)))
    fiber_bases = [homology_basis(sub, r, fld) for sub in fiber_subs]
    alpha = []
    beta = []
    for i in range(1, M + 1):
        lo = regs[i - 2] if i >= 2 else None
        hi = regs[i - 1] if i <= M - 1 else None
        iv = _real_subcomplex(rc, lo, hi)
        ib = homology_basis(iv, r, fld)
        alpha.append(induced_map(fiber_bases[i - 1], ib,
                                 fiber_subs[i - 1], iv))
        if i <= M - 1:
            beta.append(induced_map(fiber_bases[i], ib, fiber_subs[i], iv))
    return LinearQuiverRep(fld, alpha, beta)


def _linear_bar_endpoints(bar: LinearBar, M: int
                          ) -> Tuple[int, bool, int, bool]:
    """Critical indices and closure flags of a level bar; open ends sit
    at fiber positions, one step outside the supported intervals."""
    if bar.p % 2 == 0:
        a, lc = bar.p // 2, True
    else:
        a, lc = (bar.p - 1) // 2, False
    if bar.q % 2 == 0:
        b, rc = bar.q // 2, True
    else:
        b, rc = (bar.q + 1) // 2, False
    assert 1 <= a <= M and 1 <= b <= M, \
        "bar endpoint outside the critical range"
    return a, lc, b, rc


def extract_circle_bars(linear_bars: Counter, rc: RealCut,
                        crit: CriticalStructure, theta, k: int) -> Counter:
    """Keep level bars whose left endpoint value lies in the second
    fundamental domain (theta + 1, theta + 2], re-expressed as circle
    bars.

    Retained endpoints must land on critical angles of the circle map;
    an endpoint at a regular angle means the bar touched the truncation
    boundary, i.e. k was too small -- rejected loudly.
    """
    if k < 2:
        raise CoveringError("need at least two fundamental domains")
    theta = normalize_angle(Fraction(theta))
    win_lo, win_hi = theta + 1, theta + 2
    M = len(rc.criticals)
    out: Counter = Counter()
    for bar, cnt in linear_bars.items():
        a, lc, b, rcl = _linear_bar_endpoints(bar, M)
        L = rc.criticals[a - 1]
        if not (win_lo < L <= win_hi):
            continue
        R = rc.criticals[b - 1]
        try:
            I = crit.critical_index_of_angle(L)
            J = crit.critical_index_of_angle(R)
        except ValueError:
            raise CoveringError(
                f"extracted bar endpoint at a regular value "
                f"({L}, {R}): truncation boundary reached")
        # critical representatives live in (0, 1], ascending with index
        shift = L - crit.s[I - 1]
        assert shift.denominator == 1
        kk = (R - shift) - crit.s[J - 1]
        assert kk.denominator == 1 and kk >= 0
        out[CircleBarCode(I, J, int(kk), lc, rcl, crit.m)] += cnt
    return out


def covering_route_bars(cut: CutComplex, crit: CriticalStructure, r: int,
                        fld: Field, k: Optional[int] = None,
                        theta=None
                        ) -> Tuple[Counter, RealCut, int]:
    """Full pipeline: truncation estimate, covering, recut, linear
    decomposition, extraction."""
    if theta is None:
        theta = crit.t_angle(1)
    if k is None:
        d = homology_rank(level_subcomplex(cut, normalize_angle(
            Fraction(theta))), r, fld)
        k = d + 2
    cov = build_truncated_covering(cut, theta, k)
    rc = prepare_level_structure(cov)
    bars = extract_circle_bars(decompose_linear(
        build_linear_representation(rc, r, fld)), rc, crit, theta, k)
    return bars, rc, k

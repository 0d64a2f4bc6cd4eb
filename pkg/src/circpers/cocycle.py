"""Rational 1-cocycles and their circle maps.

A 1-cocycle assigns a rational flow to each oriented edge, antisymmetric
and summing to zero around every 2-simplex.  When the holonomies around
independent cycles are all integer multiples of a positive rational
period alpha, integrating over a spanning forest and reducing mod alpha
produces a PL circle map, and the whole persistence pipeline applies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .complexes import (PLCircleMap, SimplicialComplex, normalize_angle,
                        validate_circle_map)


class CocycleError(ValueError):
    pass


@dataclass
class OneCocycle:
    """Antisymmetric edge values with zero triangle sums; stored on the
    ascending orientation of each edge."""

    complex: SimplicialComplex
    values: Dict[Tuple[int, int], Fraction]

    def value(self, u: int, v: int) -> Fraction:
        if u < v:
            return self.values[(u, v)]
        return -self.values[(v, u)]


@dataclass
class AlmostIntegralWitness:
    """Period and per-fundamental-cycle holonomies; alpha None means the
    cocycle is exact (every holonomy vanishes)."""

    alpha: Optional[Fraction]
    holonomies: List[Fraction]
    chords: List[Tuple[int, int]]  # non-forest edge per holonomy

    @property
    def exact(self) -> bool:
        return self.alpha is None


def validate_cocycle(cx: SimplicialComplex, edge_values: dict) -> OneCocycle:
    """Check antisymmetry-normalized coverage of every edge and the zero
    sum around every 2-simplex."""
    vals: Dict[Tuple[int, int], Fraction] = {}
    for (u, v), raw in edge_values.items():
        if u == v:
            raise CocycleError("cocycle value on a degenerate edge")
        val = Fraction(raw)
        key, kval = ((u, v), val) if u < v else ((v, u), -val)
        if key in vals and vals[key] != kval:
            raise CocycleError(f"edge {key} given twice with "
                               "non-antisymmetric values")
        vals[key] = kval
    for e in cx.edges():
        if e not in vals:
            raise CocycleError(f"no cocycle value on edge {e}")
    for key in vals:
        if key not in cx.index:
            raise CocycleError(f"cocycle value on non-edge {key}")
    coc = OneCocycle(cx, vals)
    for tri in cx.simplices_of_dim(2):
        x, y, z = tri
        s = coc.value(x, y) + coc.value(y, z) + coc.value(z, x)
        if s != 0:
            raise CocycleError(
                f"values around 2-simplex {tri} sum to {s}, not 0")
    return coc


def _spanning_forest(cx: SimplicialComplex
                     ) -> Tuple[Dict[int, Fraction], List[Tuple[int, int]]]:
    """BFS forest rooted at the lowest vertex of each component; returns
    (parent edge map as vertex -> (parent, edge), chord list)."""
    adj: Dict[int, List[Tuple[int, int, int]]] = {}
    for (u, v) in cx.edges():
        adj.setdefault(u, []).append((v, u, v))
        adj.setdefault(v, []).append((u, u, v))
    seen: Dict[int, Optional[Tuple[int, int, int]]] = {}
    tree_edges = set()
    for root in range(cx.n_vertices):
        if root in seen:
            continue
        seen[root] = None
        queue = [root]
        while queue:
            x = queue.pop(0)
            for (y, u, v) in sorted(adj.get(x, [])):
                if y not in seen:
                    seen[y] = (x, u, v)
                    tree_edges.add((u, v))
                    queue.append(y)
    chords = [e for e in cx.edges() if e not in tree_edges]
    return seen, chords


def _potentials(cx: SimplicialComplex, coc: OneCocycle) -> Dict[int, Fraction]:
    parent, _ = _spanning_forest(cx)
    pot: Dict[int, Fraction] = {}

    def fill(v: int) -> Fraction:
        if v in pot:
            return pot[v]
        if parent[v] is None:
            pot[v] = Fraction(0)
        else:
            x, _, _ = parent[v]
            pot[v] = fill(x) + coc.value(x, v)
        return pot[v]

    for v in range(cx.n_vertices):
        fill(v)
    return pot


def _rational_gcd(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(math.gcd(a.numerator * b.denominator,
                             b.numerator * a.denominator),
                    a.denominator * b.denominator)


def period_alpha(coc: OneCocycle) -> AlmostIntegralWitness:
    """Fundamental-cycle holonomies over a spanning forest and their
    rational gcd; exact (alpha None) when every holonomy is zero."""
    cx = coc.complex
    pot = _potentials(cx, coc)
    _, chords = _spanning_forest(cx)
    hols = [pot[u] + coc.value(u, v) - pot[v] for (u, v) in chords]
    alpha: Optional[Fraction] = None
    for h in hols:
        if h == 0:
            continue
        alpha = abs(h) if alpha is None else _rational_gcd(alpha, abs(h))
    if alpha is not None:
        assert all((h / alpha).denominator == 1 for h in hols)
    return AlmostIntegralWitness(alpha, hols, chords)


def cocycle_to_circle_map(coc: OneCocycle,
                          witness: Optional[AlmostIntegralWitness] = None
                          ) -> PLCircleMap:
    """Integrate over a spanning forest and reduce mod the period.

    Vertex angles are potentials over alpha mod one turn; edge lifts are
    the cocycle values over alpha, which agree with the angles mod 1
    because every holonomy is an integer multiple of alpha.  An exact
    cocycle integrates to a real-valued potential, emitted as a
    winding-zero circle map with period one.
    """
    if witness is None:
        witness = period_alpha(coc)
    alpha = witness.alpha if witness.alpha is not None else Fraction(1)
    if alpha <= 0:
        raise CocycleError("period must be positive")
    cx = coc.complex
    pot = _potentials(cx, coc)
    angles = [normalize_angle(pot[v] / alpha) for v in range(cx.n_vertices)]
    lifts = {(u, v): coc.value(u, v) / alpha for (u, v) in cx.edges()}
    return validate_circle_map(cx, angles, lifts)


def circle_map_to_cocycle(plmap: PLCircleMap
                          ) -> Tuple[OneCocycle, Fraction]:
    """Edge lifts as cocycle values, with period one turn."""
    cx = plmap.complex
    vals = {(u, v): plmap.edge_lift(u, v) for (u, v) in cx.edges()}
    return validate_cocycle(cx, vals), Fraction(1)

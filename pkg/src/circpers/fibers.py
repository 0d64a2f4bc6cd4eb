"""Level and interval subcomplexes of a cut complex, their homology, and
inclusion-induced maps: the raw material for the quiver representation.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .field import (Field, Matrix, column_space_pivots, kernel_basis,
                    solve, solve_many)
from .complexes import CriticalStructure, SimplicialComplex, normalize_angle
from .cutting import CutComplex


class FiberError(ValueError):
    pass


@dataclass
class SubcomplexHandle:
    """A face-closed set of simplices of a parent complex."""

    parent: SimplicialComplex
    simplices: List[Tuple[int, ...]]
    kind: tuple
    _index: dict = dc_field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.simplices = sorted(set(self.simplices),
                                key=lambda s: (len(s), s))
        self._index = {s: i for i, s in enumerate(self.simplices)}

    def contains(self, s) -> bool:
        return tuple(s) in self._index

    def of_dim(self, d: int) -> List[Tuple[int, ...]]:
        return [s for s in self.simplices if len(s) == d + 1]

    def is_subset_of(self, other: "SubcomplexHandle") -> bool:
        return all(other.contains(s) for s in self.simplices)

    def boundary_matrix(self, d: int, fld: Field) -> Matrix:
        rows = self.of_dim(d - 1)
        cols = self.of_dim(d)
        ridx = {s: i for i, s in enumerate(rows)}
        M = [[fld.zero] * len(cols) for _ in rows]
        for j, s in enumerate(cols):
            for k in range(len(s)):
                f = s[:k] + s[k + 1:]
                M[ridx[f]][j] = fld.from_int((-1) ** k)
        return Matrix(fld, len(rows), len(cols), M)


def full_subcomplex(cx: SimplicialComplex) -> SubcomplexHandle:
    return SubcomplexHandle(cx, list(cx.simplices), ("full",))


def _circular_open(a: Fraction, b: Fraction, x: Fraction) -> bool:
    """x strictly inside the circular arc from a up to b (a != b)."""
    if a < b:
        return a < x < b
    return x > a or x < b


def level_subcomplex(cut: CutComplex, t) -> SubcomplexHandle:
    """The fiber over the cut angle t: all simplices whose lift is
    constant at a level congruent to t."""
    t = normalize_angle(Fraction(t))
    if t not in set(cut.levels):
        raise FiberError(f"{t} is not a cut level")
    members = [s for s in cut.complex.simplices
               if cut.is_level_simplex(s) == t]
    return SubcomplexHandle(cut.complex, members, ("level", t))


def interval_subcomplex(cut: CutComplex, i: int,
                        crit: Optional[CriticalStructure] = None
                        ) -> SubcomplexHandle:
    """The interval piece between consecutive cut angles: gap i runs
    from t_i to t_{i+1} (index m wraps around).

    With a CriticalStructure, gaps follow its labeling; otherwise the
    sorted cut angles are used directly.
    """
    if crit is not None:
        t_angles = [crit.t_angle(j) for j in range(1, crit.m + 1)]
    else:
        t_angles = sorted(cut.levels)
    m = len(t_angles)
    if not 1 <= i <= m:
        raise FiberError(f"gap index {i} out of range 1..{m}")
    if set(t_angles) != set(cut.levels):
        raise FiberError("cut levels do not match the critical structure")
    if m == 1:
        return SubcomplexHandle(cut.complex, list(cut.complex.simplices),
                                ("interval", i))
    a = t_angles[i - 1]
    b = t_angles[i % m]
    members = []
    for s in cut.complex.simplices:
        lv = cut.is_level_simplex(s)
        if lv is not None:
            if lv == a or lv == b:
                members.append(s)
        elif _circular_open(a, b, cut.sample_angle(s)):
            members.append(s)
    return SubcomplexHandle(cut.complex, members, ("interval", i))


@dataclass
class HomologyBasis:
    """Cycle representatives spanning H_r of a subcomplex.

    reps: (r-chains x rank) matrix of cycle columns; bd_above: the
    boundary matrix from (r+1)-chains, kept to express arbitrary cycles
    in this basis modulo boundaries.
    """

    dimension: int
    fld: Field
    chain_simplices: List[Tuple[int, ...]]
    reps: Matrix
    bd_above: Matrix

    @property
    def rank(self) -> int:
        return self.reps.cols

    def chain_index(self) -> Dict[Tuple[int, ...], int]:
        return {s: i for i, s in enumerate(self.chain_simplices)}

    def express(self, chain) -> tuple:
        """Class coordinates of a cycle given as a chain vector."""
        return self.express_many(
            Matrix.from_columns(self.fld, [tuple(chain)],
                                rows=len(self.chain_simplices))).column(0)

    def express_many(self, chains: Matrix) -> Matrix:
        """Class coordinates of several cycles (as columns) from a
        single elimination."""
        A = self.bd_above.hstack(self.reps)
        X = solve_many(A, chains)
        if X is None:
            raise FiberError("cycle not expressible: inconsistent bases")
        return Matrix(self.fld, self.rank, chains.cols,
                      X.data[self.bd_above.cols:])


def homology_basis(sub: SubcomplexHandle, r: int, fld: Field) -> HomologyBasis:
    chains = sub.of_dim(r)
    n = len(chains)
    bd_above = sub.boundary_matrix(r + 1, fld)
    if r == 0:
        cycles = Matrix.identity(fld, n)
    else:
        cycles = kernel_basis(sub.boundary_matrix(r, fld))
    A = bd_above.hstack(cycles)
    piv = column_space_pivots(A)
    rep_cols = [cycles.column(j - bd_above.cols) for j in piv
                if j >= bd_above.cols]
    reps = Matrix.from_columns(fld, rep_cols, rows=n)
    return HomologyBasis(r, fld, chains, reps, bd_above)


def homology_rank(sub: SubcomplexHandle, r: int, fld: Field) -> int:
    return homology_basis(sub, r, fld).rank


def induced_map(basis_small: HomologyBasis, basis_big: HomologyBasis,
                small: SubcomplexHandle, big: SubcomplexHandle) -> Matrix:
    """Matrix of H_r(inclusion) with respect to the two bases."""
    if not small.is_subset_of(big):
        raise FiberError("induced_map requires an inclusion")
    fld = basis_small.fld
    big_idx = basis_big.chain_index()
    cols = []
    for c in range(basis_small.rank):
        vec = [fld.zero] * len(basis_big.chain_simplices)
        col = basis_small.reps.column(c)
        for i, s in enumerate(basis_small.chain_simplices):
            vec[big_idx[s]] = col[i]
        cols.append(tuple(vec))
    if not cols:
        return Matrix(fld, basis_big.rank, 0, [[] for _ in
                                               range(basis_big.rank)])
    return basis_big.express_many(Matrix.from_columns(
        fld, cols, rows=len(basis_big.chain_simplices)))

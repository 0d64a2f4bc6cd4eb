"""Level bar codes of a real-valued map via sublevel persistence counts.

A third, independent route to the level bar codes of the truncated
covering: standard sublevel persistence numbers mu of the upward and
downward maps, plus the simultaneous two-sided counts omega, combined by
inclusion-exclusion into the four bar-count families N[.,.), N(.,.],
N(.,.), N[.,.].
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .field import Field, Matrix, kernel_basis, rank
from .fibers import SubcomplexHandle, homology_basis, induced_map
from .covering import RealCut
from .quiver import LinearBar


class SublevelError(ValueError):
    pass


# -- sublevel filtration of a vertex-valued subcomplex ----------------


class BasisCache:
    """Shared homology bases keyed by the simplex set, so overlapping
    band subcomplexes across the many count tables are eliminated only
    once."""

    def __init__(self, fld: Field):
        self.fld = fld
        self._bases: Dict[tuple, object] = {}

    def basis(self, sub: SubcomplexHandle, r: int):
        key = (frozenset(sub.simplices), r)
        if key not in self._bases:
            self._bases[key] = homology_basis(sub, r, self.fld)
        return self._bases[key]


class SublevelFiltration:
    """Filtration of a subcomplex by max vertex value; levels are the
    distinct vertex values.  Faithful to the PL sublevel filtration by
    the lower-star retraction."""

    def __init__(self, sub: SubcomplexHandle, values, r: int, fld: Field,
                 cache: Optional[BasisCache] = None):
        self.sub = sub
        self.values = values
        self.r = r
        self.fld = fld
        self.cache = cache
        verts = sorted({v for s in sub.simplices for v in s})
        self.levels: List[Fraction] = sorted({values[v] for v in verts})
        self._subs: Dict[int, SubcomplexHandle] = {}
        self._bases: Dict[int, object] = {}
        self._ranks: Dict[Tuple[int, int], int] = {}
        self._maps: Dict[Tuple[int, int], Matrix] = {}

    @property
    def top(self) -> int:
        return len(self.levels)

    def _simplex_value(self, s) -> Fraction:
        return max(self.values[v] for v in s)

    def stage(self, p: int) -> SubcomplexHandle:
        """Subcomplex at level index p (1-based; 0 is empty)."""
        if p not in self._subs:
            if p == 0:
                members = []
            else:
                cutoff = self.levels[p - 1]
                members = [s for s in self.sub.simplices
                           if self._simplex_value(s) <= cutoff]
            self._subs[p] = SubcomplexHandle(self.sub.parent, members,
                                             ("sublevel", p))
        return self._subs[p]

    def basis(self, p: int):
        if p not in self._bases:
            if self.cache is not None:
                self._bases[p] = self.cache.basis(self.stage(p), self.r)
            else:
                self._bases[p] = homology_basis(self.stage(p), self.r,
                                                self.fld)
        return self._bases[p]

    def map_between(self, p: int, q: int) -> Matrix:
        """Composite H_r(stage p) -> H_r(stage q), p <= q, built from
        consecutive-step induced maps; composing small homology-level
        matrices avoids re-expressing cycles in every later stage."""
        if (p, q) in self._maps:
            return self._maps[(p, q)]
        if p == q:
            out = Matrix.identity(self.fld, self.basis(p).rank)
        elif q == p + 1:
            out = induced_map(self.basis(p), self.basis(q),
                              self.stage(p), self.stage(q))
        else:
            out = self.map_between(q - 1, q).mul(
                self.map_between(p, q - 1))
        self._maps[(p, q)] = out
        return out

    def image_rank(self, p: int, q: int) -> int:
        """dim img(H_r(stage p) -> H_r(stage q)), p <= q."""
        if p == 0:
            return 0
        if (p, q) not in self._ranks:
            self._ranks[(p, q)] = rank(self.map_between(p, q))
        return self._ranks[(p, q)]


@dataclass
class PersistenceCounts:
    """mu_r(a, b): classes born exactly at level a, dying exactly at
    level b (b = None means never)."""

    levels: List[Fraction]
    table: Dict[Tuple[Fraction, Optional[Fraction]], int]

    def mu(self, a, b=None) -> int:
        return self.table.get((a, b), 0)

    def born_at(self, a) -> int:
        return sum(c for (aa, _), c in self.table.items() if aa == a)


def sublevel_mu(sub: SubcomplexHandle, values, r: int, fld: Field,
                births_upto: Optional[int] = None,
                cache: Optional[BasisCache] = None) -> PersistenceCounts:
    """Sublevel persistence counts by image-rank inclusion-exclusion.

    births_upto limits the computation to births at the first so many
    levels (the full table is quadratic in the level count).
    """
    F = SublevelFiltration(sub, values, r, fld, cache=cache)
    M = F.top
    pmax = M if births_upto is None else min(births_upto, M)
    table: Dict[Tuple[Fraction, Optional[Fraction]], int] = {}
    for p in range(1, pmax + 1):
        for q in range(p + 1, M + 1):
            mu = (F.image_rank(p, q - 1) - F.image_rank(p, q)
                  - F.image_rank(p - 1, q - 1) + F.image_rank(p - 1, q))
            assert mu >= 0, "negative persistence count"
            if mu:
                table[(F.levels[p - 1], F.levels[q - 1])] = mu
        inf = F.image_rank(p, M) - F.image_rank(p - 1, M)
        assert inf >= 0
        if inf:
            table[(F.levels[p - 1], None)] = inf
    return PersistenceCounts(F.levels, table)


# -- simultaneous two-sided persistence -------------------------------


@dataclass
class SimultaneousCounts:
    """omega(u, v): classes of H_r(A) dying at exactly u downward and
    exactly v upward (g-coordinates; None = never)."""

    table: Dict[Tuple[Optional[Fraction], Optional[Fraction]], int]

    def omega(self, u, v) -> int:
        return self.table.get((u, v), 0)


def _span_columns(vecs: List[tuple], fld: Field, dim: int) -> Matrix:
    return Matrix.from_columns(fld, vecs, rows=dim)


def _dim_sum(fld: Field, dim: int, U: List[tuple], V: List[tuple]) -> int:
    return rank(_span_columns(U + V, fld, dim))


def _dim_cap(fld: Field, dim: int, U: List[tuple], V: List[tuple]) -> int:
    return len(U) + len(V) - _dim_sum(fld, dim, U, V)


def _kernel_chain(A_basis, A_sub: SubcomplexHandle,
                  filt: SublevelFiltration) -> List[Tuple[Fraction, List[tuple]]]:
    """Per positive filtration level: spanning vectors of
    ker(H_r(A) -> H_r(stage)), in A-basis coordinates; the chain is
    increasing in the level."""
    fld = filt.fld
    out = []
    M0 = induced_map(A_basis, filt.basis(1), A_sub, filt.stage(1))
    for p in range(1, filt.top + 1):
        lv = filt.levels[p - 1]
        if lv == 0:
            continue
        M = filt.map_between(1, p).mul(M0)
        K = kernel_basis(M)
        out.append((lv, [K.column(j) for j in range(K.cols)]))
    return out


def simultaneous_omega(w_minus: Tuple[SubcomplexHandle, dict],
                       w_plus: Tuple[SubcomplexHandle, dict],
                       A: SubcomplexHandle, r: int, fld: Field,
                       cache: Optional[BasisCache] = None
                       ) -> SimultaneousCounts:
    """Two-sided exact-death counts.

    w_minus and w_plus are (subcomplex, nonnegative vertex values) with
    the zero level equal to A in both.  Classes of H_r(A) are filtered
    by the level at which they die in each direction; the table isolates
    exact pairs by inclusion-exclusion on kernel subspaces.
    """
    sm, gm = w_minus
    sp, gp = w_plus
    A_basis = (cache.basis(A, r) if cache is not None
               else homology_basis(A, r, fld))
    nA = A_basis.rank
    if nA == 0:
        return SimultaneousCounts({})
    Fm = SublevelFiltration(sm, gm, r, fld, cache=cache)
    Fp = SublevelFiltration(sp, gp, r, fld, cache=cache)
    km = _kernel_chain(A_basis, A, Fm)
    kp = _kernel_chain(A_basis, A, Fp)
    full = [tuple(fld.one if i == j else fld.zero for i in range(nA))
            for j in range(nA)]
    # append the "never dies" stage
    km = km + [(None, full)]
    kp = kp + [(None, full)]
    table: Dict[Tuple[Optional[Fraction], Optional[Fraction]], int] = {}
    prev_m: List[tuple] = []
    for um, Km in km:
        prev_p: List[tuple] = []
        for up, Kp in kp:
            w = (_dim_cap(fld, nA, Km, Kp)
                 - _dim_cap(fld, nA, prev_m, Kp)
                 - _dim_cap(fld, nA, Km, prev_p)
                 + _dim_cap(fld, nA, prev_m, prev_p))
            assert w >= 0, "negative simultaneous count"
            if w and not (um is None and up is None):
                table[(um, up)] = w
            prev_p = Kp
        prev_m = Km
    return SimultaneousCounts(table)


# -- the Appendix-D style bar counts on a truncated covering ----------


class LevelCountContext:
    """Precomputes, for a RealCut, the focused mu tables of the upward
    and downward half-space maps at every critical value, and the omega
    tables at the regulars; then evaluates the N-count formulas."""

    def __init__(self, rc: RealCut, r: int, fld: Field):
        self.rc = rc
        self.r = r
        self.fld = fld
        self.C = rc.criticals
        self.M = len(self.C)
        self._mu_plus: Dict[int, PersistenceCounts] = {}
        self._mu_minus: Dict[int, PersistenceCounts] = {}
        self._omega: Dict[int, SimultaneousCounts] = {}
        self._fiber: Dict[Fraction, SubcomplexHandle] = {}
        self._through: Dict[Tuple[int, int], int] = {}
        self._cache = BasisCache(fld)

    def _half_space(self, i: int, up: bool) -> Tuple[SubcomplexHandle, dict]:
        """Full subcomplex on vertices at or beyond c_i, with the
        distance from c_i as vertex values."""
        c = self.C[i - 1]
        vals = self.rc.values
        keep = {v for v in range(len(vals))
                if (vals[v] >= c if up else vals[v] <= c)}
        members = [s for s in self.rc.complex.simplices
                   if all(v in keep for v in s)]
        sub = SubcomplexHandle(self.rc.complex, members,
                               ("half", i, up))
        g = {v: (vals[v] - c if up else c - vals[v]) for v in keep}
        return sub, g

    def mu_plus(self, i: int) -> PersistenceCounts:
        """mu of g+ at c_i; births grouped below (see born0)."""
        if i not in self._mu_plus:
            sub, g = self._half_space(i, up=True)
            self._mu_plus[i] = sublevel_mu(sub, g, self.r, self.fld,
                                           births_upto=2,
                                           cache=self._cache)
        return self._mu_plus[i]

    def mu_minus(self, j: int) -> PersistenceCounts:
        if j not in self._mu_minus:
            sub, g = self._half_space(j, up=False)
            self._mu_minus[j] = sublevel_mu(sub, g, self.r, self.fld,
                                            births_upto=2,
                                            cache=self._cache)
        return self._mu_minus[j]

    @staticmethod
    def born0(pc: PersistenceCounts, death) -> int:
        """mu(0, death) of the true boundary map: the half space models
        the critical fiber only from its second filtration level on, so
        births at the first two levels both mean birth at 0; deaths are
        only read at critical distances, which skips the flat-versus-
        collar artifact pairs."""
        lv = pc.levels
        out = pc.mu(lv[0], death) if lv else 0
        if len(lv) > 1:
            out += pc.mu(lv[1], death)
        return out

    def fiber(self, reg: Fraction) -> SubcomplexHandle:
        if reg not in self._fiber:
            self._fiber[reg] = SubcomplexHandle(
                self.rc.complex,
                [s for s in self.rc.complex.simplices
                 if self.rc.span(s) == (reg, reg)],
                ("fiber", reg))
        return self._fiber[reg]

    def _band(self, lo, hi) -> SubcomplexHandle:
        members = []
        for s in self.rc.complex.simplices:
            mn, mx = self.rc.span(s)
            if (lo is None or mn >= lo) and (hi is None or mx <= hi):
                members.append(s)
        return SubcomplexHandle(self.rc.complex, members, ("band", lo, hi))

    def omega_at(self, i: int) -> SimultaneousCounts:
        """omega tables at the regular value just above c_i."""
        if i not in self._omega:
            s = self.rc.regulars[i - 1]
            vals = self.rc.values
            keep_m = {v for v in range(len(vals)) if vals[v] <= s}
            keep_p = {v for v in range(len(vals)) if vals[v] >= s}
            wm = (SubcomplexHandle(
                self.rc.complex,
                [t for t in self.rc.complex.simplices
                 if all(v in keep_m for v in t)], ("wm", i)),
                {v: s - vals[v] for v in keep_m})
            wp = (SubcomplexHandle(
                self.rc.complex,
                [t for t in self.rc.complex.simplices
                 if all(v in keep_p for v in t)], ("wp", i)),
                {v: vals[v] - s for v in keep_p})
            self._omega[i] = simultaneous_omega(wm, wp, self.fiber(s),
                                                self.r, self.fld,
                                                cache=self._cache)
        return self._omega[i]

    # -- the eight N families ------------------------------------------

    def n_open_open(self, i: int, j: int) -> int:
        """N(c_i, c_j): bars open at both ends."""
        if i < 1 or j > self.M or j <= i:
            return 0
        s = self.rc.regulars[i - 1]
        return self.omega_at(i).omega(s - self.C[i - 1], self.C[j - 1] - s)

    def n_through_open(self, i: int, j: int) -> int:
        """N{c_i, c_j): bars containing level c_i, open right at c_j.

        In the upward filtration only an open right end dies at an exact
        critical distance: a closed end either merges strictly between
        criticals or never dies at all, so the single mu read below is
        already the exact count."""
        if i < 1 or j > self.M or j <= i:
            return 0
        return self.born0(self.mu_plus(i), self.C[j - 1] - self.C[i - 1])

    def n_open_through(self, i: int, j: int) -> int:
        """N(c_i, c_j}: bars open left at c_i, containing level c_j."""
        if i < 1 or j > self.M or j <= i:
            return 0
        return self.born0(self.mu_minus(j), self.C[j - 1] - self.C[i - 1])

    def n_through_through(self, i: int, j: int) -> int:
        """N{c_i, c_j}: bars containing both levels.

        Computed as dim(img cap img) of the two fiber inclusions into
        the band between the levels; summing upward deaths past c_j
        instead would overcount bars whose closed right end below c_j
        simply never dies."""
        if i < 1 or j > self.M or j < i:
            return 0
        key = (i, j)
        if key in self._through:
            return self._through[key]
        regs = self.rc.regulars
        if i == j:
            if self.M == 1:
                collar = self._band(None, None)
            elif i < self.M:
                collar = self._band(self.C[i - 1], regs[i - 1])
            else:
                collar = self._band(regs[self.M - 2], self.C[self.M - 1])
            out = self._cache.basis(collar, self.r).rank
        else:
            window = self._band(self.C[i - 1], self.C[j - 1])
            wb = self._cache.basis(window, self.r)
            lo = self._band(self.C[i - 1], regs[i - 1])
            hi = self._band(regs[j - 2], self.C[j - 1])
            cols = []
            for sub in (lo, hi):
                m = induced_map(self._cache.basis(sub, self.r), wb,
                                sub, window)
                cols.append([m.column(c) for c in range(m.cols)])
            out = (rank(Matrix.from_columns(self.fld, cols[0], rows=wb.rank))
                   + rank(Matrix.from_columns(self.fld, cols[1],
                                              rows=wb.rank))
                   - rank(Matrix.from_columns(self.fld, cols[0] + cols[1],
                                              rows=wb.rank)))
        self._through[key] = out
        return out

    def n_through_closed(self, i: int, j: int) -> int:
        """N{c_i, c_j]."""
        if j < i:
            return 0
        return (self.n_through_through(i, j)
                - self.n_through_through(i, j + 1)
                - self.n_through_open(i, j + 1))

    def n_closed_through(self, i: int, j: int) -> int:
        """N[c_i, c_j}."""
        if j < i:
            return 0
        return (self.n_through_through(i, j)
                - self.n_through_through(i - 1, j)
                - self.n_open_through(i - 1, j))

    def n_open_closed(self, i: int, j: int) -> int:
        """N(c_i, c_j]."""
        if j <= i:
            return 0
        return (self.n_open_through(i, j)
                - self.n_open_through(i, j + 1)
                - self.n_open_open(i, j + 1))

    def bar_count(self, i: int, j: int, left_closed: bool,
                  right_closed: bool) -> int:
        """Multiplicity of the level bar with the given endpoints."""
        if left_closed and right_closed:
            n = (self.n_through_closed(i, j)
                 - self.n_through_closed(i - 1, j)
                 - self.n_open_closed(i - 1, j))
        elif left_closed:
            n = (self.n_through_open(i, j)
                 - self.n_through_open(i - 1, j)
                 - self.n_open_open(i - 1, j))
        elif right_closed:
            n = self.n_open_closed(i, j)
        else:
            n = self.n_open_open(i, j)
        assert n >= 0, f"negative bar count at ({i},{j})"
        return n


def level_bar_counts(ctx: LevelCountContext) -> Counter:
    """The full level bar multiset implied by the N-counts, as LinearBar
    positions over the criticals of the RealCut."""
    out: Counter = Counter()
    M = ctx.M
    for i in range(1, M + 1):
        for j in range(i, M + 1):
            for lc in (True, False):
                for rcl in (True, False):
                    if j == i and not (lc and rcl):
                        continue
                    n = ctx.bar_count(i, j, lc, rcl)
                    if n:
                        p = 2 * i if lc else 2 * i + 1
                        q = 2 * j if rcl else 2 * j - 1
                        out[LinearBar(p, q)] += n
    return out


def sublevel_route_bars(rc: RealCut, r: int, fld: Field) -> Counter:
    return level_bar_counts(LevelCountContext(rc, r, fld))

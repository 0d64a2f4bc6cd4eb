"""Cyclic quiver representations and their complete decomposition.

The representation has 2m spaces around a cycle: odd spaces are fiber
homologies at regular angles t_i, even spaces are interval-piece
homologies containing the critical angle s_i, with forward maps
alpha_i: V_{2i-1} -> V_{2i} and backward maps beta_i: V_{2i+1} -> V_{2i}
(indices wrap, x_{i+2km} = x_i).

Decomposition: split off chain summands (interval modules = bar codes)
shortest first, then read Jordan cells off the monodromy of the
remaining all-isomorphisms representation.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .field import (Field, JordanBlock, Matrix, companion_matrix,
                    complete_to_basis, inverse, jordan_decomposition,
                    kernel_basis, poly_pow, rank, solve, solve_many)


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class CircleBarCode:
    """Bar {s_i, s_j + k turns} with end-closure flags; indices are
    critical-angle indices in 1..m, k >= 0 whole extra turns.  When
    k = 0 the indices satisfy i <= j."""

    i: int
    j: int
    k: int
    left_closed: bool
    right_closed: bool
    m: int

    def __post_init__(self):
        ok = (1 <= self.i <= self.m and 1 <= self.j <= self.m
              and self.k >= 0 and (self.k > 0 or self.i <= self.j))
        if not ok:
            raise QuiverError(f"malformed bar {self}")

    def type_str(self) -> str:
        lb = "[" if self.left_closed else "("
        rb = "]" if self.right_closed else ")"
        wrap = f"+{self.k}" if self.k else ""
        return f"{lb}s{self.i}, s{self.j}{wrap}{rb}"

    def position_span(self) -> Tuple[int, int]:
        """Chain positions (p, q) of the model summand: even position 2a
        is a closed end at index a, odd positions are open ends."""
        p = 2 * self.i if self.left_closed else 2 * self.i + 1
        qa = self.j + self.k * self.m
        q = 2 * qa if self.right_closed else 2 * qa - 1
        if q < p:
            raise QuiverError(f"empty bar {self}")
        return p, q


def bar_from_positions(p: int, q: int, left_closed: bool,
                       right_closed: bool, m: int) -> CircleBarCode:
    """Normalize a chain's absolute start/end positions to a bar.

    Left endpoint index aL = p/2 (closed) or (p-1)/2 (open); right index
    aR = q/2 (closed) or (q+1)/2 (open); then shift by whole turns so
    the left index lands in 1..m.
    """
    aL = p // 2 if left_closed else (p - 1) // 2
    aR = q // 2 if right_closed else (q + 1) // 2
    i = ((aL - 1) % m) + 1
    shift = (aL - 1) // m
    aR -= shift * m
    j = ((aR - 1) % m) + 1
    k = (aR - 1) // m
    return CircleBarCode(i, j, k, left_closed, right_closed, m)


class CyclicQuiverRep:
    """Matrices alpha_i (d_i x n_i) and beta_i (d_i x n_{i+1}), i = 1..m
    with index m+1 wrapping to 1."""

    def __init__(self, fld: Field, alpha: Sequence[Matrix],
                 beta: Sequence[Matrix]):
        if len(alpha) != len(beta) or not alpha:
            raise QuiverError("need m alpha and m beta matrices")
        self.field = fld
        self.m = len(alpha)
        self.alpha = list(alpha)
        self.beta = list(beta)
        self.n = [a.cols for a in alpha]
        self.d = [a.rows for a in alpha]
        for i in range(self.m):
            b = self.beta[i]
            if b.rows != self.d[i] or b.cols != self.n[(i + 1) % self.m]:
                raise QuiverError(
                    f"beta_{i+1} shape {b.rows}x{b.cols} does not match "
                    f"dims d_{i+1}={self.d[i]}, "
                    f"n_{(i+1) % self.m + 1}={self.n[(i + 1) % self.m]}")

    @property
    def dims(self) -> Tuple[int, ...]:
        out = []
        for i in range(self.m):
            out.extend((self.n[i], self.d[i]))
        return tuple(out)

    @property
    def total_dim(self) -> int:
        return sum(self.n) + sum(self.d)

    def space_dim(self, pos: int) -> int:
        """Dimension at wrapped position (1-based, odd = fiber)."""
        c = ((pos - 1) % (2 * self.m)) + 1
        return self.n[(c - 1) // 2] if c % 2 == 1 else self.d[c // 2 - 1]

    @classmethod
    def zero(cls, fld: Field, m: int) -> "CyclicQuiverRep":
        z = Matrix.zeros(fld, 0, 0)
        return cls(fld, [z] * m, [z] * m)

    @classmethod
    def direct_sum(cls, reps: Sequence["CyclicQuiverRep"]) -> "CyclicQuiverRep":
        if not reps:
            raise QuiverError("empty direct sum")
        m = reps[0].m
        fld = reps[0].field
        if any(r.m != m or r.field != fld for r in reps):
            raise QuiverError("direct sum needs equal m and field")

        def block_diag(mats: List[Matrix]) -> Matrix:
            rows = sum(M.rows for M in mats)
            cols = sum(M.cols for M in mats)
            out = [[fld.zero] * cols for _ in range(rows)]
            r0 = c0 = 0
            for M in mats:
                for i in range(M.rows):
                    for j in range(M.cols):
                        out[r0 + i][c0 + j] = M.data[i][j]
                r0 += M.rows
                c0 += M.cols
            return Matrix(fld, rows, cols, out)

        alpha = [block_diag([r.alpha[i] for r in reps]) for i in range(m)]
        beta = [block_diag([r.beta[i] for r in reps]) for i in range(m)]
        return cls(fld, alpha, beta)


@dataclass
class ChainWitness:
    """Successive nonzero elements h_p ... h_q at wrapped positions,
    compatible under alpha forward and beta backward."""

    start: int
    elements: List[tuple]  # vectors, elements[j] at position start + j

    @property
    def length(self) -> int:
        return len(self.elements)

    @property
    def end(self) -> int:
        return self.start + len(self.elements) - 1


def _class_of(pos: int, m: int) -> int:
    return ((pos - 1) % (2 * m)) + 1


def _alpha_index(pos: int, m: int) -> int:
    """0-based alpha index for odd position pos = 2i-1."""
    c = _class_of(pos, m)
    return (c - 1) // 2


def _is_zero_vec(fld: Field, v) -> bool:
    return all(x == fld.zero for x in v)


def extend_chain(rep: CyclicQuiverRep, p: int, h,
                 pivot: str = "first") -> Optional[ChainWitness]:
    """Extend a start vector forward to a maximal P1+P3 collection.

    Forward from an odd position applies alpha (the chain must end there
    iff the image is zero); from an even position the chain continues
    iff the element has a beta preimage, chosen deterministically.
    Returns None if the extension runs past the total dimension, which
    cannot happen for a genuine chain.
    """
    fld = rep.field
    elements = [tuple(h)]
    pos = p
    bound = rep.total_dim
    while True:
        if len(elements) > bound:
            return None
        if pos % 2 == 1:
            a = rep.alpha[_alpha_index(pos, rep.m)]
            nxt = a.apply(elements[-1])
            if _is_zero_vec(fld, nxt):
                break
        else:
            b = rep.beta[_class_of(pos, rep.m) // 2 - 1]
            nxt = solve(b, elements[-1], pivot=pivot)
            if nxt is None:
                break
        pos += 1
        elements.append(tuple(nxt))
    return ChainWitness(start=p, elements=elements)


def _p4_holds(rep: CyclicQuiverRep, chain: ChainWitness) -> bool:
    by_class: Dict[int, List[tuple]] = {}
    for off, vec in enumerate(chain.elements):
        c = _class_of(chain.start + off, rep.m)
        by_class.setdefault(c, []).append(vec)
    for c, vecs in by_class.items():
        M = Matrix.from_columns(rep.field, vecs, rows=rep.space_dim(c))
        if rank(M) != len(vecs):
            return False
    return True


def _membership_rows(M: Matrix) -> Matrix:
    """A matrix T with T x = 0 exactly when x lies in the column space
    of M: the rows span the left annihilator of that space."""
    return kernel_basis(M.transpose()).transpose()


def _beta_source_index(c: int, m: int) -> int:
    """0-based index of the beta whose source space is the odd class c."""
    return ((c - 1) // 2 - 1) % m


def _exact_chain(rep: CyclicQuiverRep, p: int, length: int,
                 pivot: str = "first") -> Optional[ChainWitness]:
    """A P1-P3 chain of exactly the given length starting at wrapped
    position p, or None if there is none.

    The compatibility conditions along the chain and the linear closure
    conditions (beta kills an odd start, alpha kills an odd end) cut out
    a solution space of whole tuples; the two remaining closure
    conditions, an even start outside im alpha and an even end outside
    im beta, each exclude a subspace, and a tuple avoiding both exists
    iff each is avoidable on its own (a vector space is never the union
    of two proper subspaces).  Interior elements are guaranteed nonzero
    only when no shorter chain exists, which callers ensure by searching
    lengths in increasing order; a tuple with a zero interior element
    would split at the zero into a strictly shorter chain.
    """
    fld = rep.field
    m = rep.m
    classes = [_class_of(p + j, m) for j in range(length)]
    dims = [rep.space_dim(c) for c in classes]
    # a chain through a zero space has a zero element, which the
    # shortest-first discipline of the callers rules out
    if any(d == 0 for d in dims):
        return None
    offs = [0]
    for d in dims:
        offs.append(offs[-1] + d)
    n = offs[-1]
    z, one = fld.zero, fld.one
    rows: List[list] = []

    def emit(mat: Matrix, seg: int, minus_seg: Optional[int] = None):
        # rows of: mat * h_seg - h_minus_seg = 0
        for r in range(mat.rows):
            row = [z] * n
            for cc in range(mat.cols):
                row[offs[seg] + cc] = mat.data[r][cc]
            if minus_seg is not None:
                row[offs[minus_seg] + r] = fld.neg(one)
            rows.append(row)

    if classes[0] % 2 == 1:
        emit(rep.beta[_beta_source_index(classes[0], m)], 0)
    for j in range(length - 1):
        if classes[j] % 2 == 1:
            emit(rep.alpha[_alpha_index(p + j, m)], j, j + 1)
        else:
            emit(rep.beta[classes[j] // 2 - 1], j + 1, j)
    if classes[-1] % 2 == 1:
        emit(rep.alpha[_alpha_index(p + length - 1, m)], length - 1)
    K = kernel_basis(Matrix(fld, len(rows), n, rows), pivot=pivot)
    if K.cols == 0:
        return None
    if classes[0] % 2 == 0:
        T1 = _membership_rows(rep.alpha[classes[0] // 2 - 1])
    else:
        T1 = Matrix.identity(fld, dims[0])
    if classes[-1] % 2 == 0:
        T2 = _membership_rows(rep.beta[classes[-1] // 2 - 1])
    else:
        T2 = Matrix.identity(fld, dims[-1])

    def head(t):
        return t[offs[0]:offs[1]]

    def tail(t):
        return t[offs[-2]:offs[-1]]

    cand = [K.column(j) for j in range(K.cols)]
    ta = next((t for t in cand
               if not _is_zero_vec(fld, T1.apply(head(t)))), None)
    tb = next((t for t in cand
               if not _is_zero_vec(fld, T2.apply(tail(t)))), None)
    if ta is None or tb is None:
        return None
    if not _is_zero_vec(fld, T2.apply(tail(ta))):
        t = ta
    elif not _is_zero_vec(fld, T1.apply(head(tb))):
        t = tb
    else:
        t = tuple(fld.add(a, b) for a, b in zip(ta, tb))
    elements = [tuple(t[offs[j]:offs[j + 1]]) for j in range(length)]
    return ChainWitness(start=p, elements=elements)


def _feasible_ends(rep: CyclicQuiverRep) -> Tuple[dict, dict]:
    """Per class, whether a chain can start or end there, by rank
    deficiency of the adjacent closure map; a cheap necessary filter
    computed once per scan."""
    ra = [rank(a) for a in rep.alpha]
    rb = [rank(b) for b in rep.beta]
    start_ok = {}
    end_ok = {}
    for c in range(1, 2 * rep.m + 1):
        dim = rep.space_dim(c)
        if c % 2 == 1:
            # start: some nonzero vector killed by the beta out of c;
            # end: some nonzero vector killed by the alpha out of c
            start_ok[c] = rb[_beta_source_index(c, rep.m)] < dim
            end_ok[c] = ra[(c - 1) // 2] < dim
        else:
            # start: alpha into c not surjective; end: beta into c not
            # surjective
            start_ok[c] = ra[c // 2 - 1] < dim
            end_ok[c] = rb[c // 2 - 1] < dim
    return start_ok, end_ok


def _pick_combo(fld: Field, heads: Matrix, tails: Matrix, T1: Matrix,
                T2: Matrix) -> Optional[tuple]:
    """Coefficient vector of a combo whose head avoids im alpha (resp.
    is nonzero) and whose tail avoids im beta (resp. is nonzero):
    exists iff each avoidance is possible on its own, since a space is
    never the union of two proper subspaces."""
    TH = T1.mul(heads)
    TT = T2.mul(tails)
    n = heads.cols
    ja = next((j for j in range(n)
               if not _is_zero_vec(fld, TH.column(j))), None)
    jb = next((j for j in range(n)
               if not _is_zero_vec(fld, TT.column(j))), None)
    if ja is None or jb is None:
        return None
    if not _is_zero_vec(fld, TT.column(ja)):
        picked = {ja: fld.one}
    elif not _is_zero_vec(fld, TH.column(jb)):
        picked = {jb: fld.one}
    else:
        picked = {ja: fld.one, jb: fld.one}
    return tuple(picked.get(j, fld.zero) for j in range(n))


def _closure_candidates(fld: Field, heads: Matrix, tails: Matrix,
                        T1: Matrix, T2: Matrix, limit: int = 8
                        ) -> List[tuple]:
    """A few distinct combos satisfying both closure conditions; the
    first is the canonical pick, the rest give a wrapped chain a second
    shot when its split certificate fails."""
    primary = _pick_combo(fld, heads, tails, T1, T2)
    if primary is None:
        return []
    TH = T1.mul(heads)
    TT = T2.mul(tails)
    n = heads.cols

    def good(c):
        return (not _is_zero_vec(fld, TH.apply(c))
                and not _is_zero_vec(fld, TT.apply(c)))

    out = [primary]
    seen = {primary}
    units = [tuple(fld.one if i == j else fld.zero for i in range(n))
             for j in range(n)]
    for cand in units + [tuple(fld.add(x, y)
                               for x, y in zip(primary, u))
                         for u in units]:
        if len(out) >= limit:
            break
        if cand not in seen and good(cand):
            seen.add(cand)
            out.append(cand)
    return out


def _split_valid(rep: CyclicQuiverRep, chain: ChainWitness) -> bool:
    """Whether the chain's span admits an invariant complement.

    A chain that revisits a vertex class (wrap count >= 1) can satisfy
    P1-P4 and still fail to split off: the complement must absorb the
    images of all non-chain vectors, and that requirement can chase
    around the circle into a contradiction.  The complement exists iff
    a linear system in the basis corrections X_c is solvable:
    for every arrow gamma: V_a -> V_b,  X_b Q - R X_a = P, where
    [P; Q] are the chain/complement coordinates of gamma(W_a) and R the
    chain coordinates of gamma(C_a), C = chain columns, W = any fixed
    completion.
    """
    fld = rep.field
    m = rep.m
    by_class: Dict[int, List[tuple]] = {}
    for off, h in enumerate(chain.elements):
        by_class.setdefault(_class_of(chain.start + off, m), []).append(h)
    C: Dict[int, Matrix] = {}
    W: Dict[int, Matrix] = {}
    for c, cols in by_class.items():
        dim = rep.space_dim(c)
        full = complete_to_basis(cols, fld, dim)
        C[c] = Matrix.from_columns(fld, cols, dim)
        W[c] = Matrix.from_columns(
            fld, [full.column(j) for j in range(len(cols), dim)], dim)
    # unknowns: X_c of shape (chain count, complement dim) per class
    offset: Dict[int, int] = {}
    nvar = 0
    for c in by_class:
        offset[c] = nvar
        nvar += len(by_class[c]) * W[c].cols
    rows: List[List] = []
    rhs: List = []
    arrows = []
    for i in range(m):
        arrows.append((rep.alpha[i], 2 * i + 1, 2 * i + 2))
        arrows.append((rep.beta[i], (2 * i + 2) % (2 * m) + 1, 2 * i + 2))
    for gamma, a, b in arrows:
        ca = len(by_class.get(a, ()))
        cb = len(by_class.get(b, ()))
        if ca == 0 and cb == 0:
            continue
        if cb == 0:
            # P1/P3 guarantee chain images stay in the chain span
            assert ca == 0 or gamma.mul(C[a]).is_zero()
            continue
        Fb = C[b].hstack(W[b])
        Wa = W[a] if a in W else Matrix.identity(fld, rep.space_dim(a))
        Z = solve_many(Fb, gamma.mul(Wa))
        assert Z is not None
        R = None
        if ca > 0:
            ZC = solve_many(Fb, gamma.mul(C[a]))
            assert ZC is not None
            for rr in range(cb, Fb.cols):
                assert _is_zero_vec(fld, ZC.row(rr))
            R = ZC
        wb = W[b].cols
        wa = Wa.cols
        for r in range(cb):
            for col in range(wa):
                row: Dict[int, object] = {}
                for t in range(wb):
                    v = Z[cb + t, col]
                    if v != fld.zero:
                        row[offset[b] + r * wb + t] = v
                if R is not None and a in offset:
                    waa = W[a].cols
                    for s in range(ca):
                        v = R[r, s]
                        if v != fld.zero:
                            cc = offset[a] + s * waa + col
                            nv = fld.sub(row.get(cc, fld.zero), v)
                            if nv == fld.zero:
                                row.pop(cc, None)
                            else:
                                row[cc] = nv
                rows.append(row)
                rhs.append(Z[r, col])
    return _sparse_consistent(fld, rows, rhs)


def _sparse_consistent(fld: Field, rows: List[Dict[int, object]],
                       rhs: List) -> bool:
    """Whether the sparse system has a solution; the certificate system
    is banded along the chain, so sparse elimination keeps it cheap."""
    pivots: Dict[int, Tuple[Dict[int, object], object]] = {}
    for row, b in zip(rows, rhs):
        row = dict(row)
        while row:
            c = min(row)
            if c not in pivots:
                break
            prow, pb = pivots[c]
            f = row.pop(c)
            for cc, vv in prow.items():
                if cc == c:
                    continue
                nv = fld.sub(row.get(cc, fld.zero), fld.mul(f, vv))
                if nv == fld.zero:
                    row.pop(cc, None)
                else:
                    row[cc] = nv
            b = fld.sub(b, fld.mul(f, pb))
        if row:
            c = min(row)
            inv = fld.inv(row[c])
            pivots[c] = ({cc: fld.mul(inv, vv) for cc, vv in row.items()},
                         fld.mul(inv, b))
        elif b != fld.zero:
            return False
    return True


def _replay_elements(fld: Field, states: List[tuple], coef) -> List[tuple]:
    """Chain elements of one combination of the final sweep state.

    states[s] = (kind, K, lasts) after step s; a combination is stored
    only by its coefficients, so walk them back through each step's K
    and emit per-segment elements from the recorded last-element
    matrices."""
    per_step = [None] * len(states)
    c = tuple(coef)
    for s in range(len(states) - 1, -1, -1):
        per_step[s] = c
        kind, K, _ = states[s]
        if kind == "bwd":
            c = K.apply(c[:K.cols]) if K.cols else tuple()
    out = []
    for s, (kind, K, lasts) in enumerate(states):
        out.append(lasts.apply(per_step[s]))
    return out


def _sweep_chain(rep: CyclicQuiverRep, p: int, floor: int, cap: int,
                 end_ok: dict, pivot: str = "first"
                 ) -> Optional[ChainWitness]:
    """Minimal-length chain starting at wrapped position p, with length
    in [floor, cap], by growing the space of constraint-satisfying
    prefixes one segment at a time.

    Equivalent to solving the full chain system per candidate length,
    but each step only touches the newest segment, so the work stays
    local to one space instead of re-eliminating the whole
    block-bidiagonal system.
    """
    fld = rep.field
    m = rep.m
    c0 = _class_of(p, m)
    d0 = rep.space_dim(c0)
    if d0 == 0:
        return None
    if c0 % 2 == 1:
        B0 = kernel_basis(rep.beta[_beta_source_index(c0, m)], pivot=pivot)
        T1 = Matrix.identity(fld, d0)
    else:
        B0 = Matrix.identity(fld, d0)
        T1 = _membership_rows(rep.alpha[c0 // 2 - 1])
        if T1.rows == 0:
            return None
    # combos carried by coefficients only: heads/lasts give each combo's
    # first and current-last element; states log enough to replay one
    # winning combination into actual chain elements at the end
    states: List[tuple] = [("init", None, B0)]
    heads = B0
    lasts = B0
    for length in range(1, cap + 1):
        if lasts.cols == 0:
            return None
        pos = p + length - 1
        c = _class_of(pos, m)
        if length >= floor and end_ok[c]:
            if c % 2 == 1:
                a = rep.alpha[_alpha_index(pos, m)]
                K = kernel_basis(a.mul(lasts), pivot=pivot)
                zheads = heads.mul(K)
                zlasts = lasts.mul(K)
                T2 = Matrix.identity(fld, rep.space_dim(c))
            else:
                K = None
                zheads, zlasts = heads, lasts
                if length == 1:
                    # a 1-chain at an even vertex must avoid
                    # im alpha + im beta jointly, not each separately
                    T2 = _membership_rows(rep.alpha[c // 2 - 1].hstack(
                        rep.beta[c // 2 - 1]))
                else:
                    T2 = _membership_rows(rep.beta[c // 2 - 1])
            if T2.rows > 0:
                T1c = T2 if (length == 1 and c % 2 == 0) else T1
                for coef in _closure_candidates(fld, zheads, zlasts,
                                                T1c, T2):
                    if K is not None:
                        coef = K.apply(coef)
                    elems = _replay_elements(fld, states, coef)
                    w = ChainWitness(start=p, elements=elems)
                    if _split_valid(rep, w):
                        return w
        if length == cap:
            break
        cn = _class_of(pos + 1, m)
        if rep.space_dim(cn) == 0:
            # a chain through a zero space has a zero element, which
            # shortest-first search rules out
            return None
        if c % 2 == 1:
            # forward along alpha: the next element is determined
            a = rep.alpha[_alpha_index(pos, m)]
            lasts = a.mul(lasts)
            states.append(("fwd", None, lasts))
        else:
            # backward along beta: keep combinations whose last element
            # has a preimage, adjoin the kernel of beta
            b = rep.beta[c // 2 - 1]
            Tb = _membership_rows(b)
            if Tb.rows == 0:
                K = Matrix.identity(fld, lasts.cols)
            else:
                K = kernel_basis(Tb.mul(lasts), pivot=pivot)
            pre = solve_many(b, lasts.mul(K), pivot=pivot)
            assert pre is not None
            kb = kernel_basis(b, pivot=pivot)
            lasts = pre.hstack(kb)
            heads = heads.mul(K).hstack(
                Matrix.zeros(fld, heads.rows, kb.cols))
            states.append(("bwd", K, lasts))
    return None


def find_chain(rep: CyclicQuiverRep, length: int,
               pivot: str = "first") -> Optional[ChainWitness]:
    """A chain of exactly the given length, from the deterministically
    first start position admitting one; caller guarantees no shorter
    chain exists."""
    start_ok, end_ok = _feasible_ends(rep)
    for p in range(1, 2 * rep.m + 1):
        if not (start_ok[_class_of(p, rep.m)]
                and end_ok[_class_of(p + length - 1, rep.m)]):
            continue
        c = _exact_chain(rep, p, length, pivot)
        if c is not None and _p4_holds(rep, c):
            return c
    return None


def split_chain(rep: CyclicQuiverRep, chain: ChainWitness,
                pivot: str = "first") -> Tuple[CircleBarCode, CyclicQuiverRep]:
    """Split rho = rho^chain + rho' by a base change putting the chain
    elements first in each touched space; returns the bar and rho'."""
    fld = rep.field
    m = rep.m
    if not _p4_holds(rep, chain):
        raise QuiverError("chain fails independence (P4); "
                          "shorter chains were not exhausted")
    by_class: Dict[int, List[tuple]] = {}
    for off, vec in enumerate(chain.elements):
        c = _class_of(chain.start + off, m)
        by_class.setdefault(c, []).append(vec)
    S: Dict[int, Matrix] = {}
    Sinv: Dict[int, Matrix] = {}
    counts: Dict[int, int] = {}
    for c in range(1, 2 * m + 1):
        vecs = by_class.get(c, [])
        counts[c] = len(vecs)
        dim = rep.space_dim(c)
        if vecs:
            S[c] = complete_to_basis(vecs, fld, dim, pivot=pivot)
            Sinv[c] = inverse(S[c])
    new_alpha = []
    new_beta = []
    for i in range(m):
        co, ce = 2 * i + 1, 2 * i + 2
        cn = (2 * i + 2) % (2 * m) + 1  # odd class of beta_i's source
        a = rep.alpha[i]
        if ce in Sinv:
            a = Sinv[ce].mul(a)
        if co in S:
            a = a.mul(S[co])
        b = rep.beta[i]
        if ce in Sinv:
            b = Sinv[ce].mul(b)
        if cn in S:
            b = b.mul(S[cn])
        for M, csrc in ((a, co), (b, cn)):
            for r in range(counts[ce], M.rows):
                for cidx in range(counts[csrc]):
                    assert M.data[r][cidx] == fld.zero, \
                        "chain span is not invariant; split is unsound"
        new_alpha.append(Matrix(fld, a.rows - counts[ce],
                                a.cols - counts[co],
                                [r[counts[co]:] for r in
                                 a.data[counts[ce]:]]))
        new_beta.append(Matrix(fld, b.rows - counts[ce],
                               b.cols - counts[cn],
                               [r[counts[cn]:] for r in
                                b.data[counts[ce]:]]))
    p, q = chain.start, chain.end
    bar = bar_from_positions(p, q, left_closed=(p % 2 == 0),
                             right_closed=(q % 2 == 0), m=m)
    rest = CyclicQuiverRep(fld, new_alpha, new_beta)
    # the split summand must have the model dimension vector
    if ap1_dim_vector(bar) != tuple(
            counts[c] for c in range(1, 2 * m + 1)):
        raise QuiverError(f"split summand of {bar.type_str()} has "
                          "non-model dimensions")
    return bar, rest


def _all_iso(rep: CyclicQuiverRep) -> bool:
    for M in rep.alpha + rep.beta:
        if M.rows != M.cols or rank(M) != M.rows:
            return False
    return True


def monodromy(rep: CyclicQuiverRep, base: int = 1) -> Matrix:
    """T_base: the composite of all alpha's and inverse beta's once
    around the cycle, acting on the fiber space V_{x_{2*base+1}}."""
    if not _all_iso(rep):
        raise QuiverError("monodromy needs all maps invertible")
    m = rep.m
    i0 = base % m  # 0-based index of alpha applied first is base+1
    T = Matrix.identity(rep.field, rep.n[i0])
    for step in range(m):
        i = (i0 + step) % m
        T = inverse(rep.beta[i]).mul(rep.alpha[i]).mul(T)
    return T


def decompose(rep: CyclicQuiverRep, pivot: str = "first",
              _records: Optional[list] = None
              ) -> Tuple[Counter, Counter]:
    """Complete decomposition: (bars, jordan cells).

    Splits chains shortest-first, restarting the scan after every split;
    when every alpha is surjective and every beta injective the
    remainder is all isomorphisms and its monodromy's Jordan blocks are
    the cells.  _records, if given, collects the raw (start, end)
    positions of each split chain in order.
    """
    bars: Counter = Counter()
    current = rep
    # chains of the remainder embed in the original, so the minimal
    # length never decreases across splits
    floor = 1
    # per start class, the largest length proven chain-free; entries
    # survive a split unless their sweep window overlaps the classes
    # the split touched
    no_chain: Dict[int, int] = {}

    def window_classes(p: int, length: int, mm: int) -> frozenset:
        # classes whose spaces or adjacent maps a sweep (or split) over
        # positions p .. p+length-1 can read, one position of slack on
        # both sides
        span = min(2 * mm, length + 3)
        return frozenset(_class_of(p - 1 + o, mm) for o in range(span))

    while current.total_dim > 0:
        if _all_iso(current):
            T = monodromy(current, base=1)
            return bars, Counter(jordan_decomposition(T))
        start_ok, end_ok = _feasible_ends(current)
        mm = current.m
        cands: List[ChainWitness] = []
        best_len: Optional[int] = None
        for p in range(1, 2 * mm + 1):
            if not start_ok[_class_of(p, mm)]:
                continue
            cap = best_len if best_len is not None else current.total_dim
            if no_chain.get(p, 0) >= cap:
                continue
            w = _sweep_chain(current, p, floor, cap, end_ok, pivot)
            if w is None:
                no_chain[p] = cap
                continue
            if best_len is None or w.length < best_len:
                best_len = w.length
                cands = [w]
            elif w.length == best_len:
                cands.append(w)
        if not cands:
            raise QuiverError("maps are not all isomorphisms but no "
                              "splittable chain was found")
        chosen = next((c for c in cands if _p4_holds(current, c)), None)
        if chosen is None:
            raise QuiverError("minimal chain fails independence (P4)")
        floor = chosen.length
        bar, current = split_chain(current, chosen, pivot)
        bars[bar] += 1
        touched = window_classes(chosen.start, chosen.length, mm)
        no_chain = {p: L for p, L in no_chain.items()
                    if not (window_classes(p, L, mm) & touched)}
        if _records is not None:
            _records.append((chosen.start, chosen.end))
    return bars, Counter()


def build_representation(cut, crit, r: int, fld: Field) -> CyclicQuiverRep:
    """The degree-r representation of a cut circle map: fiber homology
    at each t_i (odd spaces), interval-piece homology on [t_i, t_{i+1}]
    (even spaces), maps induced by the inclusions."""
    from .fibers import (homology_basis, induced_map, interval_subcomplex,
                         level_subcomplex)

    m = crit.m
    fiber_sub = [level_subcomplex(cut, crit.t_angle(i))
                 for i in range(1, m + 1)]
    fiber_bas = [homology_basis(s, r, fld) for s in fiber_sub]
    alpha = []
    beta = []
    for i in range(1, m + 1):
        iv = interval_subcomplex(cut, i, crit)
        ib = homology_basis(iv, r, fld)
        alpha.append(induced_map(fiber_bas[i - 1], ib, fiber_sub[i - 1], iv))
        beta.append(induced_map(fiber_bas[i % m], ib, fiber_sub[i % m], iv))
    return CyclicQuiverRep(fld, alpha, beta)


def synthesize_model(item, m: int, fld: Field) -> CyclicQuiverRep:
    """The indecomposable model representation of a bar or Jordan cell.

    Bars: one basis vector per chain position, adjacent positions linked
    by 1 entries.  Cells (factor, k): alpha_1 the companion matrix of
    factor^k, every other map the identity.
    """
    if isinstance(item, JordanBlock):
        N = item.k * item.degree
        comp = companion_matrix(fld, poly_pow(fld, item.factor, item.k))
        alpha = [comp] + [Matrix.identity(fld, N)] * (m - 1)
        beta = [Matrix.identity(fld, N)] * m
        return CyclicQuiverRep(fld, alpha, beta)
    bar: CircleBarCode = item
    if bar.m != m:
        raise QuiverError("bar has wrong m")
    p, q = bar.position_span()
    by_class: Dict[int, List[int]] = {c: [] for c in range(1, 2 * m + 1)}
    for pos in range(p, q + 1):
        by_class[_class_of(pos, m)].append(pos)
    idx = {c: {pos: r for r, pos in enumerate(by_class[c])}
           for c in by_class}
    alpha = []
    beta = []
    for i in range(m):
        co, ce = 2 * i + 1, 2 * i + 2
        cn = (2 * i + 2) % (2 * m) + 1
        A = [[fld.zero] * len(by_class[co])
             for _ in range(len(by_class[ce]))]
        for pos in by_class[co]:
            if p <= pos + 1 <= q and _class_of(pos + 1, m) == ce:
                A[idx[ce][pos + 1]][idx[co][pos]] = fld.one
        B = [[fld.zero] * len(by_class[cn])
             for _ in range(len(by_class[ce]))]
        for pos in by_class[cn]:
            if p <= pos - 1 <= q and _class_of(pos - 1, m) == ce:
                B[idx[ce][pos - 1]][idx[cn][pos]] = fld.one
        alpha.append(Matrix(fld, len(by_class[ce]), len(by_class[co]), A))
        beta.append(Matrix(fld, len(by_class[ce]), len(by_class[cn]), B))
    return CyclicQuiverRep(fld, alpha, beta)


def ap1_dim_vector(bar: CircleBarCode) -> Tuple[int, ...]:
    """Dimension vector (n_1, d_1, ..., n_m, d_m) of the bar's model,
    per the closed-form interval tables; used to validate splits."""
    m = bar.m
    i, j = bar.i, bar.j
    # two index layouts: i <= j uses k, i > j uses k - 1 as the table's
    # wrap parameter
    if i <= j:
        kk = bar.k

        def n_l(l):
            return kk + 1 if i + 1 <= l <= j else kk

        if bar.left_closed and bar.right_closed:
            def d_l(l):
                return kk + 1 if i <= l <= j else kk
        elif not bar.left_closed and bar.right_closed:
            def d_l(l):
                return kk + 1 if i + 1 <= l <= j else kk
        elif bar.left_closed and not bar.right_closed:
            def d_l(l):
                return kk + 1 if i <= l <= j - 1 else kk
        else:
            def d_l(l):
                # degenerate full-turn interval (s_i, s_i + 2pi k): the
                # even space at i is hit one turn fewer than elsewhere
                if i == j:
                    return kk - 1 if l == i else kk
                return kk + 1 if i + 1 <= l <= j - 1 else kk
    else:
        kk = bar.k - 1

        def n_l(l):
            return kk if j + 1 <= l <= i else kk + 1

        if bar.left_closed and bar.right_closed:
            def d_l(l):
                return kk if j + 1 <= l <= i - 1 else kk + 1
        elif not bar.left_closed and bar.right_closed:
            def d_l(l):
                return kk if j + 1 <= l <= i else kk + 1
        elif bar.left_closed and not bar.right_closed:
            def d_l(l):
                return kk if j <= l <= i - 1 else kk + 1
        else:
            def d_l(l):
                return kk if j <= l <= i else kk + 1
    out = []
    for l in range(1, m + 1):
        out.extend((n_l(l), d_l(l)))
    return tuple(out)


class LinearQuiverRep:
    """Open-ended zigzag: spaces x_1 (dim n_1) through x_{2m} (dim d_m)
    with alpha_i: x_{2i-1} -> x_{2i} for i = 1..m and
    beta_i: x_{2i+1} -> x_{2i} for i = 1..m-1 only (no wrap)."""

    def __init__(self, fld: Field, alpha: Sequence[Matrix],
                 beta: Sequence[Matrix]):
        if len(beta) != len(alpha) - 1:
            raise QuiverError("linear rep needs one fewer beta than alpha")
        self.field = fld
        self.m = len(alpha)
        self.alpha = list(alpha)
        self.beta = list(beta)
        self.n = [a.cols for a in alpha]
        self.d = [a.rows for a in alpha]
        for i, b in enumerate(self.beta):
            if b.rows != self.d[i] or b.cols != self.n[i + 1]:
                raise QuiverError(f"beta_{i+1} shape mismatch")

    def to_cyclic(self) -> CyclicQuiverRep:
        """Close the zigzag with one zero odd and one zero even space."""
        fld = self.field
        alpha = self.alpha + [Matrix.zeros(fld, 0, 0)]
        beta = (self.beta + [Matrix.zeros(fld, self.d[-1], 0)]
                + [Matrix.zeros(fld, 0, self.n[0])])
        return CyclicQuiverRep(fld, alpha, beta)


@dataclass(frozen=True)
class LinearBar:
    """Interval summand of a linear zigzag: support positions p..q
    (1-based, odd = fiber space, even = interval space)."""

    p: int
    q: int

    def __post_init__(self):
        if not 1 <= self.p <= self.q:
            raise QuiverError(f"malformed linear bar {self}")

    def type_str(self) -> str:
        lb = "[" if self.p % 2 == 0 else "("
        rb = "]" if self.q % 2 == 0 else ")"
        return f"{lb}{self.p}..{self.q}{rb}"


def decompose_linear(rep: LinearQuiverRep) -> Counter:
    """Complete decomposition of a linear zigzag into interval summands;
    the closed-up cycle has zero end spaces, so no summand wraps and no
    Jordan cells can occur."""
    cyc = rep.to_cyclic()
    records: List[Tuple[int, int]] = []
    decompose(cyc, _records=records)
    mc = cyc.m
    out: Counter = Counter()
    for p, q in records:
        p0 = ((p - 1) % (2 * mc)) + 1
        q0 = p0 + (q - p)
        assert q0 <= 2 * mc - 2, \
            "linear summand touched the closing zero spaces"
        out[LinearBar(p0, q0)] += 1
    return out

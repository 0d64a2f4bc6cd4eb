"""Counting formulas over the decomposition output: fiber and total
Betti numbers from bars and Jordan cells, the block matrix of a
representation with its kernel and cokernel dimensions, and spiral
coordinates for drawing bars.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .field import Field, JordanBlock, Matrix, poly_str, rank
from .complexes import CriticalStructure, normalize_angle
from .quiver import CircleBarCode, CyclicQuiverRep


class InvariantError(ValueError):
    pass


@dataclass
class InvariantsReport:
    """Complete r-invariants of a circle-valued map: per homology
    dimension the bar multiset and the Jordan cell multiset, plus
    cross-check outcomes accumulated by the pipeline."""

    field_spec: str
    crit: CriticalStructure
    dims: Dict[int, Tuple[Counter, Counter]]  # r -> (bars, cells)
    checks: dict = dc_field(default_factory=dict)

    def bars(self, r: int) -> Counter:
        return self.dims.get(r, (Counter(), Counter()))[0]

    def cells(self, r: int) -> Counter:
        return self.dims.get(r, (Counter(), Counter()))[1]


def bar_angles(bar: CircleBarCode, crit: CriticalStructure
               ) -> Tuple[Fraction, Fraction]:
    """Left and right endpoint values of a bar, with the left in (0, 1]
    and the right shifted by the wrap count."""
    left = crit.s[bar.i - 1]
    right = crit.s[bar.j - 1] + bar.k
    if right < left:
        raise InvariantError(f"inverted bar endpoints {left} > {right}")
    return left, right


def n_theta(bar: CircleBarCode, theta, crit: CriticalStructure) -> int:
    """How many of the angles theta, theta + 1, theta + 2, ... lie in
    the bar's interval, respecting end closures."""
    left, right = bar_angles(bar, crit)
    t = normalize_angle(Fraction(theta))
    if t == 0:
        t = Fraction(1)
    count = 0
    for n in range(0, bar.k + 3):
        x = t + n
        if x > right or (x == right and not bar.right_closed):
            break
        if x > left or (x == left and bar.left_closed):
            count += 1
    return count


def cell_dim(cell: JordanBlock) -> int:
    """Base-field dimension of a Jordan cell: k times the factor
    degree, so non-split factors count their full block size."""
    return cell.k * (len(cell.factor) - 1)


def _is_lambda_one(fld: Field, factor: tuple) -> bool:
    return tuple(factor) == (fld.neg(fld.one), fld.one)


def betti_fiber(report: InvariantsReport, r: int, theta,
                fld: Field) -> int:
    """dim H_r of the fiber at theta: bars crossing the ray plus the
    total dimension of the Jordan part."""
    out = 0
    for bar, cnt in report.bars(r).items():
        out += cnt * n_theta(bar, theta, report.crit)
    for cell, cnt in report.cells(r).items():
        out += cnt * cell_dim(cell)
    return out


def betti_total(report: InvariantsReport, r: int, fld: Field) -> int:
    """dim H_r of the whole space: closed-closed r-bars, open-open
    (r-1)-bars, and one unit per eigenvalue-one Jordan cell in
    dimensions r and r-1."""
    out = 0
    for bar, cnt in report.bars(r).items():
        if bar.left_closed and bar.right_closed:
            out += cnt
    for bar, cnt in report.bars(r - 1).items():
        if not bar.left_closed and not bar.right_closed:
            out += cnt
    for rr in (r, r - 1):
        for cell, cnt in report.cells(rr).items():
            if _is_lambda_one(fld, cell.factor):
                out += cnt
    return out


# -- the block matrix and eq. (eqf) -----------------------------------


def block_matrix(rep: CyclicQuiverRep) -> Matrix:
    """The square-free presentation matrix of the representation: alpha
    blocks on the diagonal, minus-beta blocks one step to the right,
    wrapping in the last row of blocks."""
    fld = rep.field
    m = rep.m
    row_off = [0]
    for d in rep.d:
        row_off.append(row_off[-1] + d)
    col_off = [0]
    for n in rep.n:
        col_off.append(col_off[-1] + n)
    R, C = row_off[-1], col_off[-1]
    data = [[fld.zero] * C for _ in range(R)]
    for i in range(m):
        a = rep.alpha[i]
        for r in range(a.rows):
            for c in range(a.cols):
                data[row_off[i] + r][col_off[i] + c] = fld.add(
                    data[row_off[i] + r][col_off[i] + c], a.data[r][c])
        b = rep.beta[i]
        jc = (i + 1) % m
        for r in range(b.rows):
            for c in range(b.cols):
                data[row_off[i] + r][col_off[jc] + c] = fld.add(
                    data[row_off[i] + r][col_off[jc] + c],
                    fld.neg(b.data[r][c]))
    return Matrix(fld, R, C, data)


def dk(M: Matrix) -> int:
    """Kernel dimension."""
    return M.cols - rank(M)


def dck(M: Matrix) -> int:
    """Cokernel dimension."""
    return M.rows - rank(M)


def verify_eqf(reps: Dict[int, CyclicQuiverRep],
               direct_betti: Dict[int, int]) -> Dict[int, dict]:
    """Check dim H_r(X) = dck(M_r) + dk(M_{r-1}) against independently
    computed Betti numbers; returns per-r values and verdicts."""
    blocks = {r: block_matrix(rep) for r, rep in reps.items()}
    out: Dict[int, dict] = {}
    for r, expect in sorted(direct_betti.items()):
        got = 0
        if r in blocks:
            got += dck(blocks[r])
        if r - 1 in blocks:
            got += dk(blocks[r - 1])
        out[r] = {"betti": expect, "dck+dk": got, "ok": got == expect}
    return out


# -- spiral geometry ---------------------------------------------------


def spiral_points(bar: CircleBarCode, crit: CriticalStructure,
                  samples_per_turn: int = 64) -> List[Tuple[float, float]]:
    """Polyline along the spiral whose radius grows linearly from 2 at
    the bar's left angle to 3 at its right angle."""
    left, right = bar_angles(bar, crit)
    if right == left:
        a = 2 * math.pi * float(left)
        return [(2 * math.cos(a), 2 * math.sin(a))]
    span = right - left
    steps = max(2, int(math.ceil(samples_per_turn * float(span))) + 1)
    pts = []
    for t in range(steps):
        theta = left + span * Fraction(t, steps - 1)
        radius = 2 + float((theta - left) / span)
        a = 2 * math.pi * float(theta)
        pts.append((radius * math.cos(a), radius * math.sin(a)))
    return pts


# -- JSON shape --------------------------------------------------------


def report_to_json(report: InvariantsReport, fld: Field) -> dict:
    """Plain-dict form of a report, for serialization."""
    crit = report.crit
    dims = {}
    for r in sorted(report.dims):
        bars = []
        for bar, cnt in sorted(report.dims[r][0].items(),
                               key=lambda bc: (bc[0].i, bc[0].j, bc[0].k,
                                               bc[0].left_closed,
                                               bc[0].right_closed)):
            for _ in range(cnt):
                bars.append({
                    "i": bar.i, "j": bar.j, "wrap": bar.k,
                    "left": "closed" if bar.left_closed else "open",
                    "right": "closed" if bar.right_closed else "open",
                })
        cells = []
        for cell, cnt in sorted(report.dims[r][1].items(),
                                key=lambda cc: (str(cc[0].factor),
                                                cc[0].k)):
            for _ in range(cnt):
                cells.append({
                    "factor": poly_str(fld, cell.factor),
                    "k": cell.k,
                    "split": len(cell.factor) == 2,
                })
        dims[str(r)] = {"bars": bars, "jordan": cells}
    return {
        "field": report.field_spec,
        "critical_angles": [f"{a.numerator}/{a.denominator}"
                            for a in crit.s],
        "dims": dims,
        "checks": report.checks,
    }

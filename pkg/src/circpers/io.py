"""Text file formats for complexes, maps, cocycles and representations,
plus canonical JSON and SVG emission.

Complex file: one simplex per line as space separated vertex indices.
Map file: "v p/q" lines give vertex angles, "u v p/q" lines give edge
lift offsets.  Cocycle file: "u v p/q" lines, one per edge.
Representation file: a "m <m> field <spec>" header, a "dims n1 d1 ...
nm dm" line, then "alpha <i>" / "beta <i>" stanzas whose rows are field
entries as integers or fractions.  '#' starts a comment everywhere.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .field import Field, Matrix, parse_field
from .complexes import (PLCircleMap, SimplicialComplex, build_complex,
                        validate_circle_map)
from .cocycle import OneCocycle, validate_cocycle
from .quiver import CyclicQuiverRep
from .invariants import InvariantsReport, bar_angles, spiral_points


class IOFormatError(ValueError):
    """Parse failure with file and line context."""

    def __init__(self, path: str, lineno: int, msg: str):
        super().__init__(f"{path}:{lineno}: {msg}")
        self.path = path
        self.lineno = lineno


def _content_lines(path: str) -> List[Tuple[int, List[str]]]:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.split("#", 1)[0].strip()
            if text:
                out.append((lineno, text.split()))
    return out


def parse_fraction(tok: str, path: str, lineno: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise IOFormatError(path, lineno, f"bad rational {tok!r}")


def fraction_str(fr: Fraction) -> str:
    return f"{fr.numerator}/{fr.denominator}"


def element_from_fraction(fld: Field, fr: Fraction):
    return fld.div(fld.from_int(fr.numerator), fld.from_int(fr.denominator))


# -- complexes and maps ------------------------------------------------


def read_complex_file(path: str) -> SimplicialComplex:
    simplices = []
    for lineno, toks in _content_lines(path):
        try:
            simplices.append(tuple(int(t) for t in toks))
        except ValueError:
            raise IOFormatError(path, lineno, "vertex indices must be "
                                "integers")
    if not simplices:
        raise IOFormatError(path, 0, "no simplices")
    return build_complex(simplices)


def write_complex_file(cx: SimplicialComplex) -> str:
    lines = ["# simplicial complex: one maximal simplex per line"]
    lines += [" ".join(str(v) for v in s) for s in cx.maximal_simplices()]
    return "\n".join(lines) + "\n"


def read_map_file(path: str, cx: SimplicialComplex) -> PLCircleMap:
    angles: Dict[int, Fraction] = {}
    lifts: Dict[Tuple[int, int], Fraction] = {}
    for lineno, toks in _content_lines(path):
        if len(toks) == 2:
            v = int(toks[0])
            if v in angles:
                raise IOFormatError(path, lineno, f"vertex {v} angle "
                                    "given twice")
            angles[v] = parse_fraction(toks[1], path, lineno)
        elif len(toks) == 3:
            u, v = int(toks[0]), int(toks[1])
            lifts[(u, v)] = parse_fraction(toks[2], path, lineno)
        else:
            raise IOFormatError(path, lineno, "expected 'v angle' or "
                                "'u v lift'")
    missing = [v for v in range(cx.n_vertices) if v not in angles]
    if missing:
        raise IOFormatError(path, 0, f"no angle for vertices {missing}")
    return validate_circle_map(cx, [angles[v] for v in range(cx.n_vertices)],
                               lifts)


def write_map_file(plmap: PLCircleMap) -> str:
    lines = ["# vertex angles"]
    lines += [f"{v} {fraction_str(a)}" for v, a in enumerate(plmap.angles)]
    lines.append("# edge lifts")
    lines += [f"{u} {v} {fraction_str(plmap.edge_lift(u, v))}"
              for (u, v) in plmap.complex.edges()]
    return "\n".join(lines) + "\n"


def read_cocycle_file(path: str, cx: SimplicialComplex) -> OneCocycle:
    vals: Dict[Tuple[int, int], Fraction] = {}
    for lineno, toks in _content_lines(path):
        if len(toks) != 3:
            raise IOFormatError(path, lineno, "expected 'u v value'")
        u, v = int(toks[0]), int(toks[1])
        if (u, v) in vals:
            raise IOFormatError(path, lineno, f"edge ({u}, {v}) given "
                                "twice")
        vals[(u, v)] = parse_fraction(toks[2], path, lineno)
    return validate_cocycle(cx, vals)


def write_cocycle_file(coc: OneCocycle) -> str:
    lines = ["# cocycle values on ascending edges"]
    lines += [f"{u} {v} {fraction_str(coc.values[(u, v)])}"
              for (u, v) in coc.complex.edges()]
    return "\n".join(lines) + "\n"


# -- representation files ----------------------------------------------


def read_rep_file(path: str) -> Tuple[CyclicQuiverRep, str]:
    """Parse a representation file; returns the representation and its
    field spec string."""
    lines = _content_lines(path)
    if not lines:
        raise IOFormatError(path, 0, "empty representation file")
    it = iter(lines)
    lineno, toks = next(it)
    if len(toks) != 4 or toks[0] != "m" or toks[2] != "field":
        raise IOFormatError(path, lineno, "expected header 'm <m> field "
                            "<spec>'")
    m = int(toks[1])
    spec = toks[3]
    fld = parse_field(spec)
    lineno, toks = next(it, (lineno, None))
    if toks is None or toks[0] != "dims" or len(toks) != 1 + 2 * m:
        raise IOFormatError(path, lineno, f"expected 'dims' line with "
                            f"{2 * m} entries")
    n = [int(x) for x in toks[1::2]]
    d = [int(x) for x in toks[2::2]]

    def read_matrix(kind: str, i: int, rows: int, cols: int) -> Matrix:
        ln, tk = next(it, (0, None))
        if tk is None or tk != [kind, str(i)]:
            raise IOFormatError(path, ln, f"expected stanza '{kind} {i}'")
        data = []
        for _ in range(rows):
            ln, tk = next(it, (0, None))
            if tk is None or len(tk) != cols:
                raise IOFormatError(path, ln, f"{kind} {i}: expected a "
                                    f"row of {cols} entries")
            data.append([element_from_fraction(
                fld, parse_fraction(t, path, ln)) for t in tk])
        return Matrix(fld, rows, cols, data)

    alpha = [read_matrix("alpha", i + 1, d[i], n[i]) for i in range(m)]
    beta = [read_matrix("beta", i + 1, d[i], n[(i + 1) % m])
            for i in range(m)]
    extra = next(it, None)
    if extra is not None:
        raise IOFormatError(path, extra[0], "trailing content")
    return CyclicQuiverRep(fld, alpha, beta), spec


def write_rep_file(rep: CyclicQuiverRep, spec: str) -> str:
    lines = [f"m {rep.m} field {spec}"]
    dims = []
    for nn, dd in zip(rep.n, rep.d):
        dims += [str(nn), str(dd)]
    lines.append("dims " + " ".join(dims))
    for kind, mats in (("alpha", rep.alpha), ("beta", rep.beta)):
        for i, mat in enumerate(mats, start=1):
            lines.append(f"{kind} {i}")
            for row in mat.data:
                lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


# -- emission ----------------------------------------------------------


def json_canonical(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


_SVG_COLORS = ["#1f6fb2", "#b2471f", "#3d8f3d", "#8f3d8f", "#b29a1f",
               "#1fb2a4"]


def _dot(x: float, y: float, filled: bool, color: str) -> str:
    fill = color if filled else "white"
    return (f'<circle cx="{x:.3f}" cy="{y:.3f}" r="0.07" '
            f'fill="{fill}" stroke="{color}" stroke-width="0.035"/>')


def render_svg(report: InvariantsReport) -> str:
    """Spiral picture of the bars: radius grows from 2 to 3 along each
    bar, closed ends drawn filled and open ends hollow; Jordan cells
    listed as text."""
    parts = ['<svg xmlns="http://www.w3.org/2000/svg" '
             'viewBox="-4 -4 8 8" width="640" height="640">',
             '<circle cx="0" cy="0" r="1" fill="none" stroke="#bbbbbb" '
             'stroke-width="0.02"/>']
    texts = []
    idx = 0
    for r in sorted(report.dims):
        for bar, cnt in sorted(report.dims[r][0].items(),
                               key=lambda bc: (bc[0].i, bc[0].j, bc[0].k)):
            for _ in range(cnt):
                color = _SVG_COLORS[idx % len(_SVG_COLORS)]
                pts = spiral_points(bar, report.crit)
                if len(pts) == 1:
                    parts.append(_dot(pts[0][0], pts[0][1],
                                      bar.left_closed and bar.right_closed,
                                      color))
                else:
                    path = "M " + " L ".join(f"{x:.3f} {y:.3f}"
                                             for x, y in pts)
                    parts.append(f'<path d="{path}" fill="none" '
                                 f'stroke="{color}" stroke-width="0.04"/>')
                    parts.append(_dot(*pts[0], bar.left_closed, color))
                    parts.append(_dot(*pts[-1], bar.right_closed, color))
                idx += 1
        for cell, cnt in sorted(report.dims[r][1].items(),
                                key=lambda cc: (str(cc[0].factor),
                                                cc[0].k)):
            texts.append(f"dim {r}: jordan k={cell.k} x{cnt}")
    for i, t in enumerate(texts):
        parts.append(f'<text x="-3.8" y="{-3.6 + 0.3 * i:.2f}" '
                     f'font-size="0.25" fill="#333333">{t}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

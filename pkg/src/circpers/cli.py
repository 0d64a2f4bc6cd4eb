"""Command line pipeline: parse inputs, decompose, cross-check, emit.

`circpers compute` accepts one input kind:

  --complex F --map F       PL circle map on a simplicial complex
  --complex F --cocycle F   rational 1-cocycle, integrated to a map
  --rep F                   a cyclic quiver representation directly

and produces the invariants report as canonical JSON, optionally with an
SVG spiral picture.  Exit codes: 0 ok, 1 input error, 2 cross-check
failure, 3 internal assertion.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, Optional, Set, Tuple

from .field import FieldError, parse_field
from .complexes import (ComplexError, CriticalStructure, MapError,
                        critical_structure)
from .cutting import cut_at_levels
from .quiver import QuiverError, build_representation, decompose
from .covering import covering_route_bars, extract_circle_bars
from .sublevel import sublevel_route_bars
from .invariants import InvariantsReport, report_to_json, verify_eqf
from .cocycle import CocycleError, cocycle_to_circle_map, period_alpha
from .fixtures import brute_force_homology
from . import io as cio


class InputError(ValueError):
    pass


class CheckFailure(RuntimeError):
    pass


_CHECKS = ("covering", "sublevel", "eqf")


@dataclass
class RunConfig:
    kind: str  # "map" | "cocycle" | "rep"
    complex_path: Optional[str] = None
    map_path: Optional[str] = None
    cocycle_path: Optional[str] = None
    rep_path: Optional[str] = None
    field_spec: Optional[str] = None
    dims: Optional[Tuple[int, int]] = None
    checks: Set[str] = dc_field(default_factory=set)
    json_out: Optional[str] = None
    svg_out: Optional[str] = None
    verbose: bool = False

    def __post_init__(self):
        if self.kind not in ("map", "cocycle", "rep"):
            raise InputError(f"unknown input kind {self.kind!r}")
        bad = self.checks - set(_CHECKS)
        if bad:
            raise InputError(f"unknown checks {sorted(bad)}")
        if self.kind == "rep" and self.checks:
            raise InputError("cross-checks need a complex; they are not "
                             "available for representation input")


def _log(config: RunConfig, msg: str) -> None:
    if config.verbose:
        print(msg, file=sys.stderr)


def _uniform_critical_structure(m: int) -> CriticalStructure:
    """Evenly spaced stand-in angles for representation-only input."""
    s = [Fraction(i + 1, m) for i in range(m)]
    t = []
    for i in range(m):
        prev = s[i - 1] - 1 if i == 0 else s[i - 1]
        t.append((prev + s[i]) / 2)
    return CriticalStructure(s=s, t=t)


def run_pipeline(config: RunConfig) -> InvariantsReport:
    """Parse, validate, decompose per dimension and run the requested
    cross-checks; check outcomes land in report.checks."""
    checks: dict = {}
    if config.kind == "rep":
        rep, spec = cio.read_rep_file(config.rep_path)
        if config.field_spec is not None and \
                parse_field(config.field_spec).spec() != rep.field.spec():
            raise InputError(
                f"--field {config.field_spec} conflicts with the "
                f"representation file's field {spec}")
        lo, hi = config.dims if config.dims else (1, 1)
        if (lo, hi) != (1, 1) and lo != hi:
            raise InputError("representation input carries a single "
                             "homology degree")
        bars, cells = decompose(rep)
        return InvariantsReport(rep.field.spec(),
                                _uniform_critical_structure(rep.m),
                                {lo: (bars, cells)}, checks)

    fld = parse_field(config.field_spec or "q")
    cx = cio.read_complex_file(config.complex_path)
    if config.kind == "map":
        plmap = cio.read_map_file(config.map_path, cx)
    else:
        coc = cio.read_cocycle_file(config.cocycle_path, cx)
        witness = period_alpha(coc)
        checks["cocycle_period"] = ("exact" if witness.exact
                                    else cio.fraction_str(witness.alpha))
        plmap = cocycle_to_circle_map(coc, witness)
    crit = critical_structure(plmap)
    _log(config, f"{crit.m} critical angles")
    cut = cut_at_levels(plmap, crit.cut_angles())
    lo, hi = config.dims if config.dims else (0, cx.dim)
    if not 0 <= lo <= hi <= cx.dim:
        raise InputError(f"dimension range {lo}..{hi} outside 0..{cx.dim}")
    dims: Dict[int, Tuple[Counter, Counter]] = {}
    reps = {}
    for r in range(lo, hi + 1):
        reps[r] = build_representation(cut, crit, r, fld)
        dims[r] = decompose(reps[r])
        _log(config, f"r={r}: {sum(dims[r][0].values())} bars, "
                     f"{sum(dims[r][1].values())} jordan cells")
    report = InvariantsReport(fld.spec(), crit, dims, checks)

    if "covering" in config.checks or "sublevel" in config.checks:
        cov_res: dict = {}
        sub_res: dict = {}
        for r in range(lo, hi + 1):
            cov_bars, rc, k = covering_route_bars(cut, crit, r, fld)
            if "covering" in config.checks:
                ok = cov_bars == dims[r][0]
                cov_res[str(r)] = {"ok": ok, "truncation": k}
                _log(config, f"covering check r={r}: "
                             f"{'ok' if ok else 'MISMATCH'}")
            if "sublevel" in config.checks:
                sub_bars = extract_circle_bars(
                    sublevel_route_bars(rc, r, fld), rc, crit,
                    crit.t_angle(1), k)
                ok = sub_bars == dims[r][0]
                sub_res[str(r)] = {"ok": ok}
                _log(config, f"sublevel check r={r}: "
                             f"{'ok' if ok else 'MISMATCH'}")
        if cov_res:
            checks["covering"] = cov_res
        if sub_res:
            checks["sublevel"] = sub_res
    if "eqf" in config.checks:
        direct = {r: brute_force_homology(cx, r, fld)
                  for r in range(cx.dim + 2)}
        eq = verify_eqf(reps, direct)
        checks["eqf"] = {str(r): v for r, v in eq.items()}
    return report


def checks_ok(report: InvariantsReport) -> bool:
    def walk(node) -> bool:
        if isinstance(node, dict):
            if "ok" in node and node["ok"] is False:
                return False
            return all(walk(v) for v in node.values())
        return True
    return walk(report.checks)


def emit_report(report: InvariantsReport, config: RunConfig) -> None:
    fld = parse_field(report.field_spec)
    text = cio.json_canonical(report_to_json(report, fld))
    if config.json_out:
        with open(config.json_out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if config.svg_out:
        with open(config.svg_out, "w", encoding="utf-8") as fh:
            fh.write(cio.render_svg(report))


def _parse_dims(text: str) -> Tuple[int, int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return int(a), int(b)
        r = int(text)
        return r, r
    except ValueError:
        raise InputError(f"bad dimension range {text!r}; use A..B")


def build_config(args) -> RunConfig:
    given = [k for k in ("map", "cocycle", "rep")
             if getattr(args, k) is not None]
    if len(given) != 1:
        raise InputError("give exactly one of --map, --cocycle, --rep")
    kind = given[0]
    if kind in ("map", "cocycle") and args.complex is None:
        raise InputError(f"--{kind} requires --complex")
    if kind == "rep" and args.complex is not None:
        raise InputError("--rep does not take --complex")
    checks = set()
    if args.check:
        for part in args.check.split(","):
            if part.strip():
                checks.add(part.strip())
    return RunConfig(
        kind=kind,
        complex_path=args.complex,
        map_path=args.map,
        cocycle_path=args.cocycle,
        rep_path=args.rep,
        field_spec=args.field,
        dims=_parse_dims(args.dims) if args.dims else None,
        checks=checks,
        json_out=args.json,
        svg_out=args.svg,
        verbose=args.verbose,
    )


def _make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="circpers",
        description="Persistence invariants of circle valued maps")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("compute", help="compute bars and jordan cells")
    c.add_argument("--complex", help="simplicial complex file")
    c.add_argument("--map", help="circle map file (with --complex)")
    c.add_argument("--cocycle", help="1-cocycle file (with --complex)")
    c.add_argument("--rep", help="representation file (standalone)")
    c.add_argument("--field", help="q or zp:<prime> (default q)")
    c.add_argument("--dims", help="homology degree range A..B "
                   "(default: all; rep input: 1)")
    c.add_argument("--check", help="comma separated subset of "
                   + ",".join(_CHECKS))
    c.add_argument("--json", help="JSON output path (default stdout)")
    c.add_argument("--svg", help="SVG output path")
    c.add_argument("--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    try:
        args = _make_parser().parse_args(argv)
    except SystemExit as e:
        return 1 if e.code not in (0, None) else 0
    try:
        config = build_config(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    try:
        report = run_pipeline(config)
    except (InputError, cio.IOFormatError, OSError, FieldError,
            ComplexError, MapError, CocycleError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (AssertionError, QuiverError) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 3
    emit_report(report, config)
    if not checks_ok(report):
        print("error: cross-check failed", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

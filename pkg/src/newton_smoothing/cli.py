"""Command line entry point: newton-smoothing <subcommand> POLYNOMIAL [options]."""
from __future__ import annotations

import argparse
import os
import sys
from importlib import metadata

from . import serialize as ser
from .conditions import check_conditions
from .geometry import CONVENTIONS, LITERAL, GeometryError, build_newton_data
from .knapp import FULL_BOX, L1, L2, LK, PRESETS, necessary_region, scaling_fit
from .lattice import FanError, RayClass, lattice_decomposition
from .oscillatory import QuadratureError, decay_fit
from .polynomial import NoPureMonomialError, PolynomialParseError, parse_polynomial, swap_normalize
from .profile import ProfileError, sharp_profile

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_UNSUPPORTED = 0, 1, 2, 3
COMMANDS = ("analyze", "check", "profile", "decay", "knapp", "decompose")


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0.0.0"


def _pair(text: str) -> tuple[int, int]:
    a, b = text.split(",")
    return int(a), int(b)


def _range(text: str) -> list[int]:
    parts = [int(p) for p in text.split(":")]
    if len(parts) == 2:
        parts.append(1)
    lo, hi, step = parts
    return list(range(lo, hi + 1, step))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("polynomial", nargs="?", help='e.g. "t1^2 + t1^4*t2^6 + t2^8"')
    common.add_argument("--file", help="read the polynomial from a file")
    common.add_argument("--format", choices=("json", "csv", "tsv"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--r-convention", choices=CONVENTIONS, default=LITERAL)
    common.add_argument("--strict-exponents", choices=("on", "off"), default="on")
    common.add_argument("--quad-order", type=int, default=None, help="fixed quadrature nodes per interval")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--ignore-conditions", action="store_true", help="build profiles even if the check fails")

    parser = argparse.ArgumentParser(prog="newton-smoothing", description="Sharp L^p Sobolev smoothing profiles from Newton polyhedra.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="geometry, check, profiles and necessary lines")
    sub.add_parser("check", parents=[common], help="nondegeneracy check only")
    sub.add_parser("profile", parents=[common], help="profiles under both conventions")

    dec = sub.add_parser("decay", parents=[common], help="numerical decay sweep of dyadic multiplier pieces")
    dec.add_argument("--v", type=_pair, default=(1, 1))
    dec.add_argument("--w", type=_pair, default=None)
    dec.add_argument("--index", action="append", default=None, help="i or i,l (repeatable)")
    dec.add_argument("--xi-range", default="10:13", help="log2 range lo:hi[:step] of xi3")

    kn = sub.add_parser("knapp", parents=[common], help="necessary lines from box examples")
    kn.add_argument("--preset", choices=PRESETS + ("all",), default="all")
    kn.add_argument("--eps", default="4:20:2", help="log2(1/eps) range lo:hi[:step]")
    kn.add_argument("--fit", action="store_true", help="run the numerical eps sweep")

    de = sub.add_parser("decompose", parents=[common], help="cover of the lattice box by the normal fan")
    de.add_argument("--box", type=int, default=20)
    de.add_argument("--normals", default=None, help='override, e.g. "2,1;1,2"')
    return parser


def _read_text(args) -> str:
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            return fh.read().strip()
    if args.polynomial is None:
        raise SystemExit("a polynomial (or --file) is required")
    return args.polynomial


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("polynomial", "file", "out", "command")}
    for k, v in list(cfg.items()):
        if isinstance(v, tuple):
            cfg[k] = list(v)
    return cfg


def _profiles(poly):
    out, notes = {}, []
    for conv in CONVENTIONS:
        try:
            out[conv] = sharp_profile(build_newton_data(poly, conv))
        except ProfileError as exc:
            out[conv] = None
            notes.append(f"{conv}: {exc}")
    a, b = out[LITERAL], out[CONVENTIONS[1]]
    diverge = (a is None) != (b is None) or (a is not None and not a.same_shape(b))
    return out, diverge, notes


def run_pipeline(args) -> tuple[dict, int, list]:
    """Returns (report, exit code, tabular rows for csv/tsv)."""
    text = _read_text(args)
    report = {
        "tool": {"name": "newton-smoothing", "version": tool_version()},
        "command": args.command,
        "input": {"text": text},
        "config": _config(args),
    }
    rows: list = []
    try:
        parsed = parse_polynomial(text, strict=args.strict_exponents == "on")
    except PolynomialParseError as exc:
        report["error"] = {"kind": "parse", "message": str(exc), "position": exc.position}
        return report, EXIT_PARSE, rows
    report["input"]["polynomial"] = str(parsed)
    report["input"]["strict_exponents"] = args.strict_exponents == "on"
    try:
        poly, swapped = swap_normalize(parsed)
        report["input"]["normalized"] = str(poly)
        report["input"]["swapped"] = swapped
        if args.command == "decompose":
            return _decompose(args, poly, report)
        data = build_newton_data(poly, args.r_convention)
    except (NoPureMonomialError, GeometryError) as exc:
        report["error"] = {"kind": "unsupported", "message": str(exc), "position": None}
        return report, EXIT_UNSUPPORTED, rows
    report["newton"] = ser.newton_json(data)
    code = EXIT_OK

    if args.command in ("analyze", "check", "profile"):
        cond = check_conditions(poly)
        report["conditions"] = ser.conditions_json(cond)
        if not cond.passed:
            code = EXIT_FAIL
        rows = [dict(clause=c.clause, edge=c.edge, test=c.test, verdict=c.verdict) for c in cond.c21 + cond.c22]
        if args.command in ("analyze", "profile"):
            report["primary_convention"] = args.r_convention
            if cond.passed or args.ignore_conditions:
                profiles, diverge, notes = _profiles(poly)
                report["profiles"] = {k: ser.profile_json(v) if v is not None else None for k, v in profiles.items()}
                report["profiles_diverge"] = diverge
                if notes:
                    report["profile_note"] = "; ".join(notes)
                main = profiles[args.r_convention]
                if main is not None:
                    rows = [{"inv_p": str(x), "alpha": str(y)} for x, y in main.polyline()]
            else:
                report["profile_note"] = "nondegeneracy check did not pass; profile withheld"
        if args.command == "analyze":
            report["knapp"] = {"region": ser.region_json(necessary_region(data))}
    elif args.command == "decay":
        indices = [_pair(ix) if "," in ix else (int(ix), 0) for ix in (args.index or ["1"])]
        exps = _range(args.xi_range)
        workers = int(os.environ.get("NEWTON_SMOOTHING_THREADS", "1"))
        try:
            rep = decay_fit(poly, args.v, indices, lambda i, l: exps, w=args.w, order=args.quad_order, workers=workers)
        except (QuadratureError, ValueError, GeometryError) as exc:
            report["error"] = {"kind": "numeric", "message": str(exc), "position": None}
            return report, EXIT_UNSUPPORTED, rows
        report["decay"] = ser.decay_json(rep)
        rows = rep.rows
        if rep.verdict == "FAIL":
            code = EXIT_FAIL
    elif args.command == "knapp":
        region = necessary_region(data)
        if args.preset != "all":
            keep = {L1: L1, L2: L2, FULL_BOX: FULL_BOX}
            region = [e for e in region if e.label.split("-dual")[0] == keep.get(args.preset)
                      or (args.preset == LK and e.label.startswith(("l_k", LK)))]
        report["knapp"] = {"region": ser.region_json(region)}
        if args.fit:
            eps = [2.0 ** -k for k in _range(args.eps)]
            fits = []
            for entry in region:
                if entry.spec is None or entry.label.endswith("-dual"):
                    continue
                fit = scaling_fit(poly, entry.spec, eps, seed=args.seed)
                fits.append(ser.knapp_fit_json(fit))
                rows.extend(fit.rows)
                if fit.verdict != "PASS":
                    code = EXIT_FAIL
            report["knapp"]["fits"] = fits
        elif not rows:
            rows = [{"label": e.label, "status": e.status, **({"A": str(e.line.A), "B": str(e.line.B), "C": str(e.line.C)} if e.line else {})}
                    for e in region]
    return report, code, rows


def _decompose(args, poly, report):
    from .geometry import build_polyhedron

    if args.normals:
        normals = [_pair(p) for p in args.normals.split(";")]
    else:
        normals = [e.normal for e in build_polyhedron(poly).bounded_edges]
    try:
        dec = lattice_decomposition(normals, args.box)
    except FanError as exc:
        report["error"] = {"kind": "unsupported", "message": str(exc), "position": None}
        return report, EXIT_UNSUPPORTED, []
    counts = {"ray": 0, "cone": 0}
    rows = []
    once = True
    for pt, cls in sorted(dec.assignment.items()):
        if dec.reconstruct(pt) != pt:
            once = False
        if isinstance(cls, RayClass):
            counts["ray"] += 1
            rows.append({"j1": pt[0], "j2": pt[1], "kind": "ray", "k": cls.k, "i": cls.i, "l": "", "s1": "", "s2": ""})
        else:
            counts["cone"] += 1
            rows.append({"j1": pt[0], "j2": pt[1], "kind": "cone", "k": cls.k, "i": cls.i, "l": cls.l,
                         "s1": cls.shift[0], "s2": cls.shift[1]})
    once = once and len(dec.assignment) == (args.box + 1) ** 2
    report["decomposition"] = {
        "normals": [list(v) for v in dec.normals],
        "box": args.box,
        "counts": counts,
        "shifts": {str(k): [list(s) for s in v] for k, v in dec.shifts.items()},
        "covered_once": once,
    }
    return report, EXIT_OK, rows


def render(report: dict, rows: list, fmt: str) -> str:
    if fmt == "json" or not rows:
        return ser.dumps(report)
    columns = list(rows[0].keys())
    return ser.rows_to_text(rows, columns, "," if fmt == "csv" else "\t")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report, code, rows = run_pipeline(args)
    text = render(report, rows, args.format)
    if "error" in report:
        print(report["error"]["message"], file=sys.stderr)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""JSON-ready dictionaries, CSV/TSV rows and schema validation for reports."""
from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from importlib import resources

from .conditions import ConditionReport, EdgeCheck
from .geometry import INF, Edge, NewtonData
from .knapp import KnappFitReport, NecessaryLine, RegionEntry
from .oscillatory import DecayFitReport
from .profile import RegularityProfile


def rational(x) -> str:
    return str(Fraction(x))


def point(p) -> list:
    return [("inf" if c == INF else int(c)) for c in p]


def edge_json(e: Edge) -> dict:
    return {
        "kind": e.kind,
        "start": point(e.start),
        "end": point(e.end) if e.end is not None else None,
        "normal": list(e.normal),
        "support": [point(q) for q in e.support],
    }


def newton_json(d: NewtonData) -> dict:
    return {
        "convention": d.convention,
        "vertices": [point(v) for v in d.hull.vertices],
        "edges": [edge_json(e) for e in d.hull.edges],
        "delta": rational(d.delta),
        "ms": "inf" if d.ms == INF else int(d.ms),
        "ns": "inf" if d.ns == INF else int(d.ns),
        "P1": str(d.P1) if not d.P1.is_zero() else "0",
        "P2": str(d.P2) if not d.P2.is_zero() else "0",
        "M": d.M,
        "delta_ray": [{"point": point(c), "delta": rational(v)} for c, v in d.ray_deltas.items()],
        "dropped": [point(c) for c in d.dropped],
        "MsNs": point(d.MsNs) if d.MsNs is not None else None,
        "R": [point(c) for c in d.R],
        "chain": [point(c) for c in d.chain],
        "normals": [list(v) for v in d.normals],
    }


def _check_json(c: EdgeCheck) -> dict:
    out = {"edge": c.edge, "test": c.test, "polynomial": str(c.polynomial) if not c.polynomial.is_zero() else "0",
           "verdict": c.verdict, "witness": None}
    if c.witness is not None:
        w = c.witness
        out["witness"] = {
            "fixed_var": f"t{w.fixed_var}",
            "fixed_value": rational(w.fixed_value),
            "interval": [rational(w.interval[0]), rational(w.interval[1])],
            "point": [rational(x) for x in w.point],
        }
    return out


def conditions_json(r: ConditionReport) -> dict:
    return {
        "c21": {"verdict": r.c21_verdict, "entries": [_check_json(c) for c in r.c21]},
        "c22": {"verdict": r.c22_verdict, "entries": [_check_json(c) for c in r.c22]},
        "verdict": r.verdict,
        "witnesses": [_check_json(c)["witness"] | {"clause": c.clause, "edge": c.edge}
                      for c in r.c21 + r.c22 if c.witness is not None],
        "notes": list(r.notes),
    }


def profile_json(p: RegularityProfile) -> dict:
    return {
        "bound": p.bound,
        "delta": rational(p.delta) if p.delta is not None else None,
        "convention": p.convention,
        "pieces": [
            {"xLo": rational(q.x_lo), "xHi": rational(q.x_hi), "slope": rational(q.slope),
             "intercept": rational(q.intercept), "label": q.label, "degenerate": q.degenerate}
            for q in p.pieces
        ],
        "polyline": [[rational(x), rational(y)] for x, y in p.polyline()],
        "notes": list(p.notes),
    }


def line_json(line: NecessaryLine) -> dict:
    slope, intercept = line.as_lower_bound()
    return {"label": line.label, "A": rational(line.A), "B": rational(line.B), "C": rational(line.C),
            "lower_bound": {"slope": rational(slope), "intercept": rational(intercept)}}


def region_json(entries: list[RegionEntry]) -> list:
    out = []
    for e in entries:
        item = {"label": e.label, "status": e.status, "note": e.note, "line": None, "box": None}
        if e.line is not None:
            item["line"] = line_json(e.line)
        if e.spec is not None:
            item["box"] = {"e": [rational(x) for x in e.spec.e], "d": [rational(x) for x in e.spec.d]}
        out.append(item)
    return out


def _float(x: float):
    return x if math.isfinite(x) else str(x)


def decay_json(r: DecayFitReport) -> dict:
    return {
        "v": list(r.v),
        "w": list(r.w) if r.w else None,
        "indices": [list(ix) for ix in r.indices],
        "rows": [{k: _float(v) if isinstance(v, float) else v for k, v in row.items()} for row in r.rows],
        "slopes": [{"index": list(k), "slope": s, "residual": r.residuals[k]} for k, s in r.slopes.items()],
        "predicted_slope": r.predicted_slope,
        "constant": r.constant,
        "hessian_ratio": list(r.hessian_ratio) if r.hessian_ratio else None,
        "verdict": r.verdict,
        "notes": list(r.notes),
    }


def knapp_fit_json(r: KnappFitReport) -> dict:
    return {
        "line": line_json(r.line),
        "phase": {"eps": r.phase.eps, "ratios": r.phase.ratios, "slope": r.phase.slope, "verdict": r.phase.verdict},
        "rows": r.rows,
        "fitted_exponent": r.fitted_exponent,
        "analytic_exponent": rational(r.analytic_exponent),
        "residual": r.residual,
        "verdict": r.verdict,
        "notes": list(r.notes),
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def rows_to_text(rows: list[dict], columns: list[str], delimiter: str = ",") -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, delimiter=delimiter, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()


def load_schema() -> dict:
    text = resources.files("newton_smoothing").joinpath("report.schema.json").read_text()
    return json.loads(text)


def validate_report(report: dict) -> None:
    import jsonschema

    jsonschema.validate(report, load_schema())

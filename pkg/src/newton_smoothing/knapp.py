"""Knapp-type box examples and the L^p -> L^q necessary conditions they give.

A box family is described by exponents: Q_eps has half-widths eps^e1,
eps^e2 and height eps; D_eps has half-widths eps^d1, eps^d2 around the
surface with thickness eps.  With f the indicator of Q_eps and
Af >= |Q_eps(x)| = eps^(e1+e2) on D_eps, boundedness forces

    (e1 + e2 + 1) / p  <=  (e1 + e2)  +  (d1 + d2 + 1) / q.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .geometry import INF, NewtonData, diagonal_edges

FULL_BOX = "full-box"
L1 = "l1"
L2 = "l2"
LK = "lk"
PRESETS = (L1, L2, LK, FULL_BOX)

HALF = Fraction(1, 2)

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"


class PresetUnavailable(ValueError):
    """The geometric input a preset needs does not exist."""


@dataclass(frozen=True)
class BoxSpec:
    label: str
    e: tuple  # Q half-width exponents
    d: tuple  # D half-width exponents

    def __post_init__(self):
        if any(x < 0 for x in self.e + self.d):
            raise ValueError("box exponents must be nonnegative")

    @property
    def q_volume(self) -> Fraction:
        return self.e[0] + self.e[1] + 1

    @property
    def d_volume(self) -> Fraction:
        return self.d[0] + self.d[1] + 1

    def line(self) -> "NecessaryLine":
        return NecessaryLine(self.q_volume, self.e[0] + self.e[1], self.d_volume, self.label)

    def scaled(self, factor) -> "BoxSpec":
        """Same family with the Q widths' exponents multiplied (for negative controls)."""
        return BoxSpec(self.label + "*", tuple(Fraction(x) * factor for x in self.e), self.d)


@dataclass(frozen=True)
class NecessaryLine:
    """A * (1/p) <= B + C * (1/q)."""

    A: Fraction
    B: Fraction
    C: Fraction
    label: str

    def slack(self, x, y):
        """B + C y - A x; nonnegative when (1/p, 1/q) = (x, y) is allowed."""
        return self.B + self.C * y - self.A * x

    def allows(self, x, y, tol=0) -> bool:
        return self.slack(x, y) >= -tol

    def dual(self) -> "NecessaryLine":
        """Reflection across 1/q = 1 - 1/p."""
        label = self.label[:-5] if self.label.endswith("-dual") else self.label + "-dual"
        return NecessaryLine(self.C, self.B + self.C - self.A, self.A, label)

    def as_lower_bound(self) -> tuple[Fraction, Fraction]:
        """(slope, intercept) of 1/q >= slope/p + intercept."""
        return self.A / self.C, -self.B / self.C

    def same_halfplane(self, other) -> bool:
        return self.as_lower_bound() == other.as_lower_bound()


def _edge_exponents(a, b) -> tuple[Fraction, Fraction]:
    (M1, N1), (M2, N2) = sorted([a, b])
    den = M2 * N1 - M1 * N2
    if den == 0:
        raise PresetUnavailable("zero denominator in the edge exponents")
    return Fraction(N1 - N2, den), Fraction(M2 - M1, den)


def knapp_box_family(data: NewtonData, label: str, k: int | None = None) -> BoxSpec:
    """BoxSpec for a preset.  ``k`` picks the diagonal edge (l1) or chain pair (lk)."""
    if label == FULL_BOX:
        return BoxSpec(FULL_BOX, (Fraction(1), Fraction(1)), (Fraction(0), Fraction(0)))
    if label == L1:
        edges = sorted(diagonal_edges(data.hull), key=lambda e: e.start[0])
        if not edges:
            raise PresetUnavailable("no bounded edge meets the diagonal")
        edge = edges[(k or 1) - 1]
        e1, e2 = _edge_exponents(edge.start, edge.end)
        return BoxSpec(L1, (e1, e2), (e1, e2))
    if label == L2:
        if data.M is None:
            raise PresetUnavailable("P has no term with n > 0")
        if data.M == 0:
            raise PresetUnavailable("M = 0 makes the l2 exponents undefined")
        M = Fraction(data.M)
        e1 = 1 - (data.ms - 1) / M
        if e1 < 0:
            raise PresetUnavailable("l2 width exponent is negative")
        return BoxSpec(L2, (e1, Fraction(0)), (1 / M, Fraction(0)))
    if label == LK:
        pairs = lk_pairs(data)
        if not pairs:
            raise PresetUnavailable("no finite pair of consecutive chain points")
        idx = k if k is not None else pairs[0]
        if idx not in pairs:
            raise PresetUnavailable(f"chain pair k={idx} is not finite")
        a, b = data.chain[idx - 1], data.chain[idx]
        A, B = _edge_exponents(a, b)
        e1 = 1 - (data.ms - 1) * A
        if e1 < 0:
            raise PresetUnavailable("lk width exponent is negative")
        return BoxSpec(f"l_k(k={idx})", (e1, B), (A, B))
    raise ValueError(f"unknown preset {label!r}")


def lk_pairs(data: NewtonData) -> list[int]:
    """1-based k with (M_k, N_k), (M_{k+1}, N_{k+1}) both lattice points."""
    out = []
    for k in range(1, len(data.chain)):
        a, b = data.chain[k - 1], data.chain[k]
        if INF not in a and INF not in b and a[0] < b[0]:
            out.append(k)
    return out


def l1_closed_form(a, b) -> NecessaryLine:
    """1/q >= 1/p - (N1-N2+M2-M1) / (M2 N1 - M1 N2 + N1-N2+M2-M1)."""
    (M1, N1), (M2, N2) = sorted([a, b])
    num = N1 - N2 + M2 - M1
    frac = Fraction(num, M2 * N1 - M1 * N2 + num)
    return NecessaryLine(Fraction(1), frac, Fraction(1), "l1-closed")


def lk_anchor(delta_value, N) -> tuple[Fraction, Fraction]:
    d = Fraction(delta_value)
    return ((N + 1) * d / (N * (d + 1)), ((N + 1) * d - N) / (N * (d + 1)))


def l2_point(delta_value) -> tuple[Fraction, Fraction]:
    """(1/p, 1/q) image of alpha(1/2) = 1/delta."""
    inv = 1 / Fraction(delta_value)
    return ((HALF + inv) / (1 + inv), HALF / (1 + inv))



@dataclass
class RegionEntry:
    label: str
    status: str
    line: NecessaryLine | None = None
    spec: BoxSpec | None = None
    note: str = ""


def necessary_region(data: NewtonData) -> list[RegionEntry]:
    entries = []
    edges = sorted(diagonal_edges(data.hull), key=lambda e: e.start[0])
    if edges:
        for k in range(1, len(edges) + 1):
            spec = knapp_box_family(data, L1, k)
            entries.append(RegionEntry(L1, PASS, spec.line(), spec))
    else:
        entries.append(RegionEntry(L1, SKIPPED, note="no bounded edge meets the diagonal"))
    try:
        spec = knapp_box_family(data, L2)
        entries.append(RegionEntry(L2, PASS, spec.line(), spec))
    except PresetUnavailable as exc:
        entries.append(RegionEntry(L2, SKIPPED, note=str(exc)))
    pairs = lk_pairs(data)
    if not pairs:
        entries.append(RegionEntry(LK, SKIPPED, note="no finite pair of consecutive chain points"))
    for k in pairs:
        try:
            spec = knapp_box_family(data, LK, k)
            entries.append(RegionEntry(spec.label, PASS, spec.line(), spec))
        except PresetUnavailable as exc:
            entries.append(RegionEntry(f"l_k(k={k})", SKIPPED, note=str(exc)))
    spec = knapp_box_family(data, FULL_BOX)
    entries.append(RegionEntry(FULL_BOX, PASS, spec.line(), spec))
    duals = [RegionEntry(e.line.dual().label, PASS, e.line.dual(), e.spec) for e in entries if e.line is not None]
    return entries + duals


# numerics ---------------------------------------------------------------

def _widths(exps, eps):
    return [eps ** float(x) for x in exps]


def _rng(spec: BoxSpec, eps: float, seed: int):
    # seeded per (spec, eps) so sweeps are reproducible in any order
    key = f"{spec.label}|{spec.e}|{spec.d}|{eps!r}|{seed}".encode()
    return np.random.default_rng(int.from_bytes(hashlib.sha256(key).digest()[:8], "little"))


@dataclass
class PhaseReport:
    eps: list
    ratios: list
    slope: float
    verdict: str


def verify_phase_bound(poly, spec: BoxSpec, eps_list, samples: int = 10_000, seed: int = 0) -> PhaseReport:
    """max |P(x) - P(t)| / eps over x in D_eps, t in Q_eps(x)."""
    eps_list = [float(e) for e in eps_list]
    if any(e <= 0 for e in eps_list) or eps_list != sorted(eps_list, reverse=True):
        raise ValueError("eps list must be positive and decreasing")
    ratios = []
    for eps in eps_list:
        rng = _rng(spec, eps, seed)
        dw = _widths(spec.d, eps)
        qw = _widths(spec.e, eps)
        if min(qw) <= 0:
            raise ValueError("empty Q_eps(x)")
        x1 = rng.uniform(-dw[0], dw[0], samples)
        x2 = rng.uniform(-dw[1], dw[1], samples)
        t1 = x1 + rng.uniform(-qw[0], qw[0], samples)
        t2 = x2 + rng.uniform(-qw[1], qw[1], samples)
        diff = np.abs(poly.evaluate_numpy(x1, x2) - poly.evaluate_numpy(t1, t2))
        ratios.append(float(diff.max()) / eps)
    slope = float(np.polyfit(np.log(eps_list), np.log(ratios), 1)[0])
    return PhaseReport(eps_list, ratios, slope, PASS if slope >= -0.05 else FAIL)


def mean_average(poly, spec: BoxSpec, eps: float, points: int = 200, grid: int = 64, seed: int = 0) -> float:
    """Mean over x in D_eps of |Q_eps(x)|, by grid counting."""
    rng = _rng(spec, eps, seed + 1)
    dw = _widths(spec.d, eps)
    qw = _widths(spec.e, eps)
    x1 = rng.uniform(-dw[0], dw[0], points)
    x2 = rng.uniform(-dw[1], dw[1], points)
    x3 = poly.evaluate_numpy(x1, x2) + rng.uniform(-eps, eps, points)
    s = (np.arange(grid) + 0.5) / grid * 2 - 1
    S1, S2 = np.meshgrid(s, s, indexing="ij")
    area = 4 * qw[0] * qw[1]
    total = 0.0
    for a, b, c in zip(x1, x2, x3):
        vals = poly.evaluate_numpy(a + qw[0] * S1, b + qw[1] * S2)
        total += area * float(np.mean(np.abs(c - vals) < eps))
    return total / points


@dataclass
class KnappFitReport:
    spec: BoxSpec
    line: NecessaryLine
    phase: PhaseReport
    rows: list
    fitted_exponent: float
    analytic_exponent: Fraction
    residual: float
    verdict: str
    notes: list = field(default_factory=list)


def scaling_fit(poly, spec: BoxSpec, eps_list, seed: int = 0, tol: float = 0.05, **kw) -> KnappFitReport:
    phase = verify_phase_bound(poly, spec, eps_list, seed=seed)
    line = spec.line()
    notes = []
    if phase.verdict != PASS:
        notes.append("phase bound grows; the box family is not adapted to P")
    means = [mean_average(poly, spec, float(e), seed=seed, **kw) for e in eps_list]
    logs_e = np.log([float(e) for e in eps_list])
    logs_m = np.log(means)
    coef = np.polyfit(logs_e, logs_m, 1)
    resid = float(np.sqrt(np.mean((np.polyval(coef, logs_e) - logs_m) ** 2)))
    fitted = float(coef[0])
    analytic = line.B
    rows = []
    for e, r, m in zip(eps_list, phase.ratios, means):
        rows.append({
            "eps": float(e),
            "ratio_phase": r,
            "lhs_exponent": math.log(m) / math.log(float(e)),
            "rhs_exponent": float(analytic),
            "fit_residual": resid,
        })
    ok = phase.verdict == PASS and abs(fitted - float(analytic)) <= tol
    return KnappFitReport(spec, line, phase, rows, fitted, analytic, resid, PASS if ok else FAIL, notes)

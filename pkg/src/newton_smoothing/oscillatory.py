"""Numerical oracles for dyadic pieces of the averaging operator's multiplier.

The multiplier piece for the dyadic cell (j1, j2) is

    m(xi) = integral of exp(i * Phi(t)) * eta(t1) * eta(t2) dt,
    Phi(t) = 2^-j1 t1 xi1 + 2^-j2 t2 xi2 + xi3 * P(2^-j1 t1, 2^-j2 t2),

computed by Gauss-Legendre quadrature on the support of the cutoff.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from .geometry import GeometryError, delta_v
from .polynomial import BivariatePolynomial, hessian_det, partial_derivative, pure_exponents

MAX_NODES = 4096
MIN_NODES = 64
REL_TOL = 1e-6
ETA_SUPPORT = ((-1.0, -0.25), (0.25, 1.0))
PSI0_SUPPORT = ((-1.0, 1.0),)

PASS = "PASS"
FAIL = "FAIL"
VACUOUS = "VACUOUS"


class QuadratureError(RuntimeError):
    pass


class NoUniqueDominant(GeometryError):
    pass


# cutoffs ---------------------------------------------------------------

def _flat(s):
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    pos = s > 0
    out[pos] = np.exp(-1.0 / s[pos])
    return out


def psi0(t):
    """Smooth, equal to 1 for |t| <= 1/2 and 0 for |t| >= 1."""
    a = np.abs(np.asarray(t, dtype=float))
    up, down = _flat(1.0 - a), _flat(a - 0.5)
    return up / (up + down)


def eta(t):
    """psi0(t) - psi0(2t); supported in 1/4 <= |t| <= 1."""
    t = np.asarray(t, dtype=float)
    return psi0(t) - psi0(2.0 * t)


@lru_cache(maxsize=64)
def _gauss(n: int):
    x, w = roots_legendre(n)
    return x, w


def _nodes(lo, hi, n):
    x, w = _gauss(n)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


# cells and phases --------------------------------------------------------

@dataclass(frozen=True)
class DyadicCell:
    j1: int
    j2: int

    def __post_init__(self):
        if self.j1 < 0 or self.j2 < 0:
            raise ValueError("dyadic indices must be nonnegative")

    @property
    def box(self):
        """|t1|, |t2| ranges of the cell before rescaling."""
        return ((2.0 ** (-self.j1 - 1), 2.0 ** -self.j1), (2.0 ** (-self.j2 - 1), 2.0 ** -self.j2))

    @classmethod
    def along(cls, v, i, w=None, l=0):
        j1 = v[0] * i + (w[0] * l if w else 0)
        j2 = v[1] * i + (w[1] * l if w else 0)
        return cls(j1, j2)


def _term_arrays(poly: BivariatePolynomial):
    terms = [(m, n, float(c)) for (m, n), c in poly.terms.items()]
    return terms


def _phase(terms, cell, xi, t1, t2):
    s1, s2 = 2.0 ** -cell.j1, 2.0 ** -cell.j2
    x1, x2 = s1 * t1, s2 * t2
    total = xi[0] * x1 + xi[1] * x2
    acc = 0.0
    for m, n, c in terms:
        acc = acc + c * x1 ** m * x2 ** n
    return total + xi[2] * acc


def _phase_slope(terms, cell, xi, t, var, other):
    """d/dt_var of Phi along a line where the other variable equals ``other``."""
    s = (2.0 ** -cell.j1, 2.0 ** -cell.j2)
    x = [None, None]
    x[var] = s[var] * t
    x[1 - var] = s[1 - var] * other
    out = xi[var] * s[var] * np.ones_like(t)
    for m, n, c in terms:
        e = (m, n)
        if e[var] == 0:
            continue
        d = c * e[var] * x[var] ** (e[var] - 1) * x[1 - var] ** e[1 - var]
        out = out + xi[2] * s[var] * d
    return out


def node_count(variation: float, cap: int = MAX_NODES) -> int:
    n = max(MIN_NODES, 8 + 2 * math.ceil(variation / math.pi))
    if n > cap:
        raise QuadratureError(f"needs {n} nodes per axis, above the cap {cap}")
    return n


def _variation(terms, cell, xi, var, interval, others):
    t = np.linspace(interval[0], interval[1], 2001)
    worst = 0.0
    for o in others:
        slope = np.abs(_phase_slope(terms, cell, xi, t, var, o))
        worst = max(worst, float(np.trapezoid(slope, t)))
    return worst


def _separable(poly: BivariatePolynomial) -> bool:
    return all(m == 0 or n == 0 for m, n in poly.terms)


@dataclass
class QuadratureResult:
    value: complex
    nodes: tuple
    rel_change: float
    pieces: dict = field(default_factory=dict)  # sign rectangle -> value


def _axis_integral(terms, cell, xi, var, interval, weight, n):
    t, w = _nodes(interval[0], interval[1], n)
    t1, t2 = (t, 0.0) if var == 0 else (0.0, t)
    ph = _phase(terms, cell, xi, t1, t2)
    return complex(np.sum(w * weight(t) * np.exp(1j * ph)))


def oscillatory_integral(
    poly: BivariatePolynomial,
    cell: DyadicCell,
    xi,
    order: int | None = None,
    cutoff: str = "eta",
    cap: int = MAX_NODES,
    check: bool = True,
) -> QuadratureResult:
    """Multiplier piece m_{j1,j2}(xi) with an order-doubling accuracy estimate.

    ``order`` fixes the nodes per interval and axis; by default it is chosen
    from the total variation of the phase.  ``cutoff`` is "eta" (the dyadic
    annulus bump) or "psi0" (the full bump around the origin).
    """
    xi = tuple(float(x) for x in xi)
    if len(xi) != 3 or not all(math.isfinite(x) for x in xi):
        raise ValueError("xi must be three finite numbers")
    if cutoff == "eta":
        weight, support = eta, ETA_SUPPORT
    elif cutoff == "psi0":
        weight, support = psi0, PSI0_SUPPORT
    else:
        raise ValueError(f"unknown cutoff {cutoff!r}")
    terms = _term_arrays(poly)
    samples = np.linspace(-1.0, 1.0, 9)

    def orders(var):
        if order is not None:
            if order > cap:
                raise QuadratureError(f"order {order} above the cap {cap}")
            return [order] * len(support)
        return [node_count(_variation(terms, cell, xi, var, iv, samples), cap) for iv in support]

    n1, n2 = orders(0), orders(1)

    def evaluate(scale):
        pieces = {}
        if _separable(poly):
            t1_terms = [t for t in terms if t[1] == 0]
            t2_terms = [t for t in terms if t[1] != 0]
            xa = (xi[0], 0.0, xi[2])
            xb = (0.0, xi[1], xi[2])
            a = [_axis_integral(t1_terms, cell, xa, 0, iv, weight, k * scale) for iv, k in zip(support, n1)]
            b = [_axis_integral(t2_terms, cell, xb, 1, iv, weight, k * scale) for iv, k in zip(support, n2)]
            for p, ia in enumerate(support):
                for q, ib in enumerate(support):
                    pieces[(ia[0] > 0, ib[0] > 0)] = a[p] * b[q]
        else:
            for ia, k1 in zip(support, n1):
                t1, w1 = _nodes(ia[0], ia[1], k1 * scale)
                for ib, k2 in zip(support, n2):
                    t2, w2 = _nodes(ib[0], ib[1], k2 * scale)
                    T1, T2 = np.meshgrid(t1, t2, indexing="ij")
                    ph = _phase(terms, cell, xi, T1, T2)
                    wt = np.outer(w1 * weight(t1), w2 * weight(t2))
                    pieces[(ia[0] > 0, ib[0] > 0)] = complex(np.sum(wt * np.exp(1j * ph)))
        # fixed summation order for reproducible sums
        total = sum((pieces[k] for k in sorted(pieces)), 0j)
        return total, pieces

    value, pieces = evaluate(1)
    rel = 0.0
    if check:
        finer, _ = evaluate(2)
        rel = abs(finer - value) / max(abs(finer), 1e-300)
        if rel > REL_TOL:
            raise QuadratureError(f"order doubling changed |m| by {rel:.2e} (relative)")
    if abs(value) > trivial_bound(cutoff) * (1 + 1e-9):
        raise QuadratureError("quadrature exceeded the trivial bound")
    return QuadratureResult(value, (tuple(n1), tuple(n2)), rel, pieces)


@lru_cache(maxsize=4)
def trivial_bound(cutoff: str = "eta") -> float:
    """Integral of the (nonnegative) product cutoff."""
    weight, support = (eta, ETA_SUPPORT) if cutoff == "eta" else (psi0, PSI0_SUPPORT)
    one = 0.0
    for lo, hi in support:
        t, w = _nodes(lo, hi, 512)
        one += float(np.sum(w * weight(t)))
    return one * one


def symmetrized(poly, cell, xi, **kw) -> complex:
    """(m(xi) + m(-xi)) / 2, the part of m even in xi."""
    plus = oscillatory_integral(poly, cell, xi, **kw).value
    minus = oscillatory_integral(poly, cell, tuple(-x for x in xi), **kw).value
    return (plus + minus) / 2


def stationary_frequencies(poly: BivariatePolynomial, cell: DyadicCell, xi3: float, at=(0.5, 0.5)):
    """xi1, xi2 that put a critical point of Phi at t = ``at``."""
    x = (2.0 ** -cell.j1 * at[0], 2.0 ** -cell.j2 * at[1])
    d1 = partial_derivative(poly, 1, 1).evaluate(*x)
    d2 = partial_derivative(poly, 2, 1).evaluate(*x)
    return (-xi3 * float(d1), -xi3 * float(d2), float(xi3))


# dominant monomial -------------------------------------------------------

@dataclass
class DominantReport:
    monomial: tuple
    coefficient: Fraction
    delta_values: dict
    factors: dict  # i -> (min ratio, max ratio)
    i0: int | None

    @property
    def factor(self):
        return {i: hi for i, (lo, hi) in self.factors.items()}


def _dominant(poly, v):
    values = {mono: delta_v(v, mono) for mono in poly}
    best = min(values.values())
    winners = [k for k, d in values.items() if d == best]
    if len(winners) > 1:
        raise NoUniqueDominant(f"tie in delta_v for v={v}: {sorted(winners)} (edge direction, no unique dominant)")
    return winners[0], values


def comparability(poly: BivariatePolynomial, v, i: int, grid: int = 32) -> tuple[float, float]:
    """min and max of |P(t)| / |a t^dominant| over the dyadic cell along v."""
    (m0, n0), _ = _dominant(poly, v)
    a0 = poly.coefficient(m0, n0)
    cell = DyadicCell.along(v, i)
    (l1, h1), (l2, h2) = cell.box
    t1 = np.linspace(l1, h1, grid)
    t2 = np.linspace(l2, h2, grid)
    T1, T2 = np.meshgrid(t1, t2, indexing="ij")
    ratio = np.zeros_like(T1)
    for (m, n), c in poly.terms.items():
        # exponents relative to the dominant term keep magnitudes near 1
        ratio = ratio + float(c / a0) * T1 ** (m - m0) * T2 ** (n - n0)
    ratio = np.abs(ratio)
    return float(ratio.min()), float(ratio.max())


def dominant_monomial(poly: BivariatePolynomial, v, i_values=range(0, 17), grid: int = 32) -> DominantReport:
    mono, values = _dominant(poly, v)
    factors = {i: comparability(poly, v, i, grid) for i in i_values}
    ok = [0.5 <= lo and hi <= 2.0 for lo, hi in factors.values()]
    i0 = None
    for idx, i in enumerate(factors):
        if all(ok[idx:]):
            i0 = i
            break
    return DominantReport(mono, poly.coefficient(*mono), values, factors, i0)


# decay sweeps ------------------------------------------------------------

@dataclass
class DecayFitReport:
    v: tuple
    w: tuple | None
    indices: list
    xi3_grid: dict  # (i, l) -> list of xi3
    rows: list
    slopes: dict
    residuals: dict
    predicted_slope: float
    constant: float | None
    hessian_ratio: tuple | None
    verdict: str
    notes: list = field(default_factory=list)

    @property
    def fitted_slope(self) -> float | None:
        return max(self.slopes.values()) if self.slopes else None


def _exponents(poly: BivariatePolynomial, cell: DyadicCell):
    """log2 sizes of t1^ms and of the dominant P1 term on the cell."""
    ms, _ = pure_exponents(poly)
    p1 = [mono for mono in poly if mono[1] > 0]
    if ms == math.inf or not p1:
        raise GeometryError("decay prediction needs a pure t1 power and a term with n > 0")
    e1 = cell.j1 * ms
    e2 = min(cell.j1 * m + cell.j2 * n for m, n in p1)
    return e1, e2


def predicted_bound(poly, cell, xi3) -> tuple[float, float]:
    """(bound, threshold): the O(.) bound on |m| and the xi3 where decay starts."""
    e1, e2 = _exponents(poly, cell)
    if e1 < e2:
        return 2.0 ** ((e1 + e2) / 2) / xi3, 2.0 ** e2
    return 2.0 ** e2 / xi3, 2.0 ** e2


def mixed_hessian_ratio(poly, cell, grid: int = 16) -> tuple[float, float]:
    """Range of det Hess_t P(2^-j t) / 2^-(e1+e2), normalised at the cell centre."""
    det = hessian_det(poly)
    e1, e2 = _exponents(poly, cell)
    s1, s2 = 2.0 ** -cell.j1, 2.0 ** -cell.j2
    t = np.linspace(0.5, 1.0, grid)
    T1, T2 = np.meshgrid(t, t, indexing="ij")
    vals = det.evaluate_numpy(s1 * T1, s2 * T2) * (s1 * s2) ** 2 * 2.0 ** (e1 + e2)
    centre = float(det.evaluate(s1 * 0.75, s2 * 0.75)) * (s1 * s2) ** 2 * 2.0 ** (e1 + e2)
    if centre == 0:
        raise GeometryError("mixed Hessian vanishes at the cell centre")
    r = vals / centre
    return float(r.min()), float(r.max())


def _fit(x, y):
    A = np.vstack([x, np.ones_like(x)]).T
    coef, res, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = float(np.sqrt(np.mean((A @ coef - y) ** 2)))
    return float(coef[0]), resid


def decay_fit(
    poly: BivariatePolynomial,
    v,
    indices,
    xi3_exponents,
    w=None,
    order: int | None = None,
    cap: int = MAX_NODES,
    slope_tol: float = 0.1,
    slack: float = 2.0,
    workers: int = 1,
) -> DecayFitReport:
    """Sweep |m| over dyadic xi3 and compare with the predicted decay.

    ``indices`` lists (i, l) pairs (l is ignored without ``w``).
    ``xi3_exponents`` maps an index pair to the list of log2(xi3) values, or
    is a single callable of (i, l).  Frequencies xi1, xi2 are placed so the
    phase is stationary at the bump's peak.  Results do not depend on
    ``workers``; evaluations are collected in sweep order.
    """
    rows = []
    grid = {}
    slopes, residuals = {}, {}
    constant = None
    hess = None
    notes = []
    for i, l in indices:
        cell = DyadicCell.along(v, i, w, l)
        exps = xi3_exponents(i, l) if callable(xi3_exponents) else xi3_exponents[(i, l)]
        xs = [2.0 ** e for e in exps]
        grid[(i, l)] = xs
        _, threshold = predicted_bound(poly, cell, 1.0)
        live = [x for x in xs if x >= threshold]
        if not live:
            notes.append(f"index {(i, l)}: every xi3 below {threshold:g}, no decay regime")
            continue
        if len(live) < 4:
            raise ValueError(f"index {(i, l)}: fewer than 4 sweep points in the decay regime")
        lo, hi = mixed_hessian_ratio(poly, cell)
        hess = (lo, hi) if hess is None else (min(hess[0], lo), max(hess[1], hi))
        logs_x, logs_m = [], []

        def one(x, cell=cell):
            freq = stationary_frequencies(poly, cell, x)
            return oscillatory_integral(poly, cell, freq, order=order, cap=cap)

        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            results = list(pool.map(one, live))
        for x, res in zip(live, results):
            bound, _ = predicted_bound(poly, cell, x)
            mag = abs(res.value)
            rows.append({"i": i, "l": l, "xi3": x, "abs_m": mag, "predicted_bound": bound, "ratio": mag / bound})
            logs_x.append(math.log2(x))
            logs_m.append(math.log2(mag))
        slopes[(i, l)], residuals[(i, l)] = _fit(np.array(logs_x), np.array(logs_m))
        if constant is None:
            constant = slack * max(r["ratio"] for r in rows)
    if not rows:
        return DecayFitReport(tuple(v), w, list(indices), grid, rows, {}, {}, -1.0, None, None, VACUOUS, notes)
    predicted = -1.0
    ok_slope = all(s <= predicted + slope_tol for s in slopes.values())
    ok_bound = all(r["ratio"] <= constant for r in rows)
    ok_hess = hess is not None and hess[0] >= 0.25 and hess[1] <= 4.0
    if not ok_hess:
        notes.append(f"mixed Hessian ratio {hess} outside [1/4, 4]")
    verdict = PASS if ok_slope and ok_bound else FAIL
    return DecayFitReport(tuple(v), w, list(indices), grid, rows, slopes, residuals, predicted, constant, hess, verdict, notes)

"""Piecewise-linear regularity exponents alpha(1/p) on 0 <= 1/p <= 1/2."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .geometry import (
    INF,
    NewtonData,
    delta_ray,
    delta_v,
    junction,
)

HALF = Fraction(1, 2)


class ProfileError(ValueError):
    pass


class ChainInconsistency(ProfileError):
    def __init__(self, k: int, message: str):
        self.k = k
        super().__init__(f"chain link k={k}: {message}")


class HypothesisError(ProfileError):
    pass


@dataclass(frozen=True)
class LinePiece:
    x_lo: Fraction
    x_hi: Fraction
    slope: Fraction
    intercept: Fraction
    label: str
    degenerate: bool = False

    def __call__(self, x) -> Fraction:
        return self.slope * x + self.intercept

    def contains(self, x) -> bool:
        return self.x_lo <= x <= self.x_hi


@dataclass
class RegularityProfile:
    pieces: list  # ordered by x
    delta: Fraction | None = None
    convention: str | None = None
    bound: str = "strict"
    notes: list = field(default_factory=list)

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        if x < 0 or x > HALF:
            raise ValueError("profile is defined for 0 <= 1/p <= 1/2")
        for piece in self.pieces:
            if not piece.degenerate and piece.contains(x):
                return piece(x)
        for piece in self.pieces:
            if piece.contains(x):
                return piece(x)
        raise ProfileError(f"no piece covers x={x}")

    __call__ = evaluate

    def breakpoints(self) -> list[Fraction]:
        pts = {Fraction(0), HALF}
        for piece in self.pieces:
            pts.add(piece.x_lo)
            pts.add(piece.x_hi)
        return sorted(pts)

    def polyline(self) -> list[tuple[Fraction, Fraction]]:
        return [(x, self.evaluate(x)) for x in self.breakpoints()]

    def same_shape(self, other: "RegularityProfile") -> bool:
        return self.polyline() == other.polyline()


def l_line(v, ms, point) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Slope, intercept, delta_1, delta_2 of l^v for the pair t1^ms, t1^M t2^N."""
    d1 = delta_v(v, (ms, 0))
    d2 = delta_v(v, point)
    if d2 == INF or d2 == 0:
        raise ProfileError(f"l^v undefined for v={v}, point={point}")
    return 1 - d1 / d2, 1 / d2, d1, d2


def _two_x(hi) -> LinePiece:
    return LinePiece(Fraction(0), hi, Fraction(2), Fraction(0), "2/p", hi == 0)


def _const(lo, value, label="1/delta") -> LinePiece:
    return LinePiece(lo, HALF, Fraction(0), value, label, lo == HALF)


def sharp_profile(data: NewtonData) -> RegularityProfile:
    delta = data.delta
    if data.R_empty:
        knee = min(1 / (2 * delta), HALF)
        return RegularityProfile([_two_x(knee), _const(knee, 1 / delta)], delta, data.convention)

    n = data.chain_length
    chain = data.chain
    deltas = [data.ray_deltas[chain[k]] for k in range(n)]
    for k in range(1, n):
        if not deltas[k - 1] < deltas[k]:
            raise ChainInconsistency(k + 1, "ray distances are not strictly increasing")
    J = [junction(deltas[k], chain[k][1]) for k in range(n)]

    top = min(J[0], HALF)
    pieces = [_const(top, 1 / delta)]
    upper = top
    for k in range(1, n + 1):
        v = data.normals[k - 1]
        slope, intercept, d1, d2 = l_line(v, data.ms, chain[k - 1])
        lower = J[k] if k < n else 1 / (d1 + d2)
        if lower > upper:
            raise ChainInconsistency(k, f"interval [{lower}, {upper}] is reversed")
        pieces.append(LinePiece(lower, upper, slope, intercept, f"l^v{k}", lower == upper))
        upper = lower
    pieces.append(_two_x(upper))
    pieces.reverse()
    return RegularityProfile(pieces, delta, data.convention)


def _drop_empty(pieces) -> list[LinePiece]:
    return [p for p in pieces if p.x_lo < p.x_hi]


def ray_profile(support: Sequence, v, equal_case: bool = False) -> RegularityProfile:
    """Profile for a two-term polynomial restricted to the dyadic ray along v.

    ``support`` is [(m, 0), (M, N)].  Zero-length pieces are dropped: the
    ranges here are open intervals.
    """
    (m, zero), (M, N) = support
    if zero != 0:
        raise HypothesisError("first support point must be a pure t1 power")
    d1 = delta_v(v, (m, 0))
    d2 = delta_v(v, (M, N))
    _require_positive(d1, d2)
    if d1 < d2:
        top = min(1 / d1, HALF)
        knee = 1 / (d1 + d2)
        pieces = [
            _two_x(knee),
            LinePiece(knee, top, 1 - d1 / d2, 1 / d2, "l^v"),
            _const(top, 1 / d1, "1/delta_v1"),
        ]
    elif d1 > d2 or equal_case:
        knee = min(1 / (2 * d2), HALF)
        pieces = [_two_x(knee), _const(knee, 1 / d2, "1/delta_v2")]
    else:
        raise HypothesisError("delta_v(t1^m) equals delta_v(t1^M t2^N); pass equal_case=True")
    return RegularityProfile(_drop_empty(pieces))


def admissibility_ratio(dv1, dv2, dw1, dw2) -> Fraction:
    den = dv1 * dw2 - dv2 * dw1
    if den == 0:
        raise ProfileError("admissibility ratio undefined (zero denominator)")
    return (dw2 - dv2) / den


def _require_positive(*values):
    if any(d == 0 for d in values):
        raise HypothesisError("a weight vanishes on one of the two monomials")


def _slope_greater(w, v) -> bool:
    # slope(w) = w2/w1 > v2/v1, allowing vertical vectors
    return w[1] * v[0] > v[1] * w[0]


def cone_profile(support: Sequence, v, w) -> RegularityProfile:
    """Profile for a two-term polynomial on the dyadic cone between v and w.

    Admissibility of (M, N) is decided by the ratio test, which puts the
    junction of l^w and l^v at 1/delta^(M,N) - 1/N.
    """
    (m, zero), (M, N) = support
    if not _slope_greater(w, v):
        raise HypothesisError("slope of w must exceed slope of v")
    dv1, dv2 = delta_v(v, (m, 0)), delta_v(v, (M, N))
    dw1, dw2 = delta_v(w, (m, 0)), delta_v(w, (M, N))
    _require_positive(dv1, dv2, dw1, dw2)
    increasing = (dv1 < dv2 and dw1 < dw2) or (dv1 == dv2 and dw1 < dw2)
    decreasing = (dv1 > dv2 and dw1 > dw2) or (dv1 > dv2 and dw1 == dw2)
    if decreasing:
        value = min(1 / dw2, 1 / dv2)
        knee = min(1 / (2 * dw2), 1 / (2 * dv2), HALF)
        return RegularityProfile(_drop_empty([_two_x(knee), _const(knee, value, "min(1/delta_w2,1/delta_v2)")]))
    if not increasing:
        raise HypothesisError(
            f"sign pattern (dv1 {dv1} vs dv2 {dv2}, dw1 {dw1} vs dw2 {dw2}) is not covered"
        )
    ratio = admissibility_ratio(dv1, dv2, dw1, dw2)
    member = 1 / (dw1 + dw2) <= ratio
    if not member:
        prof = ray_profile(support, v, equal_case=(dv1 == dv2))
        prof.notes.append("(M,N) not admissible")
        return prof
    top = min(1 / dv1, HALF)
    knee = 1 / (dw1 + dw2)
    pieces = [
        _two_x(knee),
        LinePiece(knee, ratio, 1 - dw1 / dw2, 1 / dw2, "l^w"),
        LinePiece(ratio, top, 1 - dv1 / dv2, 1 / dv2, "l^v"),
        _const(top, 1 / dv1, "1/delta_v1"),
    ]
    prof = RegularityProfile(_drop_empty(pieces))
    prof.notes.append("(M,N) admissible")
    return prof


def is_admissible(m: int, M: int, N: int) -> bool:
    """Literal admissibility of (M, N) for the two-term polynomial t1^m + t1^M t2^N."""
    try:
        d = delta_ray(m, (M, N))
    except ValueError:
        return False
    return 2 * d <= N


def anchor_identities(data: NewtonData, k: int) -> list[tuple[Fraction, Fraction, Fraction]]:
    """(x, l^v_k(x), expected) at the three points every l^v_k passes through."""
    v = data.normals[k - 1]
    point = data.chain[k - 1]
    slope, intercept, d1, d2 = l_line(v, data.ms, point)
    dray = data.ray_deltas[point]
    out = [(junction(dray, point[1]), 1 / dray), (1 / (d1 + d2), 2 / (d1 + d2))]
    if d1 != 0:
        out.append((1 / d1, 1 / d1))
    return [(x, slope * x + intercept, y) for x, y in out]


# invariants ------------------------------------------------------------

def profile_violations(profile: RegularityProfile, delta: Fraction | None = None) -> list[str]:
    """Continuity, concavity and endpoint checks; empty list when all hold."""
    problems = []
    pieces = profile.pieces
    if pieces[0].x_lo != 0 or pieces[-1].x_hi != HALF:
        problems.append("pieces do not span [0, 1/2]")
    for a, b in zip(pieces, pieces[1:]):
        if a.x_hi != b.x_lo:
            problems.append(f"gap between {a.label} and {b.label}")
        elif a(a.x_hi) != b(b.x_lo):
            problems.append(f"jump at x={a.x_hi}: {a(a.x_hi)} vs {b(b.x_lo)}")
    slopes = [p.slope for p in pieces]
    if any(s2 > s1 for s1, s2 in zip(slopes, slopes[1:])):
        problems.append(f"slopes not nonincreasing: {slopes}")
    if slopes and (slopes[0] > 2 or slopes[-1] < 0):
        problems.append("slopes outside [0, 2]")
    if delta is not None and profile.evaluate(HALF) != 1 / delta:
        problems.append(f"alpha(1/2) = {profile.evaluate(HALF)} differs from 1/delta = {1 / delta}")
    return problems

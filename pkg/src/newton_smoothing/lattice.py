"""Decomposition of the lattice quadrant along a fan of edge normals.

Every (j1, j2) in Z_+^2 is either an integer multiple i*n_k of one of the
normals (a ray point) or, for exactly one pair of consecutive normals,
s + i*n_k + l*n_{k+1} with i, l >= 0 and s in a finite shift set.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

SENTINELS = ((1, 0), (0, 1))


class FanError(ValueError):
    pass


@dataclass(frozen=True)
class RayClass:
    k: int  # index into the normal list
    i: int


@dataclass(frozen=True)
class ConeClass:
    k: int  # cone between normals k and k+1
    shift: tuple[int, int]
    i: int
    l: int


@dataclass
class Decomposition:
    normals: list
    box: int
    assignment: dict = field(default_factory=dict)
    shifts: dict = field(default_factory=dict)  # cone index -> sorted shift list

    def reconstruct(self, point) -> tuple[int, int]:
        cls = self.assignment[point]
        if isinstance(cls, RayClass):
            a, b = self.normals[cls.k]
            return (cls.i * a, cls.i * b)
        (a, b), (c, d) = self.normals[cls.k], self.normals[cls.k + 1]
        s = cls.shift
        return (s[0] + cls.i * a + cls.l * c, s[1] + cls.i * b + cls.l * d)


def _slope_key(v):
    a, b = v
    return Fraction(b, a) if a else None


def prepare_fan(normals: Sequence[tuple[int, int]], add_sentinels: bool = True) -> list[tuple[int, int]]:
    """Validate slope order and (optionally) add (1,0) and (0,1) at the ends."""
    fan = [tuple(v) for v in normals]
    for v in fan:
        if v[0] < 0 or v[1] < 0 or v == (0, 0):
            raise FanError(f"normal {v} must lie in the closed first quadrant")
    if add_sentinels:
        fan = [SENTINELS[0]] + [v for v in fan if v not in SENTINELS] + [SENTINELS[1]]
    for u, v in zip(fan, fan[1:]):
        det = u[0] * v[1] - u[1] * v[0]
        if det == 0:
            raise FanError(f"normals {u} and {v} are parallel")
        if det < 0:
            raise FanError(f"normals not sorted by slope at {u}, {v}")
    return fan


def _floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def classify(point, fan) -> RayClass | ConeClass:
    x, y = point
    if (x, y) == (0, 0):
        return RayClass(0, 0)
    for k, (a, b) in enumerate(fan):
        if a * y - b * x == 0:
            # primitive normals: every lattice point on the ray is a multiple
            i = x // a if a else y // b
            if (i * a, i * b) == (x, y) and i >= 0:
                return RayClass(k, i)
    for k in range(len(fan) - 1):
        (a, b), (c, d) = fan[k], fan[k + 1]
        det = a * d - b * c
        # point = alpha*(a,b) + beta*(c,d)
        alpha = Fraction(x * d - y * c, det)
        beta = Fraction(a * y - b * x, det)
        if alpha > 0 and beta > 0:
            i, l = _floor_frac(alpha), _floor_frac(beta)
            shift = (x - i * a - l * c, y - i * b - l * d)
            return ConeClass(k, shift, i, l)
    raise FanError(f"point {point} not covered by the fan")


def lattice_decomposition(normals: Sequence[tuple[int, int]], box: int, add_sentinels: bool = True) -> Decomposition:
    """Classify every lattice point of [0, box]^2."""
    fan = prepare_fan(normals, add_sentinels)
    if add_sentinels is False and (fan[0] != SENTINELS[0] or fan[-1] != SENTINELS[1]):
        raise FanError("without sentinels the fan must start at (1,0) and end at (0,1)")
    dec = Decomposition(fan, box)
    shifts: dict[int, set] = {}
    for x in range(box + 1):
        for y in range(box + 1):
            cls = classify((x, y), fan)
            dec.assignment[(x, y)] = cls
            if isinstance(cls, ConeClass):
                shifts.setdefault(cls.k, set()).add(cls.shift)
    dec.shifts = {k: sorted(v) for k, v in sorted(shifts.items())}
    return dec


def cone_index(fan, k) -> int:
    """Number of lattice points in the half-open fundamental parallelogram."""
    (a, b), (c, d) = fan[k], fan[k + 1]
    return abs(a * d - b * c)

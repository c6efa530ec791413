"""Exact real-root counting for univariate rational polynomials.

Polynomials are coefficient lists, lowest degree first.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .polynomial import UnivariateSlice

Coeffs = list  # list[Fraction], low -> high


class ZeroSliceError(ValueError):
    """The slice polynomial is identically zero."""


def trim(p: Sequence) -> Coeffs:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def derivative(p: Coeffs) -> Coeffs:
    return trim([k * p[k] for k in range(1, len(p))])


def poly_eval(p: Coeffs, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_divmod(a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs]:
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / lead
        q[shift] = f
        for i, c in enumerate(b):
            r[shift + i] -= f * c
        r = trim(r)
    return trim(q), r


def poly_gcd(a: Coeffs, b: Coeffs) -> Coeffs:
    a, b = trim(a), trim(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a:
        a = [c / a[-1] for c in a]
    return a


def squarefree_part(p: Coeffs) -> Coeffs:
    p = trim(p)
    g = poly_gcd(p, derivative(p))
    if len(g) <= 1:
        return p
    q, r = poly_divmod(p, g)
    assert not r
    return q


def sturm_sequence(p: Coeffs) -> list[Coeffs]:
    p = trim(p)
    seq = [p, derivative(p)]
    while seq[-1]:
        _, r = poly_divmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_at(p: Coeffs, x) -> int:
    if x == math.inf:
        return _sign(p[-1])
    if x == -math.inf:
        return _sign(p[-1]) * (-1 if (len(p) - 1) % 2 else 1)
    return _sign(poly_eval(p, x))


def _variations(seq: list[Coeffs], x) -> int:
    signs = [s for s in (_sign_at(p, x) for p in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(poly, interval=(-math.inf, math.inf)) -> int:
    """Number of distinct real roots in the half-open interval (lo, hi].

    ``poly`` is a UnivariateSlice or a coefficient list.
    """
    coeffs = poly.coeffs if isinstance(poly, UnivariateSlice) else poly
    p = trim(coeffs)
    if not p:
        raise ZeroSliceError("slice polynomial is identically zero")
    if len(p) == 1:
        return 0
    p = squarefree_part(p)
    seq = sturm_sequence(p)
    lo, hi = interval
    return _variations(seq, lo) - _variations(seq, hi)


def count_roots_open(poly, lo, hi) -> int:
    """Distinct real roots in the open interval (lo, hi)."""
    coeffs = poly.coeffs if isinstance(poly, UnivariateSlice) else poly
    p = trim(coeffs)
    n = count_real_roots(p, (lo, hi))
    if hi != math.inf and poly_eval(p, hi) == 0:
        n -= 1
    return n


def cauchy_bound(p: Coeffs) -> Fraction:
    p = trim(p)
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def isolate_root(p: Coeffs, lo, hi, width=Fraction(1, 1024)) -> tuple[Fraction, Fraction]:
    """Shrink an open interval known to contain a root down to ``width``.

    Infinite ends are first replaced by the Cauchy bound.  Returns a closed
    interval [a, b] containing a root (a == b when a bisection point hits it).
    """
    p = trim(p)
    bound = cauchy_bound(p)
    lo = -bound if lo == -math.inf else Fraction(lo)
    hi = bound if hi == math.inf else Fraction(hi)
    if count_roots_open(p, lo, hi) == 0:
        raise ValueError("no root in the given interval")
    while hi - lo > width:
        mid = (lo + hi) / 2
        if poly_eval(p, mid) == 0:
            return mid, mid
        if count_roots_open(p, lo, mid) > 0:
            hi = mid
        else:
            lo = mid
    return lo, hi

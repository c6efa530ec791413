"""Newton polyhedra of bivariate polynomials and the invariants derived from them.

Everything here is exact.  Points are integer pairs (m, n); the formal point
at the top of a vertical ray is written (M, INF) and the formal terminal at
the end of the horizontal ray is (INF, N).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .polynomial import BivariatePolynomial, pure_exponents

INF = math.inf
Point = tuple  # (m, n), entries int or INF

LITERAL = "literal"
EXCLUDE_AXIS = "exclude-axis"
CONVENTIONS = (LITERAL, EXCLUDE_AXIS)


class GeometryError(ValueError):
    pass


class NoDiagonalIntersection(GeometryError):
    pass


class UnsupportedPolynomial(GeometryError):
    """Inputs the analysis does not cover (constant term, no pure t1 power...)."""


def primitive(a: int, b: int) -> tuple[int, int]:
    g = math.gcd(a, b)
    if g == 0:
        raise GeometryError("zero vector has no primitive direction")
    return a // g, b // g


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class Edge:
    """A face of dimension one.

    ``kind`` is "bounded", "vertical" (ray going up from ``start``) or
    "horizontal" (ray going right from ``start``).  ``support`` lists the
    input points lying on the edge, in lex order.
    """

    kind: str
    start: tuple[int, int]
    end: tuple[int, int] | None
    normal: tuple[int, int]
    support: tuple[tuple[int, int], ...]

    @property
    def level(self) -> int:
        """v . p for any point p on the edge."""
        return self.normal[0] * self.start[0] + self.normal[1] * self.start[1]

    @property
    def bounded(self) -> bool:
        return self.kind == "bounded"

    def key(self):
        return (self.kind, self.start, self.end, self.normal)

    def contains(self, p) -> bool:
        m, n = p
        if self.kind == "vertical":
            return m == self.start[0] and n >= self.start[1]
        if self.kind == "horizontal":
            return n == self.start[1] and m >= self.start[0]
        if self.normal[0] * m + self.normal[1] * n != self.level:
            return False
        return self.start[0] <= m <= self.end[0]


@dataclass(frozen=True)
class NewtonPolyhedron:
    vertices: tuple[tuple[int, int], ...]  # decreasing n, increasing m
    edges: tuple[Edge, ...]  # vertical ray, bounded edges top to bottom, horizontal ray
    points: frozenset

    @property
    def bounded_edges(self) -> list[Edge]:
        return [e for e in self.edges if e.bounded]

    @property
    def vertical_ray(self) -> Edge:
        return self.edges[0]

    @property
    def horizontal_ray(self) -> Edge:
        return self.edges[-1]

    def contains(self, p) -> bool:
        return all(e.normal[0] * p[0] + e.normal[1] * p[1] >= e.level for e in self.edges)

    def on_boundary(self, p) -> bool:
        return self.contains(p) and any(e.contains(p) for e in self.edges)

    def edge_polynomial(self, poly: BivariatePolynomial, edge: Edge) -> BivariatePolynomial:
        return poly.restrict(edge.contains)


def build_polyhedron(points: Iterable[tuple[int, int]] | BivariatePolynomial) -> NewtonPolyhedron:
    """Lower-left convex hull of the points, each translated by the first quadrant."""
    pts = sorted({(int(m), int(n)) for m, n in points})
    if not pts:
        raise GeometryError("empty support")
    # Pareto-minimal points in order of increasing m (so strictly decreasing n)
    front = []
    for p in pts:
        if not front or p[1] < front[-1][1]:
            front.append(p)
    hull: list[tuple[int, int]] = []
    for p in front:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)

    def on(edge_kind, start, end, normal):
        e = Edge(edge_kind, start, end, normal, ())
        return tuple(q for q in pts if e.contains(q))

    edges = [Edge("vertical", hull[0], None, (1, 0), on("vertical", hull[0], None, (1, 0)))]
    for a, b in zip(hull, hull[1:]):
        normal = primitive(a[1] - b[1], b[0] - a[0])
        edges.append(Edge("bounded", a, b, normal, on("bounded", a, b, normal)))
    edges.append(Edge("horizontal", hull[-1], None, (0, 1), on("horizontal", hull[-1], None, (0, 1))))
    return NewtonPolyhedron(tuple(hull), tuple(edges), frozenset(pts))


def newton_distance(poly_or_hull) -> Fraction:
    """Smallest t with (t, t) in the polyhedron."""
    hull = poly_or_hull if isinstance(poly_or_hull, NewtonPolyhedron) else build_polyhedron(poly_or_hull)
    return max(Fraction(e.level, e.normal[0] + e.normal[1]) for e in hull.edges)


def delta_v(v: tuple[int, int], mono) -> Fraction:
    """(v1 m + v2 n) / (v1 + v2); understands the formal points."""
    v1, v2 = v
    if v1 < 0 or v2 < 0 or v1 + v2 == 0:
        raise GeometryError(f"weight {v} must be nonnegative and nonzero")
    m, n = mono
    total = 0
    for weight, coord in ((v1, m), (v2, n)):
        if weight == 0:
            continue
        if coord == INF:
            return INF
        total += weight * coord
    return Fraction(total, v1 + v2)


def weighted_distance(poly: BivariatePolynomial, v: tuple[int, int]) -> Fraction:
    """The v-weighted distance of P: min of delta_v over its support."""
    return min(delta_v(v, p) for p in poly)


def derive_P1_P2(poly: BivariatePolynomial) -> tuple[BivariatePolynomial, BivariatePolynomial]:
    """Terms with n > 0, and terms with m > 0."""
    return poly.restrict(lambda k: k[1] > 0), poly.restrict(lambda k: k[0] > 0)


def delta_ray(ms, point) -> Fraction:
    """Where the ray from (ms, 0) through ``point`` meets the diagonal.

    The formal point (M, INF) gives ms.
    """
    m, n = point
    if n == INF:
        return Fraction(ms)
    den = n - m + ms
    if den == 0:
        raise NoDiagonalIntersection(f"ray from ({ms},0) through {point} is parallel to the diagonal")
    if den < 0:
        raise NoDiagonalIntersection(f"ray from ({ms},0) through {point} meets the diagonal behind its origin")
    return Fraction(n * ms, den)


def junction(delta_value, n) -> Fraction:
    """1/delta - 1/N, with 1/INF = 0."""
    return 1 / Fraction(delta_value) - (0 if n == INF else Fraction(1, n))


def _segment_normal(a, b) -> tuple[int, int]:
    if a[1] == INF:
        return (1, 0)
    if b[0] == INF:
        return (0, 1)
    return primitive(a[1] - b[1], b[0] - a[0])


@dataclass
class NewtonData:
    """Geometric invariants of a swap-normalized polynomial."""

    polynomial: BivariatePolynomial
    convention: str
    hull: NewtonPolyhedron
    delta: Fraction
    ms: int
    ns: float | int
    P1: BivariatePolynomial
    P2: BivariatePolynomial
    M: int | None
    candidates: list = field(default_factory=list)
    ray_deltas: dict = field(default_factory=dict)
    dropped: list = field(default_factory=list)
    MsNs: tuple | None = None
    R: list = field(default_factory=list)
    chain: list = field(default_factory=list)
    normals: list = field(default_factory=list)

    @property
    def R_empty(self) -> bool:
        return not self.R

    @property
    def chain_length(self) -> int:
        """n: number of links (M_k, N_k) before the terminal one."""
        return max(len(self.chain) - 1, 0)

    def chain_delta(self, k: int) -> Fraction:
        """delta^{(M_k, N_k)} with 1-based k."""
        return self.ray_deltas[self.chain[k - 1]]


def _in_R(point, dval, Ns, convention) -> bool:
    m, n = point
    if convention == EXCLUDE_AXIS and m == 0:
        return False
    if n == INF:
        return Ns == INF
    return 2 * dval <= n and n <= Ns


def _closeness(point, ms):
    m, n = point
    if n == INF:
        return (1, 0)
    return (0, (m - ms) ** 2 + n ** 2)


def build_newton_data(poly: BivariatePolynomial, convention: str = LITERAL) -> NewtonData:
    """Hull, distances, the set of admissible points and the vertex chain.

    ``poly`` must already be swap-normalized (smallest pure exponent on t1).
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    if poly.is_zero():
        raise UnsupportedPolynomial("zero polynomial")
    if (0, 0) in poly.terms:
        raise UnsupportedPolynomial("constant term present; drop it (it does not affect the operator)")
    ms, ns = pure_exponents(poly)
    if ms == INF:
        raise UnsupportedPolynomial("no pure t1 power after normalization (m_s is infinite)")
    if ns < ms:
        raise UnsupportedPolynomial("polynomial is not swap-normalized")
    hull = build_polyhedron(poly)
    P1, P2 = derive_P1_P2(poly)
    data = NewtonData(poly, convention, hull, newton_distance(hull), ms, ns, P1, P2, None)
    if P1.is_zero():
        return data

    hull1 = build_polyhedron(P1)
    M = min(m for m, n in P1)
    data.M = M
    boundary = [p for p in P1 if hull1.on_boundary(p)]
    candidates = boundary + [(M, INF)]
    data.candidates = candidates
    for c in candidates:
        try:
            data.ray_deltas[c] = delta_ray(ms, c)
        except NoDiagonalIntersection:
            data.dropped.append(c)
    valid = [c for c in candidates if c in data.ray_deltas]
    best = min(valid, key=lambda c: (data.ray_deltas[c], _closeness(c, ms)))
    data.MsNs = best
    Ns = best[1]
    data.R = [c for c in valid if _in_R(c, data.ray_deltas[c], Ns, convention)]
    if not data.R:
        return data

    members = set(data.R)
    chain = [best]
    later = [v for v in hull1.vertices if v[1] < Ns]  # already in decreasing n
    terminal = None
    for vert in later:
        if vert in members:
            chain.append(vert)
        else:
            terminal = vert
            break
    if terminal is None:
        terminal = (INF, chain[-1][1])
    chain.append(terminal)
    data.chain = chain
    data.normals = [_segment_normal(a, b) for a, b in zip(chain, chain[1:])]
    return data


def diagonal_edges(hull: NewtonPolyhedron) -> list[Edge]:
    """Bounded edges containing the point (delta, delta)."""
    d = newton_distance(hull)
    out = []
    for e in hull.bounded_edges:
        if e.normal[0] * d + e.normal[1] * d == e.level and e.start[0] <= d <= e.end[0]:
            out.append(e)
    return out

import random
from fractions import Fraction

import pytest
import sympy

from newton_smoothing.catalog import EXAMPLES, positive_even_family, three_term_family
from newton_smoothing.conditions import check_conditions
from newton_smoothing.geometry import build_polyhedron
from newton_smoothing.polynomial import hessian_det, parse_polynomial, slice_polynomial, swap_normalize


def report(text):
    return check_conditions(swap_normalize(parse_polynomial(text))[0])


@pytest.mark.parametrize("text", three_term_family(10) + positive_even_family(10))
def test_families_pass(text):
    r = report(text)
    assert r.verdict == "PASS", [(c.edge, c.test, c.verdict) for c in r.c21 + r.c22]


def test_degenerate_square_fails_with_a_real_witness():
    r = report(EXAMPLES["square-degenerate"])
    assert r.verdict == "FAIL"
    assert r.witnesses
    checks = [c for c in r.c21 + r.c22 if c.witness is not None]
    for c in checks:
        w = c.witness
        sl = slice_polynomial(c.polynomial, w.fixed_var, w.fixed_value)
        lo, hi = w.interval
        x = sympy.Symbol("x")
        roots = sympy.real_roots(sympy.Poly([sympy.Rational(str(k)) for k in reversed(sl.coeffs)], x))
        assert any(sympy.Rational(str(lo)) <= r <= sympy.Rational(str(hi)) for r in roots)
        assert w.point[2 - w.fixed_var] != 0


def test_square_hessian_root_is_on_the_diagonal():
    r = report(EXAMPLES["square-degenerate"])
    w = next(c.witness for c in r.c21 if c.witness is not None)
    x, y = w.point
    assert abs(abs(x) - abs(y)) < Fraction(1, 1000)


def test_every_bounded_edge_is_checked():
    poly = parse_polynomial(EXAMPLES["even-positive"])
    r = check_conditions(poly)
    bounded = build_polyhedron(poly).bounded_edges
    hess = [c for c in r.c21 if c.edge.startswith("[")]
    assert len({c.edge for c in hess}) == len(bounded)


def test_verdict_is_fail_dominant():
    r = report("t1^2 + t2^4")
    assert r.passed and r.c21_verdict == "PASS"


def test_passing_polynomials_have_nonvanishing_edge_hessians():
    # soundness audit: sample rational points off the axes
    rng = random.Random(7)
    for text in three_term_family(5) + [EXAMPLES["interior-mixed"], EXAMPLES["even-positive"]]:
        poly = swap_normalize(parse_polynomial(text))[0]
        hull = build_polyhedron(poly)
        for edge in hull.bounded_edges:
            h = hessian_det(hull.edge_polynomial(poly, edge))
            for _ in range(300):
                t1 = Fraction(rng.choice([-1, 1]) * rng.randint(1, 40), rng.randint(1, 40))
                t2 = Fraction(rng.choice([-1, 1]) * rng.randint(1, 40), rng.randint(1, 40))
                assert h.evaluate(t1, t2) != 0

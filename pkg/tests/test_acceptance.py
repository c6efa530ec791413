"""One test per acceptance criterion; each prints a PASS/FAIL line.

The verdicts are also collected by conftest.py and repeated in the
terminal summary so they are visible without ``-s``.
"""
import json
import math
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction as F

import oracles
from conftest import ACCEPTANCE
from newton_smoothing import serialize as ser
from newton_smoothing.catalog import EXAMPLES, P_A, P_B, positive_even_family, three_term_family
from newton_smoothing.conditions import check_conditions
from newton_smoothing.geometry import EXCLUDE_AXIS, INF, LITERAL, build_newton_data, build_polyhedron, delta_v
from newton_smoothing.knapp import FULL_BOX, L1, knapp_box_family, l1_closed_form, necessary_region, scaling_fit, verify_phase_bound
from newton_smoothing.lattice import lattice_decomposition
from newton_smoothing.oscillatory import decay_fit, dominant_monomial
from newton_smoothing.polynomial import BivariatePolynomial, parse_polynomial, swap_normalize
from newton_smoothing.profile import anchor_identities, sharp_profile
from newton_smoothing.sturm import count_real_roots


@contextmanager
def criterion(number, title):
    ACCEPTANCE[number] = (title, "FAIL")
    try:
        yield
    except BaseException:
        print(f"criterion {number} FAIL: {title}")
        raise
    ACCEPTANCE[number] = (title, "PASS")
    print(f"criterion {number} PASS: {title}")


def random_instances(count, seed0=0):
    out = []
    for s in range(seed0, seed0 + count):
        rng = random.Random(s)
        text = oracles.text_of(oracles.random_even_support(rng), rng)
        out.append(swap_normalize(parse_polynomial(text))[0])
    return out


INSTANCES = random_instances(500)


def test_criterion_01_geometry_oracle():
    with criterion(1, "geometry agrees with the brute-force oracle on 500 random polynomials"):
        start = time.perf_counter()
        mismatches = []
        for poly in INSTANCES:
            for conv in (LITERAL, EXCLUDE_AXIS):
                ref = oracles.reference_data(list(poly), conv)
                d = build_newton_data(poly, conv)
                got = (sorted(d.hull.vertices), d.delta, d.ray_deltas, d.MsNs, sorted(d.R), d.chain)
                want = (sorted(ref["vertices"]), ref["delta"], ref["ray"], ref["MsNs"], ref["R"], ref["chain"])
                if got != want:
                    mismatches.append((str(poly), conv))
        elapsed = time.perf_counter() - start
        assert mismatches == []
        assert elapsed < 60, elapsed


def _segment_normal(a, b):
    if a[1] == INF:
        return (1, 0)
    if b[0] == INF:
        return (0, 1)
    dx, dy = b[0] - a[0], a[1] - b[1]
    g = math.gcd(dx, dy)
    return (dy // g, dx // g)


def test_criterion_02_line_anchors():
    with criterion(2, "every l^v_k passes through its three anchor points on 200 instances"):
        found, seed = 0, 10_000
        while found < 200:
            poly = random_instances(1, seed)[0]
            seed += 1
            d = build_newton_data(poly)
            if d.R_empty:
                continue
            found += 1
            n = d.chain_length
            for k in range(1, n + 1):
                a, b = d.chain[k - 1], d.chain[k]
                v = _segment_normal(a, b)
                assert v == d.normals[k - 1]
                d1, d2 = delta_v(v, (d.ms, 0)), delta_v(v, a)
                slope, intercept = 1 - d1 / d2, 1 / d2

                def line(x):
                    return slope * x + intercept

                dk = oracles.ray_distance(d.ms, a)
                anchors = [(1 / dk - (0 if a[1] == INF else F(1, a[1])), 1 / dk), (1 / (d1 + d2), 2 / (d1 + d2))]
                if d1 != 0:
                    anchors.append((1 / d1, 1 / d1))
                for x, y in anchors:
                    assert line(x) == y
                if k < n:
                    # the same line also passes through the next junction
                    nk = oracles.ray_distance(d.ms, b)
                    assert line(1 / nk - F(1, b[1])) == 1 / nk
                assert all(got == want for _, got, want in anchor_identities(d, k))


def test_criterion_03_admissibility_equivalence():
    with criterion(3, "admissibility matches the ratio test and its value on 1000 configurations"):
        rng = random.Random(3)
        checked = 0
        while checked < 1000:
            v = (rng.randint(0, 6), rng.randint(0, 6))
            w = (rng.randint(0, 6), rng.randint(0, 6))
            if v == (0, 0) or w == (0, 0) or w[1] * v[0] <= v[1] * w[0]:
                continue
            m, M, N = rng.randint(2, 12), rng.randint(2, 12), rng.randint(2, 12)
            dv1, dv2 = delta_v(v, (m, 0)), delta_v(v, (M, N))
            dw1, dw2 = delta_v(w, (m, 0)), delta_v(w, (M, N))
            if dv1 > dv2 or N - M + m <= 0:
                continue
            checked += 1
            den = dv1 * dw2 - dv2 * dw1
            assert dv2 * dw1 - dv1 * dw2 < 0
            ratio = (dw2 - dv2) / den
            poly = BivariatePolynomial({(m, 0): 1, (M, N): 1})
            member = (M, N) in build_newton_data(poly, LITERAL).R
            assert member == (1 / (dw1 + dw2) <= ratio)
            delta = F(N * m, N - M + m)
            assert ratio == 1 / delta - F(1, N)


def test_criterion_04_chain_distances_increase():
    with criterion(4, "ray distances strictly increase along every chain with at least two links"):
        polys = random_instances(2000, 50_000) + [parse_polynomial(EXAMPLES["two-link-chain"]),
                                                 parse_polynomial(EXAMPLES["interior-mixed"])]
        seen = 0
        for poly in polys:
            for conv in (LITERAL, EXCLUDE_AXIS):
                d = build_newton_data(poly, conv)
                if d.chain_length < 2:
                    continue
                seen += 1
                ds = [oracles.ray_distance(d.ms, c) for c in d.chain[:d.chain_length]]
                assert all(a < b for a, b in zip(ds, ds[1:])), (str(poly), d.chain)
        assert seen >= 50, seen


def test_criterion_05_flagship_profile():
    with criterion(5, "flagship profile pieces, continuity value and endpoint"):
        for conv in (LITERAL, EXCLUDE_AXIS):
            prof = sharp_profile(build_newton_data(parse_polynomial(P_A), conv))
            live = [(p.x_lo, p.x_hi, p.slope, p.intercept) for p in prof.pieces if not p.degenerate]
            assert live == [(0, F(1, 6), 2, 0), (F(1, 6), F(1, 2), F(7, 8), F(3, 16))]
            assert sum(p.degenerate for p in prof.pieces) == 2
            assert prof.evaluate(F(1, 6)) == F(1, 3)
            assert prof.evaluate(F(1, 2)) == F(5, 8) == 1 / prof.delta


def test_criterion_06_profile_invariants():
    with criterion(6, "continuity, concavity and alpha(1/2) = 1/delta on 500 instances, both conventions"):
        for poly in INSTANCES:
            for conv in (LITERAL, EXCLUDE_AXIS):
                d = build_newton_data(poly, conv)
                prof = sharp_profile(d)
                pieces = [(p.x_lo, p.x_hi, p.slope, p.intercept) for p in prof.pieces]
                assert oracles.profile_problems(pieces, prof.polyline(), d.delta) == [], (str(poly), conv)


def test_criterion_07_condition_checker():
    with criterion(7, "families pass, degenerate square fails with witness, Sturm matches bisection"):
        start = time.perf_counter()
        for text in three_term_family(10) + positive_even_family(10):
            assert check_conditions(swap_normalize(parse_polynomial(text))[0]).verdict == "PASS", text
        bad = check_conditions(parse_polynomial(EXAMPLES["square-degenerate"]))
        assert bad.verdict == "FAIL" and bad.witnesses
        rng = random.Random(7)
        for _ in range(500):
            roots = rng.sample([F(k, 4) for k in range(-20, 21)], rng.randint(1, 6))
            quads = [(rng.randint(-2, 2), rng.randint(3, 9)) for _ in range(rng.randint(0, 2))]
            p = oracles.expand_roots(roots, quads, rng.choice([-3, -1, 1, 2, 5]))
            assert count_real_roots(p) == oracles.sign_change_count(p, F(6), F(1, 4)) == len(roots)
        elapsed = time.perf_counter() - start
        assert elapsed < 30, elapsed


def test_criterion_08_dominant_monomial():
    with criterion(8, "dominant monomial comparable within [1/2, 2] from i0 <= 8"):
        for text in (P_A, P_B):
            rep = dominant_monomial(parse_polynomial(text), (1, 1))
            assert rep.i0 is not None and rep.i0 <= 8
            for i, (lo, hi) in rep.factors.items():
                if i >= rep.i0:
                    assert 0.5 <= lo and hi <= 2.0


def test_criterion_09_decay_fits():
    with criterion(9, "decay slopes for t1^2 + t2^4 along (2,1) and (1,1)"):
        start = time.perf_counter()
        poly = parse_polynomial(P_B)
        equal = decay_fit(poly, (2, 1), [(3, 0)], lambda i, l: list(range(16, 24)), workers=4)
        assert -1.15 <= equal.fitted_slope <= -0.90, equal.slopes
        ranges = {(1, 0): list(range(9, 14)), (2, 0): list(range(12, 16))}
        product = decay_fit(poly, (1, 1), list(ranges), ranges, workers=4)
        assert product.verdict == "PASS", (product.slopes, product.notes)
        elapsed = time.perf_counter() - start
        assert elapsed < 120, elapsed


def test_criterion_10_knapp_lines():
    with criterion(10, "box examples: full-box and l1 lines exact, eps-sweep within 0.05, negative control fails"):
        data_a = build_newton_data(parse_polynomial(P_A))
        full = knapp_box_family(data_a, FULL_BOX).line()
        assert full.as_lower_bound() == (3, -2)
        assert knapp_box_family(data_a, L1).line().same_halfplane(l1_closed_form((0, 8), (2, 0)))
        eps = [2.0 ** -k for k in range(4, 21, 2)]
        for text in (P_A, P_B):
            poly = parse_polynomial(text)
            for entry in necessary_region(build_newton_data(poly)):
                if entry.spec is None or entry.label.endswith("-dual"):
                    continue
                fit = scaling_fit(poly, entry.spec, eps, seed=11)
                assert fit.verdict == "PASS", (text, entry.label, fit.fitted_exponent, float(fit.analytic_exponent))
                assert abs(fit.fitted_exponent - float(fit.analytic_exponent)) <= 0.05
        control = knapp_box_family(data_a, L1).scaled(F(1, 2))
        assert verify_phase_bound(parse_polynomial(P_A), control, eps).verdict == "FAIL"


def test_criterion_11_lattice_cover():
    with criterion(11, "one-cover of [0,60]^2 by the normal fans of both examples"):
        start = time.perf_counter()
        for text in (P_A, P_B):
            normals = [e.normal for e in build_polyhedron(parse_polynomial(text)).bounded_edges]
            dec = lattice_decomposition(normals, 60)
            assert len(dec.assignment) == 61 * 61
            for point in dec.assignment:
                assert dec.reconstruct(point) == point
                assert oracles.fan_region_count(point, dec.normals) == 1
        elapsed = time.perf_counter() - start
        assert elapsed < 5, elapsed


def _cli(args):
    proc = subprocess.run([sys.executable, "-m", "newton_smoothing", *args], capture_output=True)
    return proc.returncode, proc.stdout


def test_criterion_12_cli_determinism(tmp_path):
    with criterion(12, "repeated CLI runs are byte-identical and every report validates"):
        for name, text in EXAMPLES.items():
            args = ["analyze", text, "--seed", "5"]
            first, second = _cli(args), _cli(args)
            assert first == second, name
            ser.validate_report(json.loads(first[1]))
        fit_args = ["knapp", P_B, "--fit", "--eps", "4:10:2", "--seed", "9"]
        a, b = _cli(fit_args), _cli(fit_args)
        assert a == b
        ser.validate_report(json.loads(a[1]))

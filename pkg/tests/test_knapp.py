from fractions import Fraction as F

import pytest

from newton_smoothing.catalog import EXAMPLES, P_A, P_B
from newton_smoothing.geometry import build_newton_data
from newton_smoothing.knapp import (
    FULL_BOX,
    L1,
    L2,
    LK,
    BoxSpec,
    NecessaryLine,
    PresetUnavailable,
    knapp_box_family,
    l1_closed_form,
    l2_point,
    lk_anchor,
    necessary_region,
    verify_phase_bound,
)
from newton_smoothing.polynomial import parse_polynomial, swap_normalize


def data_for(text):
    return build_newton_data(swap_normalize(parse_polynomial(text))[0])


def test_full_box_line():
    line = knapp_box_family(data_for(P_A), FULL_BOX).line()
    assert (line.A, line.B, line.C) == (3, 2, 1)
    # 1/q >= 3/p - 2
    assert line.as_lower_bound() == (3, -2)


def test_l1_on_flagship_matches_closed_form():
    spec = knapp_box_family(data_for(P_A), L1)
    assert spec.e == (F(1, 2), F(1, 8)) and spec.d == spec.e
    line = spec.line()
    assert line.same_halfplane(l1_closed_form((0, 8), (2, 0)))
    assert line.as_lower_bound() == (1, F(-5, 13))


def test_l2_unavailable_when_leftmost_mixed_exponent_is_zero():
    with pytest.raises(PresetUnavailable):
        knapp_box_family(data_for(P_A), L2)


def test_l2_available_with_positive_M():
    spec = knapp_box_family(data_for("t1^2 + t1^4*t2^2"), L2)
    assert spec.e == (F(3, 4), 0) and spec.d == (F(1, 4), 0)
    with pytest.raises(PresetUnavailable):
        knapp_box_family(data_for("t1^4 + t1^2*t2^4"), L2)


def test_lk_anchors_lie_on_the_line():
    data = data_for(P_A)
    line = knapp_box_family(data, LK).line()
    for c in data.chain[:2]:
        assert line.slack(*lk_anchor(data.ray_deltas[c], c[1])) == 0


def test_l2_point_lies_on_l1():
    data = data_for(P_A)
    line = knapp_box_family(data, L1).line()
    assert line.slack(*l2_point(data.delta)) == 0


def test_duality_is_an_involution():
    line = NecessaryLine(F(33, 16), F(17, 16), F(19, 16), "x")
    assert line.dual().dual() == line
    assert line.dual() == NecessaryLine(F(19, 16), F(3, 16), F(33, 16), "x-dual")


def test_region_lists_duals_and_skips():
    labels = [(e.label, e.status) for e in necessary_region(data_for(P_A))]
    assert ("l2", "SKIPPED") in labels
    assert ("full-box-dual", "PASS") in labels
    assert ("l_k(k=1)", "PASS") in labels


def test_region_without_chain_skips_lk():
    labels = [(e.label, e.status) for e in necessary_region(data_for(EXAMPLES["even-positive"]))]
    assert ("lk", "SKIPPED") in labels


def test_negative_widths_rejected():
    with pytest.raises(ValueError):
        BoxSpec("bad", (F(-1), F(0)), (F(0), F(0)))


def test_phase_bound_verdicts():
    spec = knapp_box_family(data_for(P_B), L1)
    eps = [2.0 ** -k for k in range(4, 17, 2)]
    assert verify_phase_bound(parse_polynomial(P_B), spec, eps, samples=2000).verdict == "PASS"
    assert verify_phase_bound(parse_polynomial(P_B), spec.scaled(F(1, 2)), eps, samples=2000).verdict == "FAIL"


def test_phase_bound_reproducible():
    spec = knapp_box_family(data_for(P_A), FULL_BOX)
    eps = [2.0 ** -k for k in (4, 8, 12)]
    a = verify_phase_bound(parse_polynomial(P_A), spec, eps, samples=500, seed=3)
    b = verify_phase_bound(parse_polynomial(P_A), spec, eps, samples=500, seed=3)
    assert a.ratios == b.ratios

import pytest

import oracles

from newton_smoothing.lattice import (
    ConeClass,
    FanError,
    RayClass,
    cone_index,
    lattice_decomposition,
    prepare_fan,
)


def test_sentinels_added_and_sorted():
    assert prepare_fan([(4, 1)]) == [(1, 0), (4, 1), (0, 1)]
    assert prepare_fan([(1, 0), (1, 1), (0, 1)]) == [(1, 0), (1, 1), (0, 1)]


@pytest.mark.parametrize("normals", [[(1, 1), (1, 1)], [(1, 2), (2, 1)], [(-1, 2)], [(0, 0)]])
def test_bad_fans(normals):
    with pytest.raises(FanError):
        prepare_fan(normals)


def test_without_sentinels_fan_must_span_quadrant():
    with pytest.raises(FanError):
        lattice_decomposition([(2, 1), (1, 2)], 5, add_sentinels=False)


def test_classes_on_small_box():
    dec = lattice_decomposition([(4, 1)], 8)
    assert dec.assignment[(8, 2)] == RayClass(1, 2)
    assert dec.assignment[(0, 5)] == RayClass(2, 5)
    cls = dec.assignment[(5, 1)]
    assert isinstance(cls, ConeClass) and cls.k == 0
    assert dec.reconstruct((5, 1)) == (5, 1)


def test_shift_counts_bounded_by_cone_index():
    dec = lattice_decomposition([(2, 1), (1, 2)], 30)
    for k, shifts in dec.shifts.items():
        assert len(shifts) <= cone_index(dec.normals, k)
    assert cone_index(dec.normals, 1) == 3


@pytest.mark.parametrize("normals", [[(4, 1)], [(2, 1), (1, 2)], [(3, 1), (1, 1), (1, 4)]])
def test_every_point_in_exactly_one_region(normals):
    dec = lattice_decomposition(normals, 25)
    for point in dec.assignment:
        assert oracles.fan_region_count(point, dec.normals) == 1
        assert dec.reconstruct(point) == point

"""Domain descriptions, rasterization, and asymmetry."""

import numpy as np
import pytest

import magspec as ms
from magspec.geometry import DomainSpec


def test_disk_area_exact():
    assert ms.disk(2.5).area_exact == pytest.approx(2.5)


def test_rectangle_sides_and_area():
    spec = ms.rectangle(2.0)
    hx, hy = spec.bounding_halfwidths
    assert hx == pytest.approx(1.0)
    assert hy == pytest.approx(0.25)
    assert spec.area_exact == pytest.approx(1.0)


def test_ellipse_area_and_aspect():
    spec = ms.ellipse(2.0, area=1.0)
    assert spec.area_exact == pytest.approx(1.0)
    hx, hy = spec.bounding_halfwidths
    assert hx / hy == pytest.approx(2.0)


def test_polygon_shoelace_area():
    spec = ms.polygon([(0, 0), (2, 0), (2, 1), (0, 1)])
    assert spec.area_exact == pytest.approx(2.0)


def test_polygon_orientation_insensitive():
    cw = ms.polygon([(0, 0), (0, 1), (1, 1), (1, 0)])
    assert cw.area_exact == pytest.approx(1.0)


def test_perturbed_disk_area_normalized():
    theta = np.linspace(0, 2 * np.pi, 128, endpoint=False)
    spec = ms.perturbed_disk(1 + 0.2 * np.sin(4 * theta), area=1.0)
    assert spec.area_exact == pytest.approx(1.0)


def test_bad_kind_rejected():
    with pytest.raises(ValueError):
        DomainSpec(kind="triangle")


def test_bad_aspect_rejected():
    with pytest.raises(ValueError):
        ms.rectangle(-1.0)


def test_bad_area_rejected():
    with pytest.raises(ValueError):
        ms.disk(0.0)


def test_self_intersecting_polygon_rejected():
    with pytest.raises(ValueError):
        ms.polygon([(0, 0), (1, 1), (1, 0), (0, 1)])


def test_degenerate_polygon_rejected():
    with pytest.raises(ValueError):
        ms.polygon([(0, 0), (1, 0)])


def test_negative_radius_samples_rejected():
    with pytest.raises(ValueError):
        ms.perturbed_disk([1.0, -0.5, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0])


def test_too_few_radius_samples_rejected():
    with pytest.raises(ValueError):
        ms.perturbed_disk([1.0, 1.0, 1.0])


def test_inside_disk_points():
    spec = ms.disk(np.pi)  # radius 1
    x = np.array([0.0, 0.99, 1.01, -0.5])
    y = np.array([0.0, 0.0, 0.0, 0.5])
    assert spec.inside(x, y).tolist() == [True, True, False, True]


def test_rasterize_mask_area(disk128):
    assert disk128.cell_area == pytest.approx(1.0, rel=2e-3)
    assert disk128.area == pytest.approx(1.0)


def test_rasterize_resolution_sets_h(disk128):
    assert disk128.h == pytest.approx(1.0 / 128)


def test_rasterize_rejects_tiny_resolution():
    with pytest.raises(ValueError):
        ms.rasterize(ms.disk(1.0), 4)


def test_boundary_distance_inradius(square128):
    dist = ms.boundary_distance(square128)
    # unit square inradius 0.5; EDT measured from wall cell centers
    assert dist.values.max() == pytest.approx(0.5, abs=2 * square128.h)


def test_perimeter_square(square128):
    from magspec.geometry import perimeter
    assert perimeter(square128.mask, square128.h) == pytest.approx(4.0, rel=0.02)


def test_perimeter_disk(disk128):
    from magspec.geometry import perimeter
    assert perimeter(disk128.mask, disk128.h) == pytest.approx(
        2 * np.sqrt(np.pi), rel=0.02)


def test_symmetric_difference_centered_disk(disk128):
    val = ms.symmetric_difference_area(disk128, np.array([0.0, 0.0]))
    assert val < 0.01


def test_symmetric_difference_far_center(disk128):
    far = ms.symmetric_difference_area(disk128, np.array([5.0, 0.0]))
    assert far == pytest.approx(disk128.cell_area + disk128.area, abs=1e-12)


def test_asymmetry_translation_invariant():
    a0 = ms.fraenkel_asymmetry(ms.rasterize(ms.rectangle(1.0), 96))
    a1 = ms.fraenkel_asymmetry(
        ms.rasterize(ms.rectangle(1.0, center=(0.37, -0.21)), 96))
    assert a1 == pytest.approx(a0, abs=2e-3)


def test_asymmetry_monotone_under_aspect():
    vals = [ms.fraenkel_asymmetry(ms.rasterize(ms.rectangle(a), 96))
            for a in (1.0, 1.5, 2.0)]
    assert vals[0] < vals[1] < vals[2]


def test_asymmetry_bounds(disk128):
    alpha = ms.fraenkel_asymmetry(disk128)
    assert 0.0 <= alpha < 0.02

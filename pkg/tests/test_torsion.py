"""Torsion solve, rectangle series, and level-set machinery."""

import numpy as np
import pytest

import magspec as ms
import magspec.torsion as T
from magspec.geometry import RasterDomain


def test_disk_max_closed_form(disk128_torsion):
    assert disk128_torsion.max_value == pytest.approx(1 / (4 * np.pi), abs=2e-5)


def test_disk_max_location_center(disk128_torsion):
    x, y = disk128_torsion.max_location
    assert abs(x) < 0.02 and abs(y) < 0.02


def test_square_max_series(square128_torsion):
    series = ms.torsion_rect_series(1.0, 200)
    assert square128_torsion.max_value == pytest.approx(series.value, abs=2e-5)


def test_residual_contract(disk128, disk128_torsion):
    lap = T.poisson_matrix(disk128)
    phi = disk128_torsion.field.values[disk128.mask]
    r = lap @ phi - disk128.h**2
    assert np.max(np.abs(r)) / disk128.h**2 <= T.RESIDUAL_TOL


def test_interior_positivity(disk128, disk128_torsion):
    assert disk128_torsion.field.values[disk128.mask].min() > 0.0


def test_field_vanishes_outside(disk128, disk128_torsion):
    assert np.all(disk128_torsion.field.values[~disk128.mask] == 0.0)


def test_domain_monotonicity(square128):
    # carve a strict sub-rectangle out of the same grid: comparison principle
    # for the plain masked scheme (spec=None on both sides so stencils match)
    outer = RasterDomain(mask=square128.mask, h=square128.h,
                         origin=square128.origin)
    sub = square128.mask.copy()
    sub[:10, :] = False
    sub[-10:, :] = False
    inner = RasterDomain(mask=sub, h=square128.h, origin=square128.origin)
    tf_outer = ms.solve_torsion_fd(outer)
    tf_inner = ms.solve_torsion_fd(inner)
    assert np.all(tf_inner.field.values <= tf_outer.field.values + 1e-10)


def test_series_tail_bound():
    s200 = ms.torsion_rect_series(1.0, 200)
    s400 = ms.torsion_rect_series(1.0, 400)
    assert abs(s200.value - s400.value) < 1e-6
    assert abs(s200.value - s400.value) <= s200.tail_bound


def test_series_square_value():
    assert ms.torsion_rect_series(1.0, 400).value == pytest.approx(
        0.0736713, abs=1e-6)


def test_series_decreasing_in_aspect():
    vals = [ms.torsion_rect_series(a, 200).value for a in (1.0, 1.5, 2.0, 3.0)]
    assert all(x > y for x, y in zip(vals, vals[1:]))


def test_deficit_bound_positive_margin():
    for a in (1.1, 1.7, 2.5):
        lhs = (ms.torsion_rect_series(1.0, 200).value
               - ms.torsion_rect_series(a, 200).value)
        assert lhs > ms.rect_deficit_bound(a)


def test_deficit_bound_zero_at_one():
    assert ms.rect_deficit_bound(1.0) == 0.0


def test_g_forms_agree():
    x = np.linspace(0.05, 9.95, 61)
    for xi in x[::7]:
        gv = ms.g_function(xi, x)
        gf = T.g_function_factored(xi, x)
        np.testing.assert_allclose(gv, gf, rtol=0, atol=1e-12)


def test_g_vanishes_on_diagonal_slice():
    y = np.linspace(0.1, 10.0, 200)
    np.testing.assert_allclose(ms.g_function(1.0, y), 0.0, atol=1e-14)


def test_g_at_unit_second_argument():
    x = np.linspace(0.05, 9.95, 200)
    expected = (1.0 - x) ** 2 / (1.0 + x**2)
    np.testing.assert_allclose(ms.g_function(x, 1.0), expected, atol=1e-13)


def test_series_identities_report():
    rep = ms.series_identities_check()
    assert rep.status == "pass"
    assert rep.rhs < 1e-8


def test_torsion_disk_max_scales_with_area():
    assert ms.torsion_disk_max(2.0) == pytest.approx(2.0 / (4 * np.pi))


def test_level_set_profile_disk(disk128_torsion):
    prof = ms.level_set_profile(disk128_torsion, num_levels=32,
                                asymmetry_maxfev=40)
    assert prof.t[0] == 0.0
    assert prof.mu[0] == pytest.approx(1.0, rel=0.02)
    assert np.all(np.diff(prof.mu) <= 1e-12)
    keep = prof.t <= 0.9 * disk128_torsion.max_value
    iso = prof.per[keep] ** 2 / (4 * np.pi * prof.mu[keep])
    assert np.max(np.abs(iso - 1.0)) < 0.05
    assert 0.0 <= prof.threshold <= disk128_torsion.max_value


def test_level_set_profile_needs_levels(disk128_torsion):
    with pytest.raises(ValueError):
        ms.level_set_profile(disk128_torsion, num_levels=10)


def test_talenti_vacuous_on_disk(disk128, disk128_torsion):
    rep = ms.talenti_deficit(disk128, disk128_torsion)
    assert rep.status == "vacuous"
    assert rep.extras["alpha"] < 0.02


def test_talenti_square_margin(square128, square128_torsion):
    rep = ms.talenti_deficit(square128, square128_torsion)
    assert rep.status == "pass"
    assert rep.lhs == pytest.approx(0.0059062, abs=1e-4)
    assert rep.rhs < 1e-5

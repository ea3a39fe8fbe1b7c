"""Decay fits, tolerances, fitted constants, and light check batteries."""

import numpy as np
import pytest

import magspec as ms
import magspec.verify as V
from magspec.geometry import polygon


def test_fit_decay_recovers_pure_exponential():
    # lambda = 7 exp(-B/pi): slope -1/pi exactly, no power factor
    B = np.linspace(10, 40, 7)
    lam = 7.0 * np.exp(-B / np.pi)
    fit = ms.fit_decay(np.column_stack([B, lam]), phi_max=1 / (2 * np.pi))
    assert fit.slope == pytest.approx(-1 / np.pi, abs=1e-10)
    assert fit.prefactor_exponent == pytest.approx(0.0, abs=1e-10)
    assert fit.residual < 1e-12
    assert fit.B_window == (10.0, 40.0)


def test_fit_decay_recovers_power_when_rate_matches():
    # lambda = B^2 exp(-2 phi B) with the phi handed to the fit
    phi = 1 / (2 * np.pi)
    B = np.linspace(10, 40, 7)
    lam = B**2 * np.exp(-2 * phi * B)
    fit = ms.fit_decay(np.column_stack([B, lam]), phi_max=phi)
    assert fit.prefactor_exponent == pytest.approx(2.0, abs=1e-6)
    assert fit.slope == pytest.approx(-2 * phi, abs=1e-6)


def test_fit_decay_guards():
    with pytest.raises(ValueError):
        ms.fit_decay([(10.0, 1.0), (20.0, 0.5)], phi_max=0.1)
    with pytest.raises(ValueError):
        ms.fit_decay([(b, -1.0) for b in (10, 15, 20, 25, 30)], phi_max=0.1)
    with pytest.raises(ValueError):
        ms.fit_decay([(b, 1.0) for b in (0, 10, 20, 30, 40)], phi_max=0.1)


def test_richardson_tolerance():
    tol = ms.richardson_tolerance(1.00, 1.02)
    assert tol == pytest.approx(0.02 / 1.02 + 0.005)
    assert ms.richardson_tolerance(5.0, 5.0) == pytest.approx(0.005)


def test_fitted_ratio_constant_boundary_recovery():
    # ratios placed exactly on the display 1 + c B a3 - ln(B)/c at c = 2
    c, a3 = 2.0, 0.005
    Bs = [10.0, 20.0, 40.0]
    ratios = [1 + c * B * a3 - np.log(B) / c for B in Bs]
    fit = ms.fitted_ratio_constant(ratios, Bs, a3)
    assert fit == pytest.approx(c, rel=1e-6)


def test_fitted_ratio_constant_log_only():
    # with a3 = 0 the display is 1 - ln(B)/c, so ratio 0.5 at B = 10
    # pins c = ln(10) / 0.5
    fit = ms.fitted_ratio_constant([0.5], [10.0], 0.0)
    assert fit == pytest.approx(2 * np.log(10.0), rel=1e-6)


def test_fitted_ratio_constant_small_field_ignored():
    assert ms.fitted_ratio_constant([5.0], [0.5], 1.0) == 0.0


def test_unit_area_polygon_rescaled():
    tri = polygon(((0.0, 0.0), (2.0, 0.0), (0.0, 2.0)))
    scaled, rescaled = V._unit_area(tri)
    assert rescaled
    assert scaled.area_exact == pytest.approx(1.0, rel=1e-12)


def test_unit_area_disk_noop():
    scaled, rescaled = V._unit_area(ms.disk())
    assert not rescaled
    assert scaled.area_exact == pytest.approx(1.0)


def test_check_g_bound_passes():
    rep = V.check_g_bound()
    assert rep.status == "pass"


def test_check_rect_deficit_passes():
    reps = V.check_rect_deficit()
    assert reps and all(r.status == "pass" for r in reps)


def test_check_minmax_identities_passes():
    rep = V.check_minmax_identities()
    assert rep.status == "pass"


def test_check_torsion_closed_forms_small():
    reps = V.check_torsion_closed_forms(resolution=128)
    assert {r.status for r in reps} == {"pass"}


def test_reports_sorted_and_named():
    reps = V.check_rect_deficit()
    names = [r.name for r in reps]
    assert all(isinstance(n, str) and n for n in names)
    assert all(r.margin == pytest.approx(r.lhs - r.rhs) for r in reps)

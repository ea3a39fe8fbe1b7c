"""Magnetic Laplacian pencils, reference disk solver, variational bounds."""

import numpy as np
import pytest
import scipy.sparse as sp

import magspec as ms
from magspec.maglap import J01, MagneticForm, Spectrum


def test_square_zero_field_ground_state(square128):
    form = ms.assemble_landau(square128, 0.0)
    spec = ms.eigenvalues(form, 3)
    # the masked scheme reads walls half a cell out, so O(h) from below
    assert spec.eigenvalues[0] == pytest.approx(2 * np.pi**2, rel=2e-2)
    assert spec.eigenvalues[0] < 2 * np.pi**2
    assert spec.eigenvalues[1] == pytest.approx(5 * np.pi**2, rel=2e-2)


def test_gauges_agree_at_zero_field(disk128, disk128_torsion):
    lan = ms.eigenvalues(ms.assemble_landau(disk128, 0.0), 3)
    tor = ms.eigenvalues(
        ms.assemble_torsion_gauge(disk128, 0.0, disk128_torsion), 3)
    np.testing.assert_allclose(lan.eigenvalues, tor.eigenvalues,
                               rtol=1e-9, atol=1e-9)


def test_gauges_agree_at_moderate_field(disk128, disk128_torsion):
    lan = ms.eigenvalues(ms.assemble_landau(disk128, 10.0), 2)
    tor = ms.eigenvalues(
        ms.assemble_torsion_gauge(disk128, 10.0, disk128_torsion), 2)
    np.testing.assert_allclose(lan.eigenvalues, tor.eigenvalues,
                               rtol=5e-3)


def test_radial_matches_bessel_zero():
    spec = ms.disk_eigs_radial(1.0, 0.0, 1)
    assert spec.eigenvalues[0] == pytest.approx(np.pi * J01**2, rel=1e-6)


def test_radial_zero_field_degeneracy():
    # second Dirichlet disk eigenvalue is double (angular momenta +-1)
    spec = ms.disk_eigs_radial(1.0, 0.0, 3)
    assert spec.eigenvalues[1] == pytest.approx(spec.eigenvalues[2], rel=1e-9)


def test_fd_disk_matches_radial(disk128):
    fd = ms.eigenvalues(ms.assemble_landau(disk128, 0.0), 1)
    rad = ms.disk_eigs_radial(1.0, 0.0, 1)
    assert fd.eigenvalues[0] == pytest.approx(rad.eigenvalues[0], rel=2e-2)


def test_radial_decay_in_field():
    vals = [ms.disk_eigs_radial(1.0, B, 1).eigenvalues[0]
            for B in (0.0, 10.0, 20.0, 40.0)]
    assert all(x > y for x, y in zip(vals, vals[1:]))
    assert vals[-1] < 0.05 * vals[0]


def test_trial_dominates_discrete(disk128, disk128_torsion):
    form = ms.assemble_torsion_gauge(disk128, 12.0, disk128_torsion)
    spec = ms.eigenvalues(form, 2)
    for n in (1, 2):
        ub = ms.trial_upper_bound(disk128, disk128_torsion, 12.0, n)
        assert ub >= spec.eigenvalues[n - 1] - 1e-10


def test_torsion_lower_bound_below_ground_state(square128, square128_torsion):
    for B in (5.0, 15.0):
        lb = ms.torsion_lower_bound(square128, square128_torsion, B)
        spec = ms.eigenvalues(ms.assemble_landau(square128, B), 1)
        assert lb <= spec.eigenvalues[0]


def test_lower_bound_closed_form(disk128, disk128_torsion):
    lb = ms.torsion_lower_bound(disk128, disk128_torsion, 8.0)
    expected = (np.pi * J01**2 / disk128.area
                * np.exp(-16.0 * disk128_torsion.max_value))
    assert lb == pytest.approx(expected, rel=1e-12)


def test_eigen_residual_contract(disk128):
    spec = ms.eigenvalues(ms.assemble_landau(disk128, 6.0), 4)
    assert spec.residuals is not None
    assert spec.residuals.max() <= 1e-8


def test_flux_warning(disk128):
    with pytest.warns(UserWarning, match="flux"):
        ms.assemble_landau(disk128, 9000.0)


def test_negative_field_rejected(disk128):
    with pytest.raises(ValueError):
        ms.assemble_landau(disk128, -1.0)


def test_spectrum_requires_sorted():
    with pytest.raises(ValueError):
        Spectrum(eigenvalues=np.array([2.0, 1.0]), B=0.0, method="landau-fd",
                 resolution=64, domain="disk(1)")


def test_spectrum_requires_positive():
    with pytest.raises(ValueError):
        Spectrum(eigenvalues=np.array([-0.5, 1.0]), B=0.0, method="landau-fd",
                 resolution=64, domain="disk(1)")


def test_form_requires_hermitian():
    bad = sp.csr_matrix(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        MagneticForm(stiffness=bad, mass=None, gauge="landau", B=0.0,
                     domain="mask", resolution=64)


def test_radial_m_range_guard():
    with pytest.raises(ValueError):
        ms.disk_eigs_radial(1.0, 0.0, 4, m_range=2)


def test_trial_needs_resolved_field(disk128, disk128_torsion):
    with pytest.raises(ValueError):
        ms.trial_upper_bound(disk128, disk128_torsion, 64.0, 1)
    with pytest.raises(ValueError):
        ms.trial_upper_bound(disk128, disk128_torsion, 0.0, 1)


def test_eigenvalues_n_guard(disk128):
    form = ms.assemble_landau(disk128, 0.0)
    with pytest.raises(ValueError):
        ms.eigenvalues(form, 0)

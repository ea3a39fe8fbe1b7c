"""Hardy-space Gram bounds for the magnetic Dirac eigenvalues."""

import numpy as np
import pytest

import magspec as ms
from magspec.dirac import minmax_quotient


@pytest.fixture(scope="module")
def disk_pb():
    return ms.parametric_boundary(ms.disk(), samples=512)


@pytest.fixture(scope="module")
def disk_grams(disk128, disk128_torsion, disk_pb):
    return ms.hardy_basis_grams(disk128, disk_pb, disk128_torsion,
                                B=8.0, K=12)


def test_boundary_closes(disk_pb):
    np.testing.assert_allclose(disk_pb.points[0], disk_pb.points[-1])
    assert disk_pb.weights[-1] == 0.0


def test_boundary_length_is_perimeter(disk_pb):
    assert disk_pb.weights.sum() == pytest.approx(2 * np.sqrt(np.pi),
                                                  rel=1e-10)


def test_normals_point_outward(disk_pb):
    p, nv = disk_pb.points[:-1], disk_pb.normals[:-1]
    # on a centered disk the outward normal is the unit position vector
    rad = p / np.linalg.norm(p, axis=1, keepdims=True)
    np.testing.assert_allclose(nv, rad, atol=1e-12)


def test_ellipse_length():
    pb = ms.parametric_boundary(ms.ellipse(2.0), samples=2048)
    a, b = ms.ellipse(2.0)._ellipse_semiaxes()
    t = np.linspace(0, 2 * np.pi, 200001)
    poly = np.hypot(np.diff(a * np.cos(t)), np.diff(b * np.sin(t))).sum()
    assert pb.weights.sum() == pytest.approx(poly, rel=1e-8)


def test_corner_domains_rejected():
    with pytest.raises(ValueError):
        ms.parametric_boundary(ms.rectangle(1.0))
    with pytest.raises(ValueError):
        ms.parametric_boundary(ms.polygon(((0, 0), (1, 0), (0, 1))))


def test_grams_hermitian(disk_grams):
    for g in (disk_grams.boundary_gram, disk_grams.interior_gram):
        np.testing.assert_allclose(g, g.conj().T, atol=1e-12 * np.abs(g).max())


def test_grams_positive_definite(disk_grams):
    for g in (disk_grams.boundary_gram, disk_grams.interior_gram):
        assert np.linalg.eigvalsh(g)[0] > 0


def test_interior_gram_grows_with_field(disk128, disk128_torsion, disk_pb):
    g0 = ms.hardy_basis_grams(disk128, disk_pb, disk128_torsion, B=0.0, K=6)
    g8 = ms.hardy_basis_grams(disk128, disk_pb, disk128_torsion, B=8.0, K=6)
    d0 = np.diag(g0.interior_gram).real
    d8 = np.diag(g8.interior_gram).real
    assert np.all(d8 > d0)


def test_upper_bounds_shrink_with_subspace(disk128, disk128_torsion, disk_pb):
    bounds = []
    for K in (4, 8, 12):
        g = ms.hardy_basis_grams(disk128, disk_pb, disk128_torsion,
                                 B=8.0, K=K)
        bounds.append(ms.dirac_upper_bounds(g, 2))
    assert bounds[0][0] >= bounds[1][0] >= bounds[2][0]
    assert bounds[0][1] >= bounds[1][1] >= bounds[2][1]


def test_upper_bounds_sorted(disk_grams):
    ub = ms.dirac_upper_bounds(disk_grams, 4)
    assert np.all(np.diff(ub) >= 0)
    assert ub[0] > 0


def test_sandwich_on_disk(disk128, disk128_torsion, disk_pb):
    for B in (4.0, 8.0):
        g = ms.hardy_basis_grams(disk128, disk_pb, disk128_torsion, B=B, K=12)
        ub = ms.dirac_upper_bounds(g, 1)[0]
        lb = ms.dirac_lower_bound(1.0, disk128_torsion.max_value, B)
        assert lb <= ub


def test_disk_reference_value():
    assert ms.dirac_disk_reference(np.pi) == pytest.approx(1.4347, abs=2e-4)
    assert ms.dirac_disk_reference(1.0) == pytest.approx(
        1.4347 * np.sqrt(np.pi), abs=5e-4)


def test_zero_field_upper_near_reference(disk128, disk128_torsion, disk_pb):
    g = ms.hardy_basis_grams(disk128, disk_pb, disk128_torsion, B=0.0, K=12)
    ub = ms.dirac_upper_bounds(g, 1)[0]
    ref = ms.dirac_disk_reference(1.0)
    assert ub >= ref * (1 - 5e-3)
    assert ub <= ref * 1.5


def test_minmax_closed_forms():
    assert minmax_quotient(2.0, 4.0, 0.0) == pytest.approx(0.5, abs=1e-15)
    assert minmax_quotient(0.0, 4.0, 9.0) == pytest.approx(1.5, abs=1e-15)
    golden = (1 + np.sqrt(5.0)) / 2
    assert minmax_quotient(1.0, 1.0, 1.0) == pytest.approx(golden, abs=1e-15)


def test_minmax_monotone_in_each_argument():
    base = minmax_quotient(1.0, 1.0, 1.0)
    assert minmax_quotient(1.5, 1.0, 1.0) > base
    assert minmax_quotient(1.0, 1.5, 1.0) < base
    assert minmax_quotient(1.0, 1.0, 1.5) > base


def test_minmax_guards():
    with pytest.raises(ValueError):
        minmax_quotient(1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        minmax_quotient(-1.0, 1.0, 1.0)


def test_lower_bound_guards():
    with pytest.raises(ValueError):
        ms.dirac_lower_bound(0.0, 0.1, 1.0)
    with pytest.raises(ValueError):
        ms.dirac_lower_bound(1.0, 0.1, -1.0)


def test_gram_sample_guard(disk128, disk128_torsion):
    pb = ms.parametric_boundary(ms.disk(), samples=64)
    with pytest.raises(ValueError):
        ms.hardy_basis_grams(disk128, pb, disk128_torsion, B=1.0, K=12)

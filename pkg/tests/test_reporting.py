"""CSV schemas, JSON reports, and figure rendering."""

import json

import numpy as np
import pytest

import magspec as ms
import magspec.reporting as rep
from magspec.maglap import Spectrum
from magspec.reports import make_report


@pytest.fixture(scope="module")
def two_spectra():
    return [
        Spectrum(eigenvalues=np.array([18.1, 45.0]), B=0.0,
                 method="landau-fd", resolution=128, domain="disk(1)",
                 residuals=np.array([1e-10, 2e-10])),
        Spectrum(eigenvalues=np.array([12.0, 30.0]), B=10.0,
                 method="landau-fd", resolution=128, domain="disk(1)"),
    ]


def test_timestamped_deterministic():
    name = rep.timestamped("eigs", ".csv", when=0.0)
    assert name.startswith("eigs-") and name.endswith(".csv")
    assert rep.timestamped("eigs", ".csv", when=0.0) == name


def test_spectra_rows_sorted(two_spectra):
    rows = rep.spectra_rows(two_spectra)
    assert rows[0][:4] == ("disk(1)", "landau-fd", 0.0, 1)
    assert [r[2] for r in rows] == [0.0, 0.0, 10.0, 10.0]
    assert rows[2][5] == 0.0  # missing residuals fill with zero


def test_write_spectra_csv_deterministic(tmp_path, two_spectra):
    p1 = rep.write_spectra_csv(two_spectra, tmp_path / "a.csv")
    p2 = rep.write_spectra_csv(two_spectra, tmp_path / "b.csv")
    assert p1.read_text() == p2.read_text()
    lines = p1.read_text().splitlines()
    assert lines[0] == rep.SPECTRA_HEADER
    assert len(lines) == 5


def test_write_reports_json_roundtrip(tmp_path):
    reports = [make_report("b-check", "ref", 2.0, 1.0),
               make_report("a-check", "ref", 0.0, 1.0, vacuous=True)]
    path = rep.write_reports_json(reports, tmp_path / "r.json")
    payload = json.loads(path.read_text())
    assert [r["name"] for r in payload] == ["b-check", "a-check"]
    assert payload[0]["status"] == "pass"
    assert payload[1]["status"] == "vacuous"
    assert payload[0]["margin"] == pytest.approx(1.0)


def test_dirac_csv_schema(tmp_path):
    records = [("disk", 10.0, 12, 1, 0.5, 0.4),
               ("disk", 0.0, 12, 1, 1.5, 1.2)]
    path = rep.write_dirac_csv(records, tmp_path / "d.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == rep.DIRAC_HEADER
    assert lines[1].startswith("disk,0,")  # sorted by B


def test_figures_render(tmp_path, disk128_torsion, two_spectra):
    prof = ms.level_set_profile(disk128_torsion, num_levels=24,
                                asymmetry_maxfev=20)
    targets = [
        rep.fig_torsion_field(disk128_torsion, tmp_path / "f1.png"),
        rep.fig_profile(prof, tmp_path / "f2.png"),
        rep.fig_spectra(two_spectra, tmp_path / "f3.png"),
        rep.fig_margins([make_report("x", "r", 1.0, 0.0)],
                        tmp_path / "f4.png"),
    ]
    for p in targets:
        assert p.exists() and p.stat().st_size > 1000


def test_fig_decay(tmp_path):
    B = np.linspace(10, 40, 6)
    lam = np.exp(-0.3 * B)
    fit = ms.fit_decay(np.column_stack([B, lam]), phi_max=0.15)
    p = rep.fig_decay(list(zip(B, lam)), fit, tmp_path / "decay.png")
    assert p.exists() and p.stat().st_size > 1000


def test_fig_asymmetry_overlay(tmp_path, square128):
    alpha = ms.fraenkel_asymmetry(square128)
    p = rep.fig_asymmetry_overlay(square128, alpha, tmp_path / "ov.png")
    assert p.exists() and p.stat().st_size > 1000


def test_float_formatting(tmp_path):
    path = rep.write_csv(tmp_path / "f.csv", "a,b",
                         [(1 / 3, "x"), (1e-15, "y")])
    lines = path.read_text().splitlines()
    assert lines[1].split(",")[0] == "0.333333333333"
    assert lines[2].split(",")[0] == "1e-15"

"""Result persistence: deterministic CSV/JSON writers and figure rendering.

CSV schemas (fixed headers, stable field order, %.12g floats):

    spectra:  domain,method,B,n,lambda,residual,resolution
    profile:  t,mu,perimeter,alpha
    dirac:    domain,B,K,n,upper,lower
    asymmetry: domain,resolution,alpha

Reports serialize to JSON as an array of BoundReport records.  File names
carry the command and a timestamp; file contents are byte-identical across
reruns of the same configuration.
"""

from __future__ import annotations

import json
import time
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .maglap import Spectrum  # noqa: E402
from .reports import BoundReport  # noqa: E402
from .torsion import LevelSetProfile, TorsionField  # noqa: E402

__all__ = [
    "timestamped",
    "write_csv",
    "spectra_rows",
    "write_spectra_csv",
    "write_profile_csv",
    "write_dirac_csv",
    "write_reports_json",
    "fig_torsion_field",
    "fig_profile",
    "fig_spectra",
    "fig_decay",
    "fig_margins",
    "fig_asymmetry_overlay",
]

SPECTRA_HEADER = "domain,method,B,n,lambda,residual,resolution"
PROFILE_HEADER = "t,mu,perimeter,alpha"
DIRAC_HEADER = "domain,B,K,n,upper,lower"
ASYMMETRY_HEADER = "domain,resolution,alpha"


def timestamped(command: str, suffix: str, when: float | None = None) -> str:
    """File name `<command>-<YYYYmmdd-HHMMSS><suffix>`."""
    stamp = time.strftime("%Y%m%d-%H%M%S", time.localtime(when))
    return f"{command}-{stamp}{suffix}"


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def write_csv(path, header: str, rows) -> Path:
    path = Path(path)
    lines = [header]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")
    return path


def spectra_rows(spectra) -> list[tuple]:
    rows = []
    for s in spectra:
        res = s.residuals if s.residuals is not None else [0.0] * len(s.eigenvalues)
        for i, (lam, r) in enumerate(zip(s.eigenvalues, res), start=1):
            rows.append((s.domain, s.method, float(s.B), i, float(lam),
                         float(r), s.resolution))
    rows.sort(key=lambda t: (t[0], t[1], t[2], t[3]))
    return rows


def write_spectra_csv(spectra, path) -> Path:
    return write_csv(path, SPECTRA_HEADER, spectra_rows(spectra))


def write_profile_csv(profile: LevelSetProfile, path) -> Path:
    rows = list(zip(profile.t, profile.mu, profile.per, profile.alpha))
    return write_csv(path, PROFILE_HEADER, rows)


def write_dirac_csv(records, path) -> Path:
    """records: iterable of (domain, B, K, n, upper, lower)."""
    rows = sorted(records, key=lambda t: (t[0], t[1], t[2], t[3]))
    return write_csv(path, DIRAC_HEADER, rows)


def write_reports_json(reports, path) -> Path:
    path = Path(path)
    payload = [r.as_dict() for r in reports]
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


# -- figures -----------------------------------------------------------------

def _save(fig, path) -> Path:
    path = Path(path)
    fig.savefig(path, dpi=130, bbox_inches="tight")
    plt.close(fig)
    return path


def fig_torsion_field(tf: TorsionField, path) -> Path:
    d = tf.field.domain
    X, Y = d.cell_centers
    vals = np.where(d.mask, tf.field.values, np.nan)
    fig, ax = plt.subplots(figsize=(5, 4.2))
    pc = ax.pcolormesh(X, Y, vals, shading="nearest", cmap="viridis")
    ax.plot(*tf.max_location, "r+", markersize=10)
    ax.set_aspect("equal")
    ax.set_title(f"torsion function, max {tf.max_value:.6f}")
    fig.colorbar(pc, ax=ax)
    return _save(fig, path)


def fig_profile(profile: LevelSetProfile, path) -> Path:
    fig, axes = plt.subplots(1, 3, figsize=(11, 3.2))
    axes[0].plot(profile.t, profile.mu, "o-", ms=3)
    axes[0].set_xlabel("t")
    axes[0].set_ylabel("mu(t)")
    axes[1].plot(profile.t, profile.per, "o-", ms=3)
    axes[1].set_xlabel("t")
    axes[1].set_ylabel("perimeter(U_t)")
    axes[2].plot(profile.t, profile.alpha, "o-", ms=3)
    axes[2].axvline(profile.threshold, color="r", lw=0.8, ls="--")
    axes[2].set_xlabel("t")
    axes[2].set_ylabel("alpha(U_t)")
    fig.suptitle("super-level-set profile")
    fig.tight_layout()
    return _save(fig, path)


def fig_spectra(spectra, path) -> Path:
    fig, ax = plt.subplots(figsize=(5.5, 4))
    by_method: dict = {}
    for s in spectra:
        by_method.setdefault(s.method, []).append(s)
    for method, group in sorted(by_method.items()):
        group.sort(key=lambda s: s.B)
        Bs = [s.B for s in group]
        lam1 = [s.eigenvalues[0] for s in group]
        ax.semilogy(Bs, lam1, "o-", label=method)
    ax.set_xlabel("B")
    ax.set_ylabel("lambda_1")
    ax.legend()
    ax.set_title("first eigenvalue vs field strength")
    return _save(fig, path)


def fig_decay(points, fit, path, title="decay fit") -> Path:
    pts = np.asarray(points, float)
    B, lam = pts[:, 0], pts[:, 1]
    fig, ax = plt.subplots(figsize=(5.5, 4))
    ax.plot(B, np.log(lam), "o", label="data")
    grid = np.linspace(B.min(), B.max(), 100)
    # rebuild ln C from the fit by matching the mean
    lnC = np.mean(np.log(lam) - fit.prefactor_exponent * np.log(B)
                  - fit.slope * B)
    ax.plot(grid, lnC + fit.prefactor_exponent * np.log(grid)
            + fit.slope * grid, "-",
            label=f"slope {fit.slope:.4f}, p {fit.prefactor_exponent:.2f}")
    ax.set_xlabel("B")
    ax.set_ylabel("ln lambda")
    ax.legend()
    ax.set_title(title)
    return _save(fig, path)


def fig_margins(reports, path) -> Path:
    reports = sorted(reports, key=lambda r: r.name)
    names = [r.name for r in reports]
    margins = np.array([r.margin for r in reports])
    colors = ["tab:green" if r.status == "pass"
              else "tab:gray" if r.status == "vacuous" else "tab:red"
              for r in reports]
    fig, ax = plt.subplots(figsize=(7, max(3, 0.22 * len(names))))
    ax.barh(range(len(names)), np.sign(margins) * np.log1p(np.abs(margins)),
            color=colors)
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=6)
    ax.axvline(0, color="k", lw=0.8)
    ax.set_xlabel("signed log-scaled margin")
    ax.set_title("verification margins")
    return _save(fig, path)


def fig_asymmetry_overlay(d, alpha: float, path) -> Path:
    X, Y = d.cell_centers
    fig, ax = plt.subplots(figsize=(4.6, 4.2))
    ax.pcolormesh(X, Y, d.mask.astype(float), shading="nearest",
                  cmap="Blues", alpha=0.7)
    radius = np.sqrt(d.area / np.pi)
    cx = float(X[d.mask].mean())
    cy = float(Y[d.mask].mean())
    theta = np.linspace(0, 2 * np.pi, 200)
    ax.plot(cx + radius * np.cos(theta), cy + radius * np.sin(theta), "r-")
    ax.set_aspect("equal")
    ax.set_title(f"asymmetry alpha = {alpha:.4f}")
    return _save(fig, path)

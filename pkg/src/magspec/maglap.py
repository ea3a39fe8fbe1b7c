"""Shifted magnetic Dirichlet Laplacian on planar domains.

Eigenvalues lambda_n(Omega, B) of -(grad - iA)^2 - B with zero boundary
conditions, computed three independent ways:

  * Landau gauge A = (-B x2, 0) discretized with Peierls link phases
    (exact plaquette flux exp(i B h^2));
  * torsion gauge: the weighted Cauchy-Riemann quadratic form
    4 sum w |dbar v|^2 with w = exp(2 B phi) and mass diag(w), phi the
    torsion function, discretized by symmetrized one-sided differences;
  * for disks, an angular-momentum-decomposed radial solver (the
    high-accuracy reference).

Also provides the Gram-matrix upper bound from cutoff-monomial trial
functions chi(B dist) z^k and the closed-form lower bound
pi j_{0,1}^2 / area * exp(-2 B phi_m).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from scipy.linalg import eigh_tridiagonal
from scipy.special import jn_zeros

from .geometry import RasterDomain, boundary_distance
from .torsion import TorsionField

__all__ = [
    "J01",
    "Spectrum",
    "MagneticForm",
    "assemble_landau",
    "assemble_torsion_gauge",
    "eigenvalues",
    "disk_eigs_radial",
    "trial_upper_bound",
    "torsion_lower_bound",
]

J01 = float(jn_zeros(0, 1)[0])  # first zero of the Bessel function J_0

EIG_RESIDUAL_TOL = 1e-8
WEIGHT_EXP_CAP = 700.0  # exp argument beyond which doubles overflow


@dataclass(frozen=True)
class Spectrum:
    """Ordered eigenvalues with solver metadata."""

    eigenvalues: np.ndarray
    B: float
    method: str  # landau-fd | torsion-gauge-fd | radial-disk | trial-upper
    resolution: int
    domain: str
    residuals: np.ndarray | None = None

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, float)
        if np.any(np.diff(ev) < -1e-12):
            raise ValueError("eigenvalues must be sorted non-decreasing")
        if np.any(ev <= 0):
            raise ValueError("shifted magnetic eigenvalues must be positive; "
                             "grid is likely under-resolved for this B")


@dataclass(frozen=True)
class MagneticForm:
    """Stiffness/mass pencil for one gauge at one field strength."""

    stiffness: sp.spmatrix
    mass: sp.spmatrix | None
    gauge: str  # landau | torsion
    B: float
    domain: str
    resolution: int

    def __post_init__(self):
        asym = abs(self.stiffness - self.stiffness.getH()).max()
        if asym > 1e-12 * max(1.0, abs(self.stiffness).max()):
            raise ValueError(f"stiffness not Hermitian: deviation {asym:.2e}")


def _domain_tag(d: RasterDomain) -> str:
    if d.spec is None:
        return "mask"
    s = d.spec
    if s.kind == "disk":
        return f"disk({s.area:g})"
    if s.kind == "rectangle":
        return f"rectangle({s.aspect:g})"
    if s.kind == "ellipse":
        return f"ellipse({s.aspect:g})"
    return s.kind


def _shift_matrix(rows_mask, cols_mask, rows_idx, cols_idx, dj, di):
    """Sparse S with (S v)(c) = v(c + d) for cells in rows_mask, v on cols_mask."""
    ny, nx = rows_mask.shape
    jj, ii = np.nonzero(rows_mask)
    tj, ti = jj + dj, ii + di
    ok = (tj >= 0) & (tj < ny) & (ti >= 0) & (ti < nx)
    tj, ti, jj, ii = tj[ok], ti[ok], jj[ok], ii[ok]
    keep = cols_mask[tj, ti]
    rows = rows_idx[jj[keep], ii[keep]]
    cols = cols_idx[tj[keep], ti[keep]]
    return sp.coo_matrix((np.ones(rows.size), (rows, cols)),
                         shape=(int(rows_mask.sum()), int(cols_mask.sum()))).tocsr()


def assemble_landau(d: RasterDomain, B: float) -> MagneticForm:
    """Peierls five-point discretization of -(grad - iA)^2 - B, A = (-B x2, 0).

    Horizontal hops carry unit-modulus phases exp(-i B x2 h); the product
    of link phases around any plaquette is exactly exp(i B h^2).
    """
    if B < 0:
        raise ValueError("B must be non-negative")
    if B * d.h**2 > 0.5:
        warnings.warn("magnetic flux per plaquette exceeds 0.5: "
                      "increase the resolution for this B", stacklevel=2)
    idx = d.index_map
    n = int(d.mask.sum())
    X, Y = d.cell_centers
    sxp = _shift_matrix(d.mask, d.mask, idx, idx, 0, 1)
    syp = _shift_matrix(d.mask, d.mask, idx, idx, 1, 0)
    phase = sp.diags(np.exp(-1j * B * Y[d.mask] * d.h))
    hop = phase @ sxp + syp
    H = (4.0 * sp.identity(n) - hop - hop.getH()) / d.h**2 - B * sp.identity(n)
    H = ((H + H.getH()) * 0.5).tocsr()
    return MagneticForm(stiffness=H, mass=None, gauge="landau", B=B,
                        domain=_domain_tag(d), resolution=round(1.0 / d.h))


def _one_sided_dbar(d: RasterDomain, weights: np.ndarray, sgn: int):
    """Weighted one-sided dbar block: returns (D, W) with D evaluated on the
    extended cell set (every cell whose forward/backward stencil touches the
    mask), so all Dirichlet wall links enter at full weight."""
    mask = d.mask
    ny, nx = mask.shape
    ev = mask.copy()
    shifted = np.zeros_like(mask)
    if sgn > 0:
        shifted[:, :-1] |= mask[:, 1:]
        shifted[:-1, :] |= mask[1:, :]
    else:
        shifted[:, 1:] |= mask[:, :-1]
        shifted[1:, :] |= mask[:-1, :]
    ev |= shifted
    idx_ev = -np.ones(mask.shape, dtype=np.int64)
    idx_ev[ev] = np.arange(int(ev.sum()))
    idx = d.index_map
    s0 = _shift_matrix(ev, mask, idx_ev, idx, 0, 0)
    sx = _shift_matrix(ev, mask, idx_ev, idx, 0, sgn)
    sy = _shift_matrix(ev, mask, idx_ev, idx, sgn, 0)
    Dx = sgn * (sx - s0) / d.h
    Dy = sgn * (sy - s0) / d.h
    D = (Dx + 1j * Dy) * 0.5
    W = sp.diags(weights[ev])
    return D, W


def assemble_torsion_gauge(d: RasterDomain, B: float,
                           tf: TorsionField) -> MagneticForm:
    """Weighted Cauchy-Riemann form 4 sum w |dbar v|^2, mass diag(w).

    w = exp(2 B phi) with phi the torsion function (zero outside the mask,
    so wall weights are exactly 1).  dbar is discretized by the symmetrized
    pair of one-sided difference forms

        K = 2 (D+^H W+ D+  +  D-^H W- D-),

    whose cross terms cancel in the bulk; the centered stencil decouples
    even and odd sublattices and admits spurious low modes, so it is not
    used.  Pencil (K, diag(w)) eigenvalues approximate lambda_n(Omega, B).
    """
    if B < 0:
        raise ValueError("B must be non-negative")
    if 2.0 * B * tf.max_value > WEIGHT_EXP_CAP:
        raise ValueError("exp(2 B phi_m) overflows double precision; "
                         "reduce B or use the radial solver")
    w = np.exp(2.0 * B * tf.field.values)
    w[~d.mask] = 1.0  # phi = 0 on and outside the wall
    Dp, Wp = _one_sided_dbar(d, w, +1)
    Dm, Wm = _one_sided_dbar(d, w, -1)
    K = 2.0 * (Dp.getH() @ Wp @ Dp + Dm.getH() @ Wm @ Dm)
    K = ((K + K.getH()) * 0.5).tocsr()
    M = sp.diags(w[d.mask]).tocsr()
    return MagneticForm(stiffness=K, mass=M, gauge="torsion", B=B,
                        domain=_domain_tag(d), resolution=round(1.0 / d.h))


def eigenvalues(form: MagneticForm, n: int) -> Spectrum:
    """n smallest pencil eigenvalues by shift-invert Lanczos at shift 0."""
    dim = form.stiffness.shape[0]
    if n < 1:
        raise ValueError("need n >= 1")
    if n > dim - 2:
        raise ValueError(f"n = {n} too close to matrix dimension {dim}")
    vals, vecs = spla.eigsh(form.stiffness, k=n, M=form.mass, sigma=0,
                            which="LM")
    order = np.argsort(vals)
    vals, vecs = vals[order].real, vecs[:, order]
    mass = form.mass if form.mass is not None else sp.identity(dim)
    residuals = np.empty(n)
    for i in range(n):
        v = vecs[:, i]
        mv = mass @ v
        residuals[i] = (np.linalg.norm(form.stiffness @ v - vals[i] * mv)
                        / np.linalg.norm(mv))
    if residuals.max() > EIG_RESIDUAL_TOL:
        raise RuntimeError(f"eigensolver residuals too large: {residuals}")
    method = "landau-fd" if form.gauge == "landau" else "torsion-gauge-fd"
    return Spectrum(eigenvalues=vals, B=form.B, method=method,
                    resolution=form.resolution, domain=form.domain,
                    residuals=residuals)


# -- radial reference for disks ---------------------------------------------

def disk_eigs_radial(area: float, B: float, n: int,
                     m_range: int | None = None,
                     nodes: int = 4096) -> Spectrum:
    """lambda_n of the disk via angular-momentum decomposition.

    For each angular momentum m the radial problem
    -f'' - f'/r + (m/r - B r / 2)^2 f = mu f on (0, R), f(R) = 0, is solved
    with a finite-volume scheme on cell-centered nodes (natural regularity
    at the axis, half-cell wall arm at R); the merged spectrum is shifted
    by -B and sorted.
    """
    if area <= 0 or B < 0 or n < 1:
        raise ValueError("need area > 0, B >= 0, n >= 1")
    R = np.sqrt(area / np.pi)
    if m_range is None:
        m_range = max(3 * n, int(np.ceil(B * R**2 / 2.0)) + 8)
    if m_range < 3 * n:
        raise ValueError(f"m_range = {m_range} must be at least 3 n = {3 * n}")
    dr = R / nodes
    r = (np.arange(nodes) + 0.5) * dr
    rp = np.arange(1, nodes + 1) * dr
    rm = np.arange(nodes) * dr
    vals, ms = [], []
    for m in range(-m_range, m_range + 1):
        main = (rm + rp) / (r * dr**2)
        main[-1] = (rm[-1] + 2.0 * rp[-1]) / (r[-1] * dr**2)  # wall at R
        off = -rp[:-1] / (np.sqrt(r[:-1] * r[1:]) * dr**2)
        V = (m / r - B * r / 2.0) ** 2
        w = eigh_tridiagonal(main + V, off, select="i",
                             select_range=(0, min(n, nodes - 1) - 1),
                             eigvals_only=True)
        vals.extend(w - B)
        ms.extend([m] * len(w))
    order = np.argsort(vals)[:n]
    chosen = np.array(vals)[order]
    if np.max(np.abs(np.array(ms)[order])) >= m_range:
        warnings.warn("n-th eigenvalue sits at the angular-momentum range "
                      "edge; increase m_range", stacklevel=2)
    return Spectrum(eigenvalues=chosen, B=B, method="radial-disk",
                    resolution=nodes, domain=f"disk({area:g})")


# -- variational bounds ------------------------------------------------------

def trial_upper_bound(d: RasterDomain, tf: TorsionField, B: float,
                      n: int) -> float:
    """Upper bound for lambda_n from cutoff-monomial trial functions.

    Trial space span{v_0..v_{n-1}}, v_k = chi(B dist) * B^{(k+1)/2} z^k
    * exp(-B phi_m) with z centered at the torsion maximum and
    chi(t) = min(t, 1).  Evaluated on the assembled torsion-gauge pencil,
    the largest Gram eigenvalue dominates the n-th discrete eigenvalue.
    """
    if B <= 0:
        raise ValueError("trial bound needs B > 0 (the cutoff vanishes at 0)")
    res = round(1.0 / d.h)
    if B > res / 4.0:
        raise ValueError(f"B = {B:g} unresolved at resolution {res}; "
                         "need B <= resolution / 4")
    if n < 1:
        raise ValueError("need n >= 1")
    form = assemble_torsion_gauge(d, B, tf)
    dist = boundary_distance(d).values
    chi = np.minimum(B * dist, 1.0)
    if not np.any(chi[d.mask] > 0):
        raise RuntimeError("cutoff support is empty on the grid")
    X, Y = d.cell_centers
    z = (X - tf.max_location[0]) + 1j * (Y - tf.max_location[1])
    cells = d.mask
    V = np.empty((int(cells.sum()), n), complex)
    scale = np.exp(-B * tf.max_value)
    for k in range(n):
        vk = chi * B ** ((k + 1) / 2.0) * z**k * scale
        V[:, k] = vk[cells]
    GK = V.conj().T @ (form.stiffness @ V)
    GM = V.conj().T @ (form.mass @ V)
    GK = (GK + GK.conj().T) / 2.0
    GM = (GM + GM.conj().T) / 2.0
    vals = la.eigh(GK, GM, eigvals_only=True)
    return float(vals[-1])


def torsion_lower_bound(d: RasterDomain, tf: TorsionField, B: float) -> float:
    """Closed-form lower bound pi j01^2 / area * exp(-2 B phi_m)."""
    if B < 0:
        raise ValueError("B must be non-negative")
    return np.pi * J01**2 / d.area * np.exp(-2.0 * B * tf.max_value)

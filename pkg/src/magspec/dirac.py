"""Two-sided bounds for magnetic Dirac eigenvalues with zigzag-free
infinite-mass boundary conditions.

The positive Dirac eigenvalues on a smooth planar domain admit a nonlinear
variational characterization whose Rayleigh-type quotient, restricted to
the weighted Hardy space {u = exp(B phi) p(z), p holomorphic}, collapses
to a ratio of boundary and interior norms.  The operator itself is never
discretized (that path invites spectral pollution); everything flows
through Gram matrices of the monomial basis u_k = exp(B phi) z^k:

    upper bounds: generalized eigenvalues of (boundary Gram, interior Gram),
    lower bound:  sqrt(2 pi / area) * exp(-2 B phi_m).

Rectangles are excluded: the variational machinery here assumes a C^2
boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as la
from scipy.optimize import brentq
from scipy.special import j0, j1

from .geometry import DomainSpec, RasterDomain
from .torsion import TorsionField

__all__ = [
    "ParametricBoundary",
    "HardyGrams",
    "parametric_boundary",
    "hardy_basis_grams",
    "dirac_upper_bounds",
    "dirac_lower_bound",
    "dirac_disk_reference",
    "minmax_quotient",
]

GRAM_FLOOR = 1e-12  # relative eigenvalue floor when whitening the interior Gram


@dataclass(frozen=True)
class ParametricBoundary:
    """Smooth boundary sampling: points, outward normals, arc-length weights.

    The curve is closed (last point repeats the first, with zero quadrature
    weight); weights implement the periodic rectangle rule on the uniform
    parameter grid, so their sum is the curve length to spectral accuracy.
    """

    points: np.ndarray
    normals: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        p, nv, w = self.points, self.normals, self.weights
        if not (len(p) == len(nv) == len(w)):
            raise ValueError("points, normals, weights must align")
        if np.linalg.norm(p[0] - p[-1]) > 1e-8:
            raise ValueError("boundary curve must close")
        norms = np.linalg.norm(nv, axis=1)
        if np.abs(norms - 1.0).max() > 1e-10:
            raise ValueError("normals must be unit vectors")
        seg = np.diff(p, axis=0)
        polyline = np.sum(np.hypot(seg[:, 0], seg[:, 1]))
        if abs(w.sum() - polyline) > 2e-3 * polyline:
            raise ValueError("quadrature weights do not sum to the perimeter")

    @property
    def perimeter(self) -> float:
        return float(self.weights.sum())


def parametric_boundary(spec: DomainSpec, samples: int = 1024) -> ParametricBoundary:
    """Uniform-parameter boundary sampling for smooth specs.

    Supports disk, ellipse, and perturbed-disk; rectangles and polygons are
    rejected (corner domains fall outside the smooth-boundary hypothesis).
    """
    if spec.kind not in ("disk", "ellipse", "perturbed-disk"):
        raise ValueError(f"no smooth boundary for kind {spec.kind!r}")
    theta = np.arange(samples) * (2.0 * np.pi / samples)
    cx, cy = spec.center
    if spec.kind == "disk":
        R = np.sqrt(spec.area / np.pi)
        gx, gy = R * np.cos(theta), R * np.sin(theta)
        dgx, dgy = -R * np.sin(theta), R * np.cos(theta)
    elif spec.kind == "ellipse":
        a, b = spec._ellipse_semiaxes()
        gx, gy = a * np.cos(theta), b * np.sin(theta)
        dgx, dgy = -a * np.sin(theta), b * np.cos(theta)
    else:
        r = spec._radius_of(theta)
        # periodic central difference for r'(theta) on the sample grid
        dtheta = 2.0 * np.pi / samples
        dr = (np.roll(r, -1) - np.roll(r, 1)) / (2.0 * dtheta)
        gx, gy = r * np.cos(theta), r * np.sin(theta)
        dgx = dr * np.cos(theta) - r * np.sin(theta)
        dgy = dr * np.sin(theta) + r * np.cos(theta)
    speed = np.hypot(dgx, dgy)
    nx, ny = dgy / speed, -dgx / speed  # outward for counterclockwise curves
    points = np.column_stack([gx + cx, gy + cy])
    normals = np.column_stack([nx, ny])
    weights = speed * (2.0 * np.pi / samples)
    points = np.vstack([points, points[:1]])
    normals = np.vstack([normals, normals[:1]])
    weights = np.concatenate([weights, [0.0]])
    return ParametricBoundary(points=points, normals=normals, weights=weights)


@dataclass(frozen=True)
class HardyGrams:
    """Boundary and interior Gram matrices of the Hardy monomial basis."""

    boundary_gram: np.ndarray
    interior_gram: np.ndarray
    K: int
    B: float

    def __post_init__(self):
        for g in (self.boundary_gram, self.interior_gram):
            if np.abs(g - g.conj().T).max() > 1e-10 * max(1.0, np.abs(g).max()):
                raise ValueError("Gram matrices must be Hermitian")


def hardy_basis_grams(d: RasterDomain, pb: ParametricBoundary,
                      tf: TorsionField, B: float, K: int) -> HardyGrams:
    """Grams of u_k = exp(B phi) z^k, k = 0..K, centered at the torsion max.

    Interior entries are cell sums of exp(2 B phi) conj(z)^j z^k; boundary
    entries are arc-length quadrature of conj(z)^j z^k (phi vanishes on the
    wall, so the weight there is exactly 1).  Monomials are radius-scaled
    before assembly; the generalized eigenvalues are invariant under that
    diagonal congruence.
    """
    if K < 0:
        raise ValueError("need K >= 0")
    n_samples = len(pb.points) - 1
    if n_samples < 16 * (K + 1):
        raise ValueError(f"need at least {16 * (K + 1)} boundary samples "
                         f"for K = {K}, got {n_samples}")
    z0 = complex(*tf.max_location)
    zb = pb.points[:, 0] + 1j * pb.points[:, 1] - z0
    R = np.abs(zb).max()
    X, Y = d.cell_centers
    zi = (X[d.mask] + 1j * Y[d.mask] - z0) / R
    wi = np.exp(2.0 * B * tf.field.values[d.mask]) * d.h**2
    powers = np.arange(K + 1)
    Zi = zi[:, None] ** powers[None, :]
    Gi = Zi.conj().T @ (wi[:, None] * Zi)
    Zb = (zb / R)[:, None] ** powers[None, :]
    Gb = Zb.conj().T @ (pb.weights[:, None] * Zb)
    Gi = (Gi + Gi.conj().T) / 2.0
    Gb = (Gb + Gb.conj().T) / 2.0
    return HardyGrams(boundary_gram=Gb, interior_gram=Gi, K=K, B=B)


def dirac_upper_bounds(g: HardyGrams, n: int) -> np.ndarray:
    """First n generalized eigenvalues of (boundary Gram, interior Gram).

    Each value bounds the corresponding positive Dirac eigenvalue from
    above (min-max over the spanned Hardy subspace).  The interior Gram is
    whitened by eigendecomposition with a relative floor, which performs
    the pivoted-orthogonalization role for the ill-conditioned monomial
    basis.
    """
    if n < 1 or n > g.K + 1:
        raise ValueError(f"need 1 <= n <= K+1 = {g.K + 1}")
    s, U = la.eigh(g.interior_gram)
    keep = s > GRAM_FLOOR * s.max()
    if keep.sum() < n:
        raise ValueError("interior Gram too ill-conditioned for requested n")
    T = U[:, keep] / np.sqrt(s[keep])[None, :]
    core = T.conj().T @ g.boundary_gram @ T
    core = (core + core.conj().T) / 2.0
    vals = np.sort(la.eigvalsh(core))
    return vals[:n]


def dirac_lower_bound(area: float, phi_max: float, B: float) -> float:
    """sqrt(2 pi / area) * exp(-2 B phi_max), valid for every smooth domain."""
    if area <= 0 or phi_max <= 0 or B < 0:
        raise ValueError("need area > 0, phi_max > 0, B >= 0")
    return float(np.sqrt(2.0 * np.pi / area) * np.exp(-2.0 * B * phi_max))


def dirac_disk_reference(area: float = 1.0) -> float:
    """First positive Dirac eigenvalue of the disk at B = 0.

    On the unit-radius disk the eigenvalue is the root of J_0(e) = J_1(e)
    (about 1.4347); scaling to the disk of the given area divides by its
    radius.
    """
    e1 = brentq(lambda e: j0(e) - j1(e), 1.0, 2.0, xtol=1e-14)
    return float(e1 / np.sqrt(area / np.pi))


def minmax_quotient(boundary_norm2: float, interior_norm2: float,
                    dbar_norm2: float) -> float:
    """(b + sqrt(b^2 + 4 a q)) / (2 a) with b, a, q the boundary, interior
    and dbar squared norms; equals b/a when q = 0 (Hardy collapse)."""
    if interior_norm2 <= 0:
        raise ValueError("interior norm must be positive")
    if boundary_norm2 < 0 or dbar_norm2 < 0:
        raise ValueError("squared norms must be non-negative")
    b, a, q = boundary_norm2, interior_norm2, dbar_norm2
    return float((b + np.sqrt(b * b + 4.0 * a * q)) / (2.0 * a))

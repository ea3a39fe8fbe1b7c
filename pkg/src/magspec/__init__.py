"""Spectral geometry of planar magnetic operators.

Tools for Dirichlet torsion functions, magnetic Laplacian and Dirac
eigenvalue bounds, and Fraenkel asymmetry on planar domains, plus a
verification battery that numerically exercises the inequalities tying
them together.
"""

from .dirac import (
    HardyGrams,
    ParametricBoundary,
    dirac_disk_reference,
    dirac_lower_bound,
    dirac_upper_bounds,
    hardy_basis_grams,
    minmax_quotient,
    parametric_boundary,
)
from .geometry import (
    DomainSpec,
    RasterDomain,
    ScalarField,
    boundary_distance,
    disk,
    ellipse,
    fraenkel_asymmetry,
    perimeter,
    perturbed_disk,
    polygon,
    rasterize,
    rectangle,
    symmetric_difference_area,
)
from .maglap import (
    MagneticForm,
    Spectrum,
    assemble_landau,
    assemble_torsion_gauge,
    disk_eigs_radial,
    eigenvalues,
    torsion_lower_bound,
    trial_upper_bound,
)
from .reports import BoundReport, DecayFit, make_report
from .torsion import (
    LevelSetProfile,
    TorsionField,
    g_function,
    level_set_profile,
    rect_deficit_bound,
    series_identities_check,
    solve_torsion_fd,
    talenti_deficit,
    torsion_disk_max,
    torsion_rect_series,
)
from .verify import fit_decay, fitted_ratio_constant, richardson_tolerance, run_all

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "DecayFit",
    "DomainSpec",
    "HardyGrams",
    "LevelSetProfile",
    "MagneticForm",
    "ParametricBoundary",
    "RasterDomain",
    "ScalarField",
    "Spectrum",
    "TorsionField",
    "assemble_landau",
    "assemble_torsion_gauge",
    "boundary_distance",
    "dirac_disk_reference",
    "dirac_lower_bound",
    "dirac_upper_bounds",
    "disk",
    "disk_eigs_radial",
    "eigenvalues",
    "ellipse",
    "fit_decay",
    "fitted_ratio_constant",
    "fraenkel_asymmetry",
    "g_function",
    "hardy_basis_grams",
    "level_set_profile",
    "make_report",
    "minmax_quotient",
    "parametric_boundary",
    "perimeter",
    "perturbed_disk",
    "polygon",
    "rasterize",
    "rect_deficit_bound",
    "rectangle",
    "richardson_tolerance",
    "run_all",
    "series_identities_check",
    "solve_torsion_fd",
    "symmetric_difference_area",
    "talenti_deficit",
    "torsion_disk_max",
    "torsion_lower_bound",
    "torsion_rect_series",
    "trial_upper_bound",
]

"""Structured records for checked inequalities and asymptotic fits."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["BoundReport", "DecayFit", "make_report"]


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one checked inequality.

    Orientation is normalized so that margin = lhs - rhs and margin >= -tol
    means pass.  `vacuous` marks checks whose hypothesis is below the noise
    floor (e.g. asymmetry under the grid resolution); these never fail.
    provenance lists the inputs (domain, B, resolution, method) the numbers
    came from; extras carries auxiliary reported quantities that are not
    part of the asserted inequality.
    """

    name: str
    reference: str
    lhs: float
    rhs: float
    margin: float
    status: str  # pass | fail | vacuous
    provenance: tuple
    extras: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "reference": self.reference,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "status": self.status,
            "provenance": list(self.provenance),
            "extras": dict(self.extras),
        }


def make_report(name: str, reference: str, lhs: float, rhs: float,
                tolerance: float = 0.0, vacuous: bool = False,
                provenance=(), extras=None) -> BoundReport:
    margin = float(lhs) - float(rhs)
    if vacuous:
        status = "vacuous"
    else:
        status = "pass" if margin >= -abs(tolerance) else "fail"
    return BoundReport(name=name, reference=reference, lhs=float(lhs),
                       rhs=float(rhs), margin=margin, status=status,
                       provenance=tuple(provenance),
                       extras=dict(extras or {}))


@dataclass(frozen=True)
class DecayFit:
    """Least-squares fit of ln(lambda) = ln(C) + p ln(B) + slope * B.

    slope is the coefficient of B (negative for decaying families) and is
    compared against -2 * phi_max by callers; prefactor_exponent is p.
    """

    slope: float
    prefactor_exponent: float
    residual: float
    B_window: tuple

    def as_dict(self) -> dict:
        return {
            "slope": self.slope,
            "prefactor_exponent": self.prefactor_exponent,
            "residual": self.residual,
            "B_window": list(self.B_window),
        }

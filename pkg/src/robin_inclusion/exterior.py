"""Exterior corrector: the point-source strength c0 and the decaying harmonic
correction w0 outside the unit disk in inclusion-scaled coordinates.

Robin scaling under the change of variables xi = (x - c) / eps: the physical
inclusion condition  u - kappa du/drho = data  at rho = eps becomes

    u - (kappa / eps) du/d|xi| = data   at |xi| = 1,

so the extrapolation length in rescaled coordinates is kappa/eps, not kappa.
solve_exterior_robin is the generic unit-circle solver (used as-is by the
limit-lemma validators, where no rescaling is involved); solve_w0 applies it
with the rescaled length so that the corrector's physical Robin trace matches
its boundary data exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boundary_data import FourierData
from .geometry import Geometry
from .interior import GreensFunction
from .series import HarmonicSeries, SeriesKind

__all__ = [
    "ExteriorCorrector",
    "build_corrector",
    "compute_c0",
    "solve_exterior_robin",
    "solve_w0",
]

TWO_PI = 2.0 * np.pi


def solve_exterior_robin(data: FourierData, kappa: float) -> HarmonicSeries:
    """Bounded harmonic function outside the unit disk with
    (u - kappa du/dr)|_{r=1} = data and limit at infinity equal to data.mean.

    Mode n of a decaying expansion picks up the factor (1 + kappa n) under the
    exterior Robin operator at r = 1, so each coefficient is one division; the
    constant passes through untouched.
    """
    if not kappa > 0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    coeffs = tuple(
        (a / (1.0 + kappa * n), b / (1.0 + kappa * n))
        for n, (a, b) in enumerate(data.coeffs, start=1)
    )
    return HarmonicSeries(
        kind=SeriesKind.EXTERIOR_DECAYING,
        center=(0.0, 0.0),
        mean=data.mean,
        coeffs=coeffs,
    )


def compute_c0(
    geom: Geometry,
    kappa: float,
    f_D_mean: float,
    V0_at_c: float,
    G_reg_at_c: float,
) -> float:
    """Source strength making the exterior corrector decay at infinity.

    c0 = (mean(f_D) - V0(c)) / (G_reg(c) + kappa/(2 pi eps) - log(eps)/(2 pi)).

    The denominator is positive for the geometries this package accepts; a
    non-positive value signals a geometry/parameter pathology and is rejected.
    """
    eps = geom.eps
    denom = G_reg_at_c + kappa / (TWO_PI * eps) - np.log(eps) / TWO_PI
    if not denom > 0:
        raise ValueError(
            f"non-positive denominator {denom} in the source-strength formula; "
            "geometry/parameter pathology (expected positive for eps < 1, "
            "kappa > 0)"
        )
    return float((f_D_mean - V0_at_c) / denom)


def solve_w0(
    f_D: FourierData,
    kappa: float,
    eps: float,
    drift,
) -> HarmonicSeries:
    """Decaying corrector in rescaled coordinates rho = |x - c| / eps.

    Boundary data on the unit circle: the mean-free part of f_D plus the
    mode-one coupling kappa * drift . (cos t, sin t), where drift is the
    gradient term inherited from the interior solution and the Green's
    function.  The Robin operator at rho = 1 carries the rescaled
    extrapolation length kappa/eps (see module docstring), so the mode-n
    coefficient is data_n / (1 + (kappa/eps) n).  The drift touches mode one
    only.
    """
    if not kappa > 0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    dx, dy = float(drift[0]), float(drift[1])
    order = f_D.order
    if dx != 0.0 or dy != 0.0:
        order = max(order, 1)
    pairs = list(f_D.coeffs) + [(0.0, 0.0)] * (order - f_D.order)
    if order >= 1:
        a1, b1 = pairs[0]
        pairs[0] = (a1 + kappa * dx, b1 + kappa * dy)
    data = FourierData(0.0, tuple(pairs))
    return solve_exterior_robin(data, kappa / eps)


@dataclass(frozen=True)
class ExteriorCorrector:
    """c0 and w0 bundled with the parameters they were built for.

    w0 is stored in rescaled coordinates (series about the origin in xi); use
    physical_series for evaluation at physical points.  drift is recorded for
    inspection.
    """

    c0: float
    w0: HarmonicSeries
    kappa: float
    eps: float
    drift: tuple[float, float]

    def physical_series(self, center) -> HarmonicSeries:
        """The same function of physical x: mode n scales by eps^n."""
        coeffs = tuple(
            (a * self.eps**n, b * self.eps**n)
            for n, (a, b) in enumerate(self.w0.coeffs, start=1)
        )
        return HarmonicSeries(
            kind=SeriesKind.EXTERIOR_DECAYING,
            center=(float(center[0]), float(center[1])),
            mean=self.w0.mean,
            coeffs=coeffs,
            log_coeff=self.w0.log_coeff,
        )


def build_corrector(
    geom: Geometry,
    kappa: float,
    f_D: FourierData,
    V0: HarmonicSeries,
    green: GreensFunction,
    c0_scale: float = 1.0,
) -> ExteriorCorrector:
    """Assemble c0, the drift vector and w0 from the interior solves.

    c0_scale rescales c0 away from its defining value; it exists solely for
    sensitivity/negative-control experiments and must stay at 1.0 for a
    correct approximation.
    """
    c = geom.center_array
    V0_at_c = V0.value(c)
    G_at_c = green.regular_part.value(c)
    c0 = c0_scale * compute_c0(geom, kappa, f_D.mean, V0_at_c, G_at_c)
    drift_vec = V0.grad(c) + c0 * green.regular_part.grad(c)
    drift = (float(drift_vec[0]), float(drift_vec[1]))
    w0 = solve_w0(f_D, kappa, geom.eps, drift)
    return ExteriorCorrector(c0=c0, w0=w0, kappa=kappa, eps=geom.eps, drift=drift)

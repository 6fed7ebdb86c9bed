"""Interior solvers on the disk: the bounded harmonic part and the regular
part of the Robin Green's function.

On a disk the Robin condition diagonalises over Fourier modes, so both solves
reduce to one scalar division per mode:

    u = mean + sum r^n (a_n cos + b_n sin),   u + kappa du/dr = data at r = R
    => a_n = data_n / (R^n (1 + kappa n / R)),  mean = data mean.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .boundary_data import FourierData, fourier_project
from .geometry import Geometry, equispaced_angles
from .series import HarmonicSeries, SeriesKind

__all__ = [
    "GreensFunction",
    "outer_robin_trace",
    "solve_green_regular",
    "solve_V0",
]

TWO_PI = 2.0 * np.pi


def _mode_solve(geom: Geometry, kappa: float, data: FourierData) -> HarmonicSeries:
    R = geom.R
    coeffs = []
    for n, (a, b) in enumerate(data.coeffs, start=1):
        denom = R**n * (1.0 + kappa * n / R)
        coeffs.append((a / denom, b / denom))
    return HarmonicSeries(
        kind=SeriesKind.INTERIOR_REGULAR,
        center=(0.0, 0.0),
        mean=data.mean,
        coeffs=tuple(coeffs),
    )


def outer_robin_trace(series, geom: Geometry, kappa: float, theta) -> np.ndarray:
    """(u + kappa du/dr) on the outer circle at angles theta.

    Works for anything exposing value/grad; the normal is radial about the
    origin.
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    pts = geom.outer_point(theta)
    nx, ny = np.cos(theta), np.sin(theta)
    g = series.grad(pts)
    return series.value(pts) + kappa * (g[..., 0] * nx + g[..., 1] * ny)


def solve_V0(geom: Geometry, kappa: float, f_outer: FourierData) -> HarmonicSeries:
    """Bounded harmonic function with Robin data f_outer on the outer circle."""
    if not kappa > 0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    return _mode_solve(geom, kappa, f_outer)


@dataclass(frozen=True)
class GreensFunction:
    """Robin Green's function with source at the inclusion centre.

    Splits into the free-space logarithm and a smooth regular part:
    value(x) = -log|x - source| / (2 pi) + regular_part(x).  The regular part
    is an interior-regular series about the origin cancelling the Robin trace
    of the logarithm on the outer circle.
    """

    regular_part: HarmonicSeries
    source: tuple[float, float]
    kappa: float

    def value(self, x):
        x = np.asarray(x, dtype=float)
        dx = x[..., 0] - self.source[0]
        dy = x[..., 1] - self.source[1]
        r = np.hypot(dx, dy)
        out = -np.log(r) / TWO_PI + self.regular_part.value(x)
        return out if np.ndim(out) else float(out)

    def grad(self, x):
        x = np.asarray(x, dtype=float)
        dx = x[..., 0] - self.source[0]
        dy = x[..., 1] - self.source[1]
        r2 = dx * dx + dy * dy
        g = self.regular_part.grad(x)
        g = g - np.stack([dx / r2, dy / r2], axis=-1) / TWO_PI
        return g


def green_boundary_rhs(geom: Geometry, kappa: float, theta) -> np.ndarray:
    """Robin trace on the outer circle that the regular part must match.

    With n(x) the outward unit normal at x on the outer circle and y the
    source, the requirement on the regular part G_reg is

        G_reg + kappa dG_reg/dn = log|x-y|/(2 pi)
                                  + (kappa/(2 pi)) ((x-y).n(x)) / |x-y|^2.
    """
    theta = np.asarray(theta, dtype=float)
    pts = geom.outer_point(theta)
    cx, cy = geom.center
    dx = pts[..., 0] - cx
    dy = pts[..., 1] - cy
    r2 = dx * dx + dy * dy
    nx, ny = np.cos(theta), np.sin(theta)
    return np.log(np.sqrt(r2)) / TWO_PI + kappa * (dx * nx + dy * ny) / (TWO_PI * r2)


def solve_green_regular(
    geom: Geometry,
    kappa: float,
    order: int = 64,
    n_samples: int | None = None,
) -> GreensFunction:
    """Regular part of the Robin Green's function with source at the inclusion
    centre, by sampling its outer-circle Robin data and dividing per mode.

    The data is smooth (the source is interior) but its Fourier decay slows as
    the centre approaches the outer circle, hence the larger default order.  A
    warning is emitted when the last kept coefficient is not negligible.
    """
    if not kappa > 0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    if n_samples is None:
        n_samples = 4 * order + 2
    if n_samples < 4 * order + 2:
        raise ValueError(
            f"need at least 4*order+2={4 * order + 2} samples, got {n_samples}"
        )
    theta = equispaced_angles(n_samples)
    rhs = green_boundary_rhs(geom, kappa, theta)
    data = fourier_project(list(zip(theta, rhs)), order)
    mags = data.magnitudes()
    if mags.size:
        largest = max(float(np.max(mags)), abs(data.mean), 1e-300)
        if mags[-1] > 1e-10 * largest:
            warnings.warn(
                "Green's function series may be under-resolved: last kept "
                f"coefficient {mags[-1]:.3e} exceeds 1e-10 of the largest "
                f"({largest:.3e}); increase the order",
                stacklevel=2,
            )
    regular = _mode_solve(geom, kappa, data)
    return GreensFunction(regular_part=regular, source=geom.center, kappa=kappa)

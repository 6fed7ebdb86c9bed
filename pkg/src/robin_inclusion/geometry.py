"""Disk-with-inclusion geometry.

The domain is the open disk of radius R centred at the origin, perforated by a
closed circular inclusion of radius eps centred at c.  Normal conventions used
throughout the package:

* on the outer circle the outward normal is the radial direction about the
  origin (+d/dr),
* on the inclusion circle the normal that points out of the perforated domain
  points INTO the inclusion, i.e. d/dn = -d/drho with rho = |x - c|.

Every Robin trace in this package follows these two conventions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "Boundary",
    "BoundaryPoint",
    "Geometry",
    "PointClass",
    "boundary_coords",
    "classify",
    "equispaced_angles",
    "make_geometry",
    "sample_boundary",
]


class Boundary(Enum):
    """Which of the two boundary circles a point lives on."""

    OUTER = "outer"
    INCLUSION = "inclusion"


class PointClass(Enum):
    INTERIOR = "interior"
    INSIDE_INCLUSION = "inside_inclusion"
    ON_OUTER_BOUNDARY = "on_outer_boundary"
    ON_INCLUSION_BOUNDARY = "on_inclusion_boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class Geometry:
    """Validated disk-plus-inclusion geometry.

    r_min and r_max are the distances from the inclusion centre to the nearest
    and farthest point of the outer circle; for a disk they are R -+ |c|.
    Instances are immutable and safe to share between workers.
    """

    R: float
    center: tuple[float, float]
    eps: float
    r_min: float
    r_max: float

    @property
    def center_array(self) -> np.ndarray:
        return np.array(self.center, dtype=float)

    def outer_point(self, theta):
        """Point(s) on the outer circle at angle(s) theta."""
        theta = np.asarray(theta, dtype=float)
        return np.stack(
            [self.R * np.cos(theta), self.R * np.sin(theta)], axis=-1
        )

    def inclusion_point(self, theta):
        """Point(s) on the inclusion circle at angle(s) theta."""
        theta = np.asarray(theta, dtype=float)
        cx, cy = self.center
        return np.stack(
            [cx + self.eps * np.cos(theta), cy + self.eps * np.sin(theta)],
            axis=-1,
        )


def make_geometry(R: float, center, eps: float) -> Geometry:
    """Validate and build a Geometry.

    Rejects configurations violating the standing assumptions: the inclusion
    centre must be strictly interior and the inclusion small, eps <= r_min / 2.
    """
    if not R > 0:
        raise ValueError(f"outer radius must be positive, got R={R}")
    cx, cy = float(center[0]), float(center[1])
    dist = math.hypot(cx, cy)
    if dist >= R:
        raise ValueError(
            f"inclusion center must be strictly interior: |c|={dist} >= R={R}"
        )
    r_min = R - dist
    r_max = R + dist
    if not eps > 0:
        raise ValueError(f"inclusion radius must be positive, got eps={eps}")
    if eps > r_min / 2:
        raise ValueError(
            "epsilon bound violated: the small-inclusion assumption requires "
            f"eps <= r_min/2 = {r_min / 2}, got eps={eps}"
        )
    return Geometry(R=float(R), center=(cx, cy), eps=float(eps),
                    r_min=r_min, r_max=r_max)


def classify(g: Geometry, x, atol: float | None = None) -> PointClass:
    """Classify a point against the two circles.

    atol is the absolute on-boundary tolerance; the default 1e-12 * R keeps
    classification invariant under uniform rescaling of the geometry.
    """
    if atol is None:
        atol = 1e-12 * g.R
    x = np.asarray(x, dtype=float)
    r = float(np.hypot(x[0], x[1]))
    rho = float(np.hypot(x[0] - g.center[0], x[1] - g.center[1]))
    if abs(rho - g.eps) <= atol:
        return PointClass.ON_INCLUSION_BOUNDARY
    if abs(r - g.R) <= atol:
        return PointClass.ON_OUTER_BOUNDARY
    if r > g.R:
        return PointClass.OUTSIDE
    if rho < g.eps:
        return PointClass.INSIDE_INCLUSION
    return PointClass.INTERIOR


@dataclass(frozen=True)
class BoundaryPoint:
    """Angular coordinate on one of the boundary circles, angle in [-pi, pi)."""

    which: Boundary
    angle: float


def equispaced_angles(m: int) -> np.ndarray:
    """m equispaced angles theta_j = -pi + 2*pi*j/m, j = 0..m-1."""
    if m < 1:
        raise ValueError(f"need at least one angle, got m={m}")
    return -np.pi + 2.0 * np.pi * np.arange(m) / m


def sample_boundary(g: Geometry, which: Boundary, m: int) -> list[BoundaryPoint]:
    """m equispaced boundary points starting at angle -pi."""
    return [BoundaryPoint(which, float(t)) for t in equispaced_angles(m)]


def boundary_coords(g: Geometry, p: BoundaryPoint) -> np.ndarray:
    """Physical coordinates of a boundary point."""
    if p.which is Boundary.OUTER:
        return g.outer_point(p.angle)
    return g.inclusion_point(p.angle)

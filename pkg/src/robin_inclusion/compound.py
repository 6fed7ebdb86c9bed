"""Assembly and evaluation of the leading-order compound approximation

    u0(x) = V0(x) + c0 * G(x, c) + w0((x - c) / eps),

defined on the closed perforated disk.  V0 matches the outer Robin data, the
Green's-function term supplies the point-source degree of freedom that lets
w0 decay at infinity, and w0 repairs the inclusion-boundary data to leading
order.  The Green's-function term is kept exact here; Taylor expansions of it
belong to the error analysis, not the evaluator.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .boundary_data import RobinData
from .exterior import ExteriorCorrector, build_corrector
from .geometry import Boundary, BoundaryPoint, Geometry, equispaced_angles
from .interior import GreensFunction, outer_robin_trace, solve_green_regular, solve_V0
from .series import HarmonicSeries

__all__ = ["CompoundApproximation", "build", "dump_field_csv"]


@dataclass(frozen=True)
class CompoundApproximation:
    geometry: Geometry
    kappa: float
    V0: HarmonicSeries
    green: GreensFunction
    corrector: ExteriorCorrector
    w0_physical: HarmonicSeries
    data: RobinData
    diagnostics: dict = field(default_factory=dict)

    @property
    def c0(self) -> float:
        return self.corrector.c0

    @property
    def drift(self) -> tuple[float, float]:
        return self.corrector.drift

    def _check_domain(self, x):
        x = np.asarray(x, dtype=float)
        g = self.geometry
        r = np.hypot(x[..., 0], x[..., 1])
        rho = np.hypot(x[..., 0] - g.center[0], x[..., 1] - g.center[1])
        tol = 1e-12 * g.R
        if np.any(r > g.R + tol):
            raise ValueError("evaluation point outside the outer disk")
        if np.any(rho < g.eps - tol):
            raise ValueError("evaluation point inside the open inclusion")
        return x

    def value(self, x):
        """u0 at point(s) of the closed perforated disk."""
        x = self._check_domain(x)
        out = (
            self.V0.value(x)
            + self.c0 * self.green.value(x)
            + self.w0_physical.value(x)
        )
        return out

    def grad(self, x):
        """Gradient of u0; every part is differentiated analytically."""
        x = self._check_domain(x)
        return (
            self.V0.grad(x)
            + self.c0 * self.green.grad(x)
            + self.w0_physical.grad(x)
        )

    def robin_trace(self, p: BoundaryPoint) -> float:
        """(I + kappa d/dn) u0 at a boundary point.

        d/dn is +d/dr on the outer circle and -d/drho on the inclusion circle
        (normal pointing out of the perforated domain, into the inclusion).
        """
        return float(self.robin_trace_profile(p.which, [p.angle])[0])

    def robin_trace_profile(self, which: Boundary, angles) -> np.ndarray:
        angles = np.asarray(angles, dtype=float)
        g = self.geometry
        if which is Boundary.OUTER:
            pts = g.outer_point(angles)
            normals = np.stack([np.cos(angles), np.sin(angles)], axis=-1)
        else:
            pts = g.inclusion_point(angles)
            normals = -np.stack([np.cos(angles), np.sin(angles)], axis=-1)
        grads = self.grad(pts)
        return self.value(pts) + self.kappa * np.sum(grads * normals, axis=-1)


def build(
    geom: Geometry,
    kappa: float,
    data: RobinData,
    order: int = 32,
    green_order: int = 64,
    c0_scale: float = 1.0,
) -> CompoundApproximation:
    """Run the full pipeline: V0, Green's regular part, c0, drift, w0.

    order bounds the modes taken from the boundary data; green_order controls
    the Green's-function resolution.  c0_scale is the negative-control knob,
    see build_corrector.  Diagnostics record c0, the drift and the Robin
    residuals of the two interior solves on validation grids.
    """
    if not kappa > 0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    V0 = solve_V0(geom, kappa, data.f_outer)
    green = solve_green_regular(geom, kappa, order=green_order)
    corrector = build_corrector(
        geom, kappa, data.f_inclusion, V0, green, c0_scale=c0_scale
    )
    w0_physical = corrector.physical_series(geom.center)

    n_val = 4 * max(order, data.f_outer.order, 1) + 5
    theta = equispaced_angles(n_val)
    res_V0 = float(
        np.max(
            np.abs(
                outer_robin_trace(V0, geom, kappa, theta)
                - data.f_outer.eval(theta)
            )
        )
    )
    res_green = float(
        np.max(np.abs(outer_robin_trace(green, geom, kappa, theta)))
    )
    res_w0 = _w0_residual(corrector, data)
    diagnostics = {
        "c0": corrector.c0,
        "drift": corrector.drift,
        "residual_V0": res_V0,
        "residual_green": res_green,
        "residual_w0": res_w0,
    }
    return CompoundApproximation(
        geometry=geom,
        kappa=kappa,
        V0=V0,
        green=green,
        corrector=corrector,
        w0_physical=w0_physical,
        data=data,
        diagnostics=diagnostics,
    )


def _w0_residual(corrector: ExteriorCorrector, data: RobinData) -> float:
    """Max mismatch of the corrector's unit-circle Robin trace against its
    boundary data, on a validation grid."""
    w0 = corrector.w0
    kappa_resc = corrector.kappa / corrector.eps
    n_val = 4 * max(w0.order, 1) + 5
    theta = equispaced_angles(n_val)
    pts = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    g = w0.grad(pts)
    trace = w0.value(pts) - kappa_resc * (
        g[..., 0] * pts[..., 0] + g[..., 1] * pts[..., 1]
    )
    f_D = data.f_inclusion
    dxn, dyn = corrector.drift
    expected = (
        f_D.eval(theta)
        - f_D.mean
        + corrector.kappa * (dxn * np.cos(theta) + dyn * np.sin(theta))
    )
    return float(np.max(np.abs(trace - expected)))


def dump_field_csv(ca: CompoundApproximation, path, n_r: int = 64, n_theta: int = 64):
    """Evaluate u0 on a polar grid and write rows (x, y, u0) to a CSV file."""
    g = ca.geometry
    radii = g.R * (np.arange(1, n_r + 1) / n_r)
    theta = equispaced_angles(n_theta)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y", "u0"])
        for r in radii:
            pts = np.stack([r * np.cos(theta), r * np.sin(theta)], axis=-1)
            rho = np.hypot(pts[:, 0] - g.center[0], pts[:, 1] - g.center[1])
            keep = rho >= g.eps * (1.0 - 1e-12)
            if not np.any(keep):
                continue
            vals = ca.value(pts[keep])
            for (x, y), u in zip(pts[keep], np.atleast_1d(vals)):
                writer.writerow([f"{x:.17g}", f"{y:.17g}", f"{u:.17g}"])

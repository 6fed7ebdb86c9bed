"""Harmonic mode expansions about a centre, with analytic gradients.

Two kinds:

* interior-regular:  mean + sum r^n (a_n cos(n t) + b_n sin(n t)),
* exterior-decaying: mean + q log r + sum r^-n (a_n cos(n t) + b_n sin(n t)),

with (r, t) polar coordinates about the series centre.  Values and gradients
are evaluated through complex powers: the n-th interior mode pair is
Re[(a - i b) z^n] and the exterior one Re[(a + i b) z^-n] for z = dx + i dy,
which keeps the gradient exact (d/dx Re f = Re f', d/dy Re f = -Im f').
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = ["HarmonicSeries", "SeriesKind"]


class SeriesKind(Enum):
    INTERIOR_REGULAR = "interior_regular"
    EXTERIOR_DECAYING = "exterior_decaying"


@dataclass(frozen=True)
class HarmonicSeries:
    kind: SeriesKind
    center: tuple[float, float]
    mean: float
    coeffs: tuple[tuple[float, float], ...] = ()
    log_coeff: float = 0.0

    def __post_init__(self):
        if self.kind is SeriesKind.INTERIOR_REGULAR and self.log_coeff != 0.0:
            raise ValueError("interior-regular series cannot carry a log term")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def _z(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        dx = x[..., 0] - self.center[0]
        dy = x[..., 1] - self.center[1]
        z = dx + 1j * dy
        if self.kind is SeriesKind.EXTERIOR_DECAYING and np.any(z == 0):
            raise ValueError(
                "exterior-decaying series cannot be evaluated at its center"
            )
        return z

    def value(self, x):
        """Series value at point(s) x of shape (..., 2)."""
        z = self._z(x)
        out = np.full(z.shape, self.mean, dtype=float)
        if self.kind is SeriesKind.EXTERIOR_DECAYING:
            if self.log_coeff != 0.0:
                out += self.log_coeff * np.log(np.abs(z))
            zp = np.ones_like(z)
            w = 1.0 / z
            for a, b in self.coeffs:
                zp = zp * w
                out += np.real((a + 1j * b) * zp)
        else:
            zp = np.ones_like(z)
            for a, b in self.coeffs:
                zp = zp * z
                out += np.real((a - 1j * b) * zp)
        return out if out.ndim else float(out)

    def grad(self, x):
        """Analytic gradient at point(s) x; shape (..., 2)."""
        z = self._z(x)
        gx = np.zeros(z.shape, dtype=float)
        gy = np.zeros(z.shape, dtype=float)
        if self.kind is SeriesKind.EXTERIOR_DECAYING:
            if self.log_coeff != 0.0:
                r2 = np.real(z) ** 2 + np.imag(z) ** 2
                gx += self.log_coeff * np.real(z) / r2
                gy += self.log_coeff * np.imag(z) / r2
            w = 1.0 / z
            zp = w  # z^{-(n+1)} accumulates as w^{n+1}
            for n, (a, b) in enumerate(self.coeffs, start=1):
                zp = zp * w
                d = -n * (a + 1j * b) * zp
                gx += np.real(d)
                gy += -np.imag(d)
        else:
            zp = np.ones_like(z)  # z^{n-1}
            for n, (a, b) in enumerate(self.coeffs, start=1):
                d = n * (a - 1j * b) * zp
                gx += np.real(d)
                gy += -np.imag(d)
                zp = zp * z
        return np.stack([gx, gy], axis=-1)

    def radial_derivative(self, x):
        """Derivative along the radial direction about the series centre."""
        x = np.asarray(x, dtype=float)
        d = x - np.asarray(self.center)
        r = np.hypot(d[..., 0], d[..., 1])
        g = self.grad(x)
        return (g[..., 0] * d[..., 0] + g[..., 1] * d[..., 1]) / r

    def dump(self) -> str:
        """Plain-text coefficient table for debugging."""
        lines = [
            f"kind={self.kind.value} center={self.center} "
            f"mean={self.mean!r} log_coeff={self.log_coeff!r}",
            " n          cos                sin",
        ]
        for n, (a, b) in enumerate(self.coeffs, start=1):
            lines.append(f"{n:2d}  {a:+.17e}  {b:+.17e}")
        return "\n".join(lines)

"""Truncated Fourier representation of boundary data on a circle.

A FourierData value f evaluates as

    f(theta) = mean + sum_{n=1..N} (a_n cos(n theta) + b_n sin(n theta)).

Coefficients of sampled functions are recovered with the rectangle rule on
equispaced angles, which is exact for trigonometric polynomials up to the
aliasing limit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["FourierData", "RobinData", "fourier_project"]


@dataclass(frozen=True)
class FourierData:
    """mean plus (cosine, sine) coefficient pairs for modes n = 1..N."""

    mean: float
    coeffs: tuple[tuple[float, float], ...] = ()

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def eval(self, theta):
        """Evaluate the truncated series at angle(s) theta."""
        theta = np.asarray(theta, dtype=float)
        out = np.full(theta.shape, self.mean, dtype=float)
        for n, (a, b) in enumerate(self.coeffs, start=1):
            out += a * np.cos(n * theta) + b * np.sin(n * theta)
        return out if out.ndim else float(out)

    def magnitudes(self) -> np.ndarray:
        """|f^n| = hypot(a_n, b_n) for n = 1..N."""
        if not self.coeffs:
            return np.zeros(0)
        arr = np.asarray(self.coeffs, dtype=float)
        return np.hypot(arr[:, 0], arr[:, 1])

    def sup_norm(self, m: int = 2048) -> float:
        """max |f| over a fine equispaced angle grid."""
        theta = -np.pi + 2.0 * np.pi * np.arange(m) / m
        return float(np.max(np.abs(self.eval(theta))))

    def to_list(self) -> list[float]:
        """Flatten to [mean, c1, s1, c2, s2, ...]."""
        out = [self.mean]
        for a, b in self.coeffs:
            out.extend([a, b])
        return out

    @staticmethod
    def from_list(values) -> "FourierData":
        """Inverse of to_list; [mean, c1, s1, c2, s2, ...]."""
        values = [float(v) for v in values]
        if not values:
            raise ValueError("coefficient list must contain at least the mean")
        if (len(values) - 1) % 2 != 0:
            raise ValueError(
                "coefficient list must pair cosine/sine entries after the mean"
            )
        pairs = tuple(
            (values[i], values[i + 1]) for i in range(1, len(values), 2)
        )
        return FourierData(values[0], pairs)

    @staticmethod
    def constant(value: float) -> "FourierData":
        return FourierData(float(value))

    @staticmethod
    def from_callable(fn, order: int, m: int | None = None) -> "FourierData":
        """Project a callable of the angle onto modes 0..order."""
        if m is None:
            m = max(2 * order + 2, 16)
        theta = -np.pi + 2.0 * np.pi * np.arange(m) / m
        values = np.asarray([fn(t) for t in theta], dtype=float)
        return fourier_project(list(zip(theta, values)), order)


def fourier_project(samples, order: int) -> FourierData:
    """Fourier coefficients of equispaced samples by the rectangle rule.

    Parameters
    ----------
    samples : sequence of (angle, value) pairs at M equispaced angles covering
        the circle once (any phase).  M >= 2*order + 1 is required; below that
        the requested modes alias.
    order : highest mode to keep.

    The rule is exact for trigonometric polynomials of degree <= M - 1 - order,
    so round-tripping a series of the same order is exact to rounding.
    """
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("samples must be (angle, value) pairs")
    m = arr.shape[0]
    if m < 2 * order + 1:
        raise ValueError(
            f"aliasing: need at least 2*order+1={2 * order + 1} equispaced "
            f"samples for order {order}, got {m}"
        )
    theta, values = arr[:, 0], arr[:, 1]
    spacing = np.diff(np.sort(theta))
    if not np.allclose(spacing, 2.0 * np.pi / m, rtol=0, atol=1e-9):
        raise ValueError("samples must lie on an equispaced angle grid")
    mean = float(np.mean(values))
    ns = np.arange(1, order + 1)
    cos_nt = np.cos(np.outer(ns, theta))
    sin_nt = np.sin(np.outer(ns, theta))
    a = (2.0 / m) * cos_nt @ values
    b = (2.0 / m) * sin_nt @ values
    return FourierData(mean, tuple((float(ai), float(bi)) for ai, bi in zip(a, b)))


@dataclass(frozen=True)
class RobinData:
    """Robin data for the two boundaries: u + kappa du/dn = f + eps*g.

    f_outer/g_outer live on the outer circle (angle about the origin),
    f_inclusion/g_inclusion on the inclusion circle (angle about its centre).
    The g components are the order-eps data perturbation; they default to zero.
    """

    f_outer: FourierData
    f_inclusion: FourierData
    g_outer: FourierData = field(default_factory=lambda: FourierData(0.0))
    g_inclusion: FourierData = field(default_factory=lambda: FourierData(0.0))

    @property
    def max_order(self) -> int:
        return max(
            self.f_outer.order,
            self.f_inclusion.order,
            self.g_outer.order,
            self.g_inclusion.order,
        )

    @staticmethod
    def constant(value: float) -> "RobinData":
        return RobinData(FourierData.constant(value), FourierData.constant(value))


def combine_with_perturbation(f: FourierData, g: FourierData, eps: float) -> FourierData:
    """Effective boundary data f + eps * g as a single series."""
    order = max(f.order, g.order)
    fa = list(f.coeffs) + [(0.0, 0.0)] * (order - f.order)
    ga = list(g.coeffs) + [(0.0, 0.0)] * (order - g.order)
    coeffs = tuple(
        (af + eps * ag, bf + eps * bg) for (af, bf), (ag, bg) in zip(fa, ga)
    )
    return FourierData(f.mean + eps * g.mean, coeffs)

import numpy as np
import pytest

from robin_inclusion import (
    FourierData,
    RobinData,
    build,
    compute_c0,
    fourier_project,
    make_geometry,
    solve_exterior_robin,
    solve_w0,
)
from robin_inclusion.geometry import equispaced_angles

TWO_PI = 2.0 * np.pi


def _unit_circle(theta):
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)


def _exterior_robin_trace_fd(series, kappa, theta, h=1e-7):
    """(u - kappa du/dr) at r = 1 with a finite-difference radial derivative."""
    outer = (1.0 + h) * _unit_circle(theta)
    inner = (1.0 - h) * _unit_circle(theta)
    du = (series.value(outer) - series.value(inner)) / (2 * h)
    return series.value(_unit_circle(theta)) - kappa * du


class TestGenericExteriorSolver:
    def test_single_cos_mode(self):
        # u = cos(t)/((1+kappa) r); check the Robin trace reproduces the data
        for kappa in (0.25, 1.0, 4.0):
            s = solve_exterior_robin(FourierData(0.0, ((1.0, 0.0),)), kappa)
            assert s.coeffs[0] == pytest.approx((1.0 / (1.0 + kappa), 0.0))
            theta = equispaced_angles(32)
            trace = _exterior_robin_trace_fd(s, kappa, theta)
            assert np.max(np.abs(trace - np.cos(theta))) < 1e-6

    def test_mode_two_coefficient(self):
        s = solve_exterior_robin(FourierData(0.0, ((0.0, 0.0), (0.0, 1.0))), 1.0)
        assert s.coeffs[1] == pytest.approx((0.0, 1.0 / 3.0))

    def test_constant_passes_through(self):
        s = solve_exterior_robin(FourierData(0.7), 3.0)
        far = np.array([1e5, 2e5])
        assert s.value(far) == pytest.approx(0.7, abs=1e-12)

    def test_rejects_nonpositive_kappa(self):
        with pytest.raises(ValueError):
            solve_exterior_robin(FourierData(1.0), 0.0)


class TestCorrectorC0:
    def test_zero_numerator(self):
        geom = make_geometry(1.0, (0.0, 0.0), 0.1)
        assert compute_c0(geom, 1.0, 0.5, 0.5, 1.0) == 0.0

    def test_centered_closed_form(self):
        # unit disk, centered source, kappa=1, eps=0.1: the regular part at
        # the center is 1/(2 pi) and c0 = 2 pi / (11 + ln 10)
        import math

        geom = make_geometry(1.0, (0.0, 0.0), 0.1)
        got = compute_c0(geom, 1.0, 1.0, 0.0, 1.0 / TWO_PI)
        want = 2.0 * math.pi / (11.0 + math.log(10.0))
        assert got == pytest.approx(want, rel=1e-14)

    def test_pathological_denominator_rejected(self):
        geom = make_geometry(1.0, (0.0, 0.0), 0.1)
        with pytest.raises(ValueError, match="denominator"):
            # a large negative regular-part value drives the denominator
            # non-positive
            compute_c0(geom, 1.0, 1.0, 0.0, -10.0)


class TestW0:
    def test_zero_data_zero_corrector(self):
        s = solve_w0(FourierData(0.0, ((0.0, 0.0),)), 1.0, 0.05, (0.0, 0.0))
        assert np.max(np.abs(np.asarray(s.coeffs))) == 0.0
        assert s.mean == 0.0

    def test_physical_trace_matches_data(self):
        # the defining property: in physical coordinates the inclusion-circle
        # Robin trace (u - kappa du/drho at rho = eps) equals the mean-free
        # data plus the drift coupling
        rng = np.random.default_rng(17)
        for _ in range(5):
            eps = float(rng.uniform(0.02, 0.2))
            kappa = float(np.exp(rng.uniform(np.log(0.1), np.log(10))))
            order = int(rng.integers(1, 6))
            f_D = FourierData(
                float(rng.normal()),
                tuple((float(rng.normal()), float(rng.normal()))
                      for _ in range(order)),
            )
            drift = (float(rng.normal()), float(rng.normal()))
            w0 = solve_w0(f_D, kappa, eps, drift)
            # physical series: mode n coefficient times eps^n about the origin
            phys_coeffs = tuple(
                (a * eps**n, b * eps**n)
                for n, (a, b) in enumerate(w0.coeffs, start=1)
            )
            from robin_inclusion import HarmonicSeries, SeriesKind

            phys = HarmonicSeries(
                SeriesKind.EXTERIOR_DECAYING, (0.0, 0.0), 0.0, phys_coeffs
            )
            theta = equispaced_angles(64)
            h = 1e-8
            ring = lambda rho: rho * _unit_circle(theta)
            du = (phys.value(ring(eps + h)) - phys.value(ring(eps - h))) / (2 * h)
            trace = phys.value(ring(eps)) - kappa * du
            expected = (
                f_D.eval(theta)
                - f_D.mean
                + kappa * (drift[0] * np.cos(theta) + drift[1] * np.sin(theta))
            )
            assert np.max(np.abs(trace - expected)) < 1e-5  # FD-limited
            # exact statement at machine precision via the analytic gradient
            g = phys.grad(ring(eps))
            trace_exact = phys.value(ring(eps)) - kappa * (
                g[..., 0] * np.cos(theta) + g[..., 1] * np.sin(theta)
            )
            assert np.max(np.abs(trace_exact - expected)) < 1e-12 * max(
                1.0, np.max(np.abs(expected))
            )

    def test_rescaled_mode_coefficients(self):
        # mode n divides by (1 + (kappa/eps) n); drift touches mode one only
        eps, kappa = 0.1, 1.0
        f_D = FourierData(0.3, ((1.0, 0.0), (0.0, 1.0)))
        drift = (2.0, -1.0)
        w0 = solve_w0(f_D, kappa, eps, drift)
        k_resc = kappa / eps
        assert w0.coeffs[0] == pytest.approx(
            ((1.0 + kappa * 2.0) / (1.0 + k_resc), (0.0 + kappa * -1.0) / (1.0 + k_resc))
        )
        assert w0.coeffs[1] == pytest.approx((0.0, 1.0 / (1.0 + 2 * k_resc)))
        assert w0.mean == 0.0

    def test_matches_concentric_exact_decaying_coefficient(self):
        # with no outer data, kappa = R = 1, the decaying part of the exact
        # annulus solution is eps^2/(eps + 1) / r; the corrector reproduces it
        eps = 0.1
        w0 = solve_w0(FourierData(0.0, ((1.0, 0.0),)), 1.0, eps, (0.0, 0.0))
        physical = w0.coeffs[0][0] * eps
        assert physical == pytest.approx(eps**2 / (1.0 + eps), rel=1e-14)

    def test_decay_bound(self):
        rng = np.random.default_rng(19)
        w0 = solve_w0(
            FourierData(0.0, tuple((float(rng.normal()), float(rng.normal()))
                                   for _ in range(5))),
            0.7,
            0.08,
            (0.3, 0.2),
        )
        C = float(np.sum(np.abs(np.asarray(w0.coeffs))))
        for rho in (2.0, 5.0, 20.0, 1e3):
            theta = equispaced_angles(17)
            vals = w0.value(rho * _unit_circle(theta))
            assert np.max(np.abs(vals)) <= C / rho + 1e-15

    def test_trace_projection_recovers_boundary_data(self):
        # project the rescaled-operator trace at rho = 1 back onto modes and
        # compare with the assembled boundary data coefficients
        eps, kappa = 0.05, 2.0
        f_D = FourierData(0.9, ((0.4, -0.2), (0.1, 0.3), (0.0, -0.5)))
        drift = (-0.6, 0.25)
        w0 = solve_w0(f_D, kappa, eps, drift)
        theta = equispaced_angles(4 * 3 + 2)
        pts = _unit_circle(theta)
        g = w0.grad(pts)
        trace = w0.value(pts) - (kappa / eps) * (
            g[..., 0] * np.cos(theta) + g[..., 1] * np.sin(theta)
        )
        back = fourier_project(list(zip(theta, trace)), 3)
        assert back.mean == pytest.approx(0.0, abs=1e-12)
        assert back.coeffs[0] == pytest.approx(
            (0.4 + kappa * drift[0], -0.2 + kappa * drift[1]), abs=1e-12
        )
        assert back.coeffs[1] == pytest.approx((0.1, 0.3), abs=1e-12)
        assert back.coeffs[2] == pytest.approx((0.0, -0.5), abs=1e-12)

    def test_mean_of_trace_vanishes_after_c0(self):
        # once c0 has absorbed the data mean, the corrector's boundary trace
        # must average to zero over the circle
        geom = make_geometry(1.0, (0.2, 0.1), 0.06)
        data = RobinData(
            f_outer=FourierData(0.4, ((0.3, 0.0),)),
            f_inclusion=FourierData(1.1, ((0.5, -0.2),)),
        )
        ca = build(geom, 1.5, data)
        w0 = ca.corrector.w0
        theta = equispaced_angles(512)
        pts = _unit_circle(theta)
        g = w0.grad(pts)
        kappa_resc = ca.kappa / geom.eps
        trace = w0.value(pts) - kappa_resc * (
            g[..., 0] * np.cos(theta) + g[..., 1] * np.sin(theta)
        )
        assert abs(np.mean(trace)) < 1e-12


def test_h_kappa_is_constant_for_unit_disk():
    # the exterior pairing function: data 1/(2 pi), any Robin length; built
    # through the generic mode solver it must come out identically constant
    for kappa in (0.1, 1.0, 10.0):
        h = solve_exterior_robin(FourierData(1.0 / TWO_PI), kappa)
        rng = np.random.default_rng(29)
        radii = np.concatenate([[1.0], np.exp(rng.uniform(0, 10, size=20))])
        theta = rng.uniform(-np.pi, np.pi, size=radii.size)
        pts = np.stack([radii * np.cos(theta), radii * np.sin(theta)], axis=-1)
        assert np.max(np.abs(h.value(pts) - 1.0 / TWO_PI)) < 1e-12

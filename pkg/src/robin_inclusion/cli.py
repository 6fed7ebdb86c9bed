"""Command-line harness.

Subcommands:

    approx   evaluate the compound approximation on a polar grid -> CSV
    exact    reference solve on the same grid -> CSV
    compare  one (eps, kappa) comparison row -> stdout (+ optional CSV)
    sweep    full (eps, kappa) matrix -> CSV, orders to stdout
    validate randomized lemma suites -> text report, exit 1 on violations
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

import numpy as np

from .analysis import (
    estimate_orders,
    run_sweep,
    validate_exterior_limit,
    validate_harnack_bounds,
    validate_max_principle,
    write_sweep_csv,
)
from .compound import build, dump_field_csv
from .config import load_config
from .geometry import equispaced_angles, make_geometry
from .reference import solve_exact_concentric, solve_exact_eccentric

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="robin-inclusion",
        description=(
            "Compound asymptotic approximation and reference solvers for the "
            "Robin-Laplace problem on a disk with a small circular inclusion"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_approx = sub.add_parser("approx", help="evaluate u0 on a grid")
    p_approx.add_argument("--config", required=True)
    p_approx.add_argument("--output", required=True)
    p_approx.add_argument("--nr", type=int, default=64)
    p_approx.add_argument("--ntheta", type=int, default=64)

    p_exact = sub.add_parser("exact", help="reference solve on a grid")
    p_exact.add_argument("--config", required=True)
    p_exact.add_argument("--output", required=True)
    p_exact.add_argument("--nr", type=int, default=64)
    p_exact.add_argument("--ntheta", type=int, default=64)

    p_cmp = sub.add_parser("compare", help="one sup-error row")
    p_cmp.add_argument("--config", required=True)
    p_cmp.add_argument("--output")

    p_sweep = sub.add_parser("sweep", help="full (eps, kappa) matrix")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--output", required=True)

    p_val = sub.add_parser("validate", help="randomized lemma suites")
    p_val.add_argument("--trials-max-principle", type=int, default=100)
    p_val.add_argument("--trials-harnack", type=int, default=200)
    p_val.add_argument("--trials-limit", type=int, default=50)
    p_val.add_argument("--seed", type=int, default=0)
    p_val.add_argument("--output")
    return parser


def _reference_solve(app, geom, kappa):
    if math.hypot(*app.center) == 0.0:
        return solve_exact_concentric(
            geom, kappa, app.data, order=app.order, tolerance=app.tolerance
        )
    return solve_exact_eccentric(
        geom,
        kappa,
        app.data,
        order=app.order,
        n_collocation=app.n_collocation,
        tolerance=app.tolerance,
    )


def _cmd_approx(args) -> int:
    app = load_config(args.config)
    geom = make_geometry(app.R, app.center, app.eps)
    ca = build(geom, app.kappa, app.data, order=app.order,
               green_order=app.green_order)
    dump_field_csv(ca, args.output, n_r=args.nr, n_theta=args.ntheta)
    print(f"wrote approximation field to {args.output}")
    return 0


def _cmd_exact(args) -> int:
    app = load_config(args.config)
    geom = make_geometry(app.R, app.center, app.eps)
    sol = _reference_solve(app, geom, app.kappa)
    radii = geom.R * (np.arange(1, args.nr + 1) / args.nr)
    theta = equispaced_angles(args.ntheta)
    with open(args.output, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y", "u"])
        for r in radii:
            pts = np.stack([r * np.cos(theta), r * np.sin(theta)], axis=-1)
            rho = np.hypot(pts[:, 0] - geom.center[0], pts[:, 1] - geom.center[1])
            keep = rho >= geom.eps * (1.0 - 1e-12)
            for (x, y), u in zip(pts[keep], np.atleast_1d(sol.value(pts[keep]))):
                writer.writerow([f"{x:.17g}", f"{y:.17g}", f"{u:.17g}"])
    print(
        f"wrote reference field to {args.output} "
        f"(residuals: outer {sol.residual_report.outer:.3e}, "
        f"inclusion {sol.residual_report.inclusion:.3e})"
    )
    return 0


def _cmd_compare(args) -> int:
    app = load_config(args.config)
    records = run_sweep(app.single_config())
    r = records[0]
    print(
        f"eps={r.eps:g} kappa={r.kappa:g} sup_error={r.sup_error:.6e} "
        f"bound={r.bound_value:.6e} ratio={r.ratio:.6e} "
        f"argmax=({r.argmax[0]:.4f}, {r.argmax[1]:.4f}) "
        f"solver_residual={r.solver_residual:.3e} status={r.status}"
    )
    if args.output:
        write_sweep_csv(records, args.output)
    return 0 if r.status == "ok" else 1


def _cmd_sweep(args) -> int:
    app = load_config(args.config)
    records = run_sweep(app.sweep_config())
    write_sweep_csv(records, args.output)
    n_failed = sum(1 for r in records if r.status != "ok")
    print(f"wrote {len(records)} rows to {args.output} ({n_failed} failed)")
    for est in estimate_orders(records):
        if est.orders:
            orders = ", ".join(f"{o:.3f}" for o in est.orders)
            print(f"kappa={est.kappa:g}: observed orders [{orders}]")
        if est.gaps:
            gaps = ", ".join(f"{e:g}" for e in est.gaps)
            print(f"kappa={est.kappa:g}: eps without halving partner: {gaps}")
    return 0 if n_failed == 0 else 1


def _cmd_validate(args) -> int:
    reports = [
        validate_max_principle(args.trials_max_principle, args.seed),
        validate_harnack_bounds(args.trials_harnack, args.seed + 1),
        validate_exterior_limit(args.trials_limit, args.seed + 2),
    ]
    lines = [r.summary() for r in reports]
    for r in reports:
        lines.extend("  " + d for d in r.details)
    text = "\n".join(lines)
    print(text)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    return 0 if all(r.ok for r in reports) else 1


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "approx": _cmd_approx,
        "exact": _cmd_exact,
        "compare": _cmd_compare,
        "sweep": _cmd_sweep,
        "validate": _cmd_validate,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())

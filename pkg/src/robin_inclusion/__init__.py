"""Leading-order compound asymptotics for the Robin-Laplace problem on a disk
with one small circular inclusion, plus spectral reference solvers and a
verification harness for the a priori error bound."""

from .geometry import (
    Boundary,
    BoundaryPoint,
    Geometry,
    PointClass,
    boundary_coords,
    classify,
    equispaced_angles,
    make_geometry,
    sample_boundary,
)
from .boundary_data import FourierData, RobinData, fourier_project
from .series import HarmonicSeries, SeriesKind
from .interior import GreensFunction, solve_green_regular, solve_V0
from .exterior import (
    ExteriorCorrector,
    build_corrector,
    compute_c0,
    solve_exterior_robin,
    solve_w0,
)
from .compound import CompoundApproximation, build, dump_field_csv
from .reference import (
    ReferenceSolution,
    ResidualReport,
    SamplingSpec,
    SolverError,
    SupDifference,
    sampling_points,
    solve_exact_concentric,
    solve_exact_eccentric,
    sup_difference,
)
from .analysis import (
    OrderEstimate,
    SweepConfig,
    SweepRecord,
    bound_B,
    estimate_orders,
    run_sweep,
    validate_exterior_limit,
    validate_harnack_bounds,
    validate_max_principle,
    write_sweep_csv,
)
from .config import AppConfig, dump_config, load_config

__version__ = "0.1.0"

__all__ = [
    "AppConfig",
    "Boundary",
    "BoundaryPoint",
    "CompoundApproximation",
    "ExteriorCorrector",
    "FourierData",
    "Geometry",
    "GreensFunction",
    "HarmonicSeries",
    "OrderEstimate",
    "PointClass",
    "ReferenceSolution",
    "ResidualReport",
    "RobinData",
    "SamplingSpec",
    "SeriesKind",
    "SolverError",
    "SupDifference",
    "SweepConfig",
    "SweepRecord",
    "bound_B",
    "boundary_coords",
    "build",
    "build_corrector",
    "classify",
    "compute_c0",
    "dump_config",
    "dump_field_csv",
    "equispaced_angles",
    "estimate_orders",
    "fourier_project",
    "load_config",
    "make_geometry",
    "run_sweep",
    "sample_boundary",
    "sampling_points",
    "solve_exact_concentric",
    "solve_exact_eccentric",
    "solve_exterior_robin",
    "solve_green_regular",
    "solve_V0",
    "solve_w0",
    "sup_difference",
    "validate_exterior_limit",
    "validate_harnack_bounds",
    "validate_max_principle",
    "write_sweep_csv",
]

"""sparsepen: penalized least-squares with lasso, scad, and mcp penalties.

Coordinate-descent solver with closed-form coordinate updates, warm-started
lambda paths, k-fold cross-validation, and a seeded simulation/benchmark
harness.
"""

from .data import Dataset, RawTable, load_csv, standardize
from .errors import DataError, NumericError, ToolkitError
from .model_selection import CVReport, cross_validate, lambda_grid, lambda_max
from .penalties import (
    DEFAULT_A,
    Family,
    PenaltySpec,
    penalty_derivative,
    penalty_value,
    threshold,
)
from .simulation import (
    SimulationConfig,
    SimulationReport,
    generate_model1,
    run_bench,
    run_simulation,
    sparsity_matched_lambda,
)
from .solver import (
    FitConfig,
    FitResult,
    PathResult,
    StationarityReport,
    check_stationarity,
    fit,
    fit_path,
    objective,
    predict,
)

__version__ = "0.1.0"

__all__ = [
    "CVReport",
    "DEFAULT_A",
    "DataError",
    "Dataset",
    "Family",
    "FitConfig",
    "FitResult",
    "NumericError",
    "PathResult",
    "PenaltySpec",
    "RawTable",
    "SimulationConfig",
    "SimulationReport",
    "StationarityReport",
    "ToolkitError",
    "check_stationarity",
    "cross_validate",
    "fit",
    "fit_path",
    "generate_model1",
    "lambda_grid",
    "lambda_max",
    "load_csv",
    "objective",
    "penalty_derivative",
    "penalty_value",
    "predict",
    "run_bench",
    "run_simulation",
    "sparsity_matched_lambda",
    "standardize",
    "threshold",
]

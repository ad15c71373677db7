"""Lambda-grid construction and k-fold cross-validation.

``lambda_max`` is the smallest penalty level at which the lasso solution
is exactly zero; grids are log-spaced down from it.  Cross-validation
restandardizes each training split with its own statistics so held-out
rows cannot leak into the fit; ``global_standardization=True`` reuses the
full-data statistics instead (the leakier but common variant), in which
case fold fits run on row subsets whose columns are only approximately
unit-scale.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .errors import NumericError
from .parallel import run_indexed
from .penalties import Family
from .solver import FitConfig, _max_abs_col_corr, fit_path


@dataclass
class CVReport:
    """Per-lambda mean and standard error of held-out prediction MSE,
    the selected lambda, and the fold assignment of every observation."""

    lambdas: np.ndarray
    mean_cv_error: np.ndarray
    se_cv_error: np.ndarray
    best_lambda: float
    fold_assignments: np.ndarray


def lambda_max(data: Dataset) -> float:
    """Smallest lambda with an all-zero lasso solution: max_j |(1/n) X_j.y|."""
    return float(_max_abs_col_corr(data.xt, data.y))


def lambda_grid(data: Dataset, count: int, ratio: float) -> np.ndarray:
    """Descending log-spaced grid of ``count`` points from lambda_max down
    to ``ratio * lambda_max``."""
    if count < 2:
        raise ValueError(f"count must be >= 2, got {count}")
    if not 0 < ratio < 1:
        raise ValueError(f"ratio must lie in (0, 1), got {ratio}")
    lmax = lambda_max(data)
    if lmax <= 0:
        raise NumericError("lambda_max is zero; every predictor is "
                           "uncorrelated with the response")
    return lmax * ratio ** np.linspace(0.0, 1.0, count)


def _assign_folds(n: int, k: int, seed) -> np.ndarray:
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    assignments = np.empty(n, dtype=np.int64)
    assignments[perm] = np.arange(n) % k
    return assignments


def _fold_fit(X_raw, y_raw, train_mask, family, a, lambdas, cfg,
              standardize_response=False):
    """Fit a warm-started path on the training rows only; the returned fits
    carry original-scale coefficients for held-out prediction."""
    train_ds = Dataset.from_arrays(X_raw[train_mask], y_raw[train_mask],
                                   standardize_response=standardize_response)
    return fit_path(train_ds, family, lambdas, cfg, a=a)


def _best_lambda(lambdas: np.ndarray, mean_errors: np.ndarray) -> float:
    # ties within 1e-12 go to the larger lambda; lambdas are descending
    best = mean_errors.min()
    for lam, err in zip(lambdas, mean_errors):
        if err <= best + 1e-12:
            return float(lam)
    raise AssertionError("unreachable")


def cross_validate(data: Dataset, family, lambdas, k: int, seed,
                   a: float | None = None, cfg: FitConfig | None = None,
                   standardize_response: bool = False,
                   global_standardization: bool = False) -> CVReport:
    """k-fold cross-validation of one penalty family over a lambda grid.

    Folds come from a seeded shuffle (sizes differ by at most one).  For
    each fold the model path is fit on the training rows and scored by
    held-out mean squared prediction error on the original scale; the
    reported error per lambda is the mean across folds, with its standard
    error, and ``best_lambda`` is the argmin (ties to the larger lambda).
    Folds run concurrently; aggregation order is fixed, so the report is
    identical regardless of the worker count.
    """
    family = Family.parse(family)
    lambdas = np.asarray(lambdas, dtype=np.float64).reshape(-1)
    n = data.n
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if k > n:
        raise ValueError(f"k={k} exceeds the number of observations n={n}")
    if cfg is None:
        cfg = FitConfig()

    assignments = _assign_folds(n, k, seed)
    X_raw, y_raw = data.X_raw, data.y_raw

    def one_fold(f: int) -> np.ndarray:
        held = assignments == f
        train = ~held
        if global_standardization:
            train_ds = Dataset._from_preprocessed(
                data.X[train], data.y[train],
                data.col_means, data.col_scales, data.y_mean, data.y_scale,
            )
            path = fit_path(train_ds, family, lambdas, cfg, a=a)
        else:
            path = _fold_fit(X_raw, y_raw, train, family, a, lambdas, cfg,
                             standardize_response=standardize_response)
        X_held, y_held = X_raw[held], y_raw[held]
        errs = np.empty(lambdas.size)
        for i, fr in enumerate(path.fits):
            pred = fr.intercept + X_held @ fr.beta_original
            errs[i] = float(np.mean((y_held - pred) ** 2))
        return errs

    fold_errors = np.vstack(run_indexed(one_fold, k))
    mean_cv = fold_errors.mean(axis=0)
    se_cv = fold_errors.std(axis=0, ddof=1) / np.sqrt(k)
    return CVReport(
        lambdas=lambdas,
        mean_cv_error=mean_cv,
        se_cv_error=se_cv,
        best_lambda=_best_lambda(lambdas, mean_cv),
        fold_assignments=assignments,
    )

"""CSV ingestion and standardization.

The solver expects standardized data: every predictor column has mean 0 and
mean square 1 (the 1/n variance convention, so that (1/n) * X_j . X_j == 1
exactly), and the response is centered.  Under that scaling each coordinate
update of the solver is an exact one-dimensional prox step.  ``Dataset``
carries the standardization record needed to map fitted coefficients back
to the original units.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import DataError

# relative guard against constant columns whose float mean leaves dust
_ZERO_VAR_RTOL = 1e-13


@dataclass
class RawTable:
    """A parsed numeric table: column names, an n x (p+1) value matrix, and
    the designated response column."""

    columns: list[str]
    values: np.ndarray
    response_column: str

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1] - 1

    @property
    def _response_index(self) -> int:
        return self.columns.index(self.response_column)

    @property
    def response(self) -> np.ndarray:
        return self.values[:, self._response_index]

    @property
    def predictors(self) -> np.ndarray:
        keep = [i for i in range(len(self.columns)) if i != self._response_index]
        return self.values[:, keep]

    @property
    def predictor_names(self) -> list[str]:
        return [c for c in self.columns if c != self.response_column]


def load_csv(path, response_column: str) -> RawTable:
    """Parse a headered, comma-separated numeric file into a RawTable.

    Every cell must parse as a finite float.  Errors name the offending
    cell by file line and column name.
    """
    try:
        fh = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file, expected a header row") from None
        header = [h.strip() for h in header]
        if len(header) < 2:
            raise DataError(f"{path}: need at least 2 columns, found {len(header)}")
        seen = set()
        for name in header:
            if name in seen:
                raise DataError(f"{path}: duplicate column name {name!r}")
            seen.add(name)
        if response_column not in seen:
            raise DataError(
                f"{path}: response column {response_column!r} not in header {header}"
            )

        rows = []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise DataError(
                    f"{path}: row at line {line_no} has {len(row)} cells, "
                    f"expected {len(header)}"
                )
            parsed = np.empty(len(row))
            for j, cell in enumerate(row):
                try:
                    v = float(cell)
                except ValueError:
                    raise DataError(
                        f"{path}: non-numeric value {cell.strip()!r} at line "
                        f"{line_no}, column {header[j]!r}"
                    ) from None
                if not np.isfinite(v):
                    raise DataError(
                        f"{path}: non-finite value {cell.strip()!r} at line "
                        f"{line_no}, column {header[j]!r}"
                    )
                parsed[j] = v
            rows.append(parsed)

    if len(rows) < 3:
        raise DataError(f"{path}: need at least 3 data rows, found {len(rows)}")
    return RawTable(columns=header, values=np.vstack(rows), response_column=response_column)


class Dataset:
    """Standardized design matrix and centered response, plus the record
    (per-column mean and scale, response mean/scale) to undo the scaling.

    Attributes
    ----------
    X : (n, p) standardized design; y : (n,) centered (optionally scaled)
    response.  X_raw, y_raw keep the original values for workflows that
    must restandardize subsets (cross-validation).
    """

    def __init__(self, X, y, col_means, col_scales, y_mean, y_scale,
                 names=None, X_raw=None, y_raw=None):
        self.X = X
        self.y = y
        self.n, self.p = X.shape
        self.col_means = col_means
        self.col_scales = col_scales
        self.y_mean = float(y_mean)
        self.y_scale = float(y_scale)
        self.names = list(names) if names is not None else None
        self.X_raw = X_raw if X_raw is not None else X
        self.y_raw = y_raw if y_raw is not None else y
        self._xt = None

    @property
    def xt(self) -> np.ndarray:
        """Row-contiguous transpose (p, n), built once for the solver."""
        if self._xt is None:
            self._xt = np.ascontiguousarray(self.X.T)
        return self._xt

    @classmethod
    def from_arrays(cls, X, y, names=None, standardize_response=False) -> "Dataset":
        """Standardize a raw design matrix and response into a Dataset."""
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64).reshape(-1)
        if X.ndim != 2:
            raise DataError(f"X must be 2-dimensional, got shape {X.shape}")
        n, p = X.shape
        if n != y.shape[0]:
            raise DataError(f"X has {n} rows but y has {y.shape[0]} entries")
        if n < 2 or p < 1:
            raise DataError(f"need at least 2 rows and 1 column, got {n} x {p}")
        if not np.all(np.isfinite(X)) or not np.all(np.isfinite(y)):
            raise DataError("non-finite values in input data")

        means = X.mean(axis=0)
        centered = X - means
        scales = np.sqrt(np.mean(centered ** 2, axis=0))
        bad = np.flatnonzero(scales <= _ZERO_VAR_RTOL * np.maximum(1.0, np.abs(means)))
        if bad.size:
            j = int(bad[0])
            label = names[j] if names is not None else f"#{j}"
            raise DataError(f"predictor column {label} has zero variance")

        y_mean = y.mean()
        y_scale = 1.0
        yc = y - y_mean
        if standardize_response:
            y_scale = float(np.sqrt(np.mean(yc ** 2)))
            if y_scale <= _ZERO_VAR_RTOL * max(1.0, abs(y_mean)):
                raise DataError("response has zero variance, cannot standardize it")
            yc = yc / y_scale
        return cls(centered / scales, yc, means, scales, y_mean, y_scale,
                   names=names, X_raw=X, y_raw=y)

    @classmethod
    def from_standardized(cls, X, y, names=None) -> "Dataset":
        """Wrap data that is already standardized, verifying the invariants
        (column means ~ 0, mean squares ~ 1, centered response)."""
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(X)) or not np.all(np.isfinite(y)):
            raise DataError("non-finite values in input data")
        n, p = X.shape
        if np.abs(X.mean(axis=0)).max() > 1e-10:
            raise DataError("columns are not centered to within 1e-10")
        if np.abs(np.mean(X ** 2, axis=0) - 1.0).max() > 1e-10:
            raise DataError("columns do not have unit mean square to within 1e-10")
        if abs(y.mean()) > 1e-10:
            raise DataError("response is not centered to within 1e-10")
        return cls(X, y, np.zeros(p), np.ones(p), 0.0, 1.0, names=names)

    @classmethod
    def _from_preprocessed(cls, X, y, col_means, col_scales, y_mean, y_scale,
                           names=None, X_raw=None, y_raw=None) -> "Dataset":
        # Trusted internal path: shape/finiteness checks only.  Used where a
        # caller standardizes with statistics of its own choosing (e.g. CV
        # folds reusing full-data statistics).
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64).reshape(-1)
        if X.shape[0] != y.shape[0]:
            raise DataError(f"X has {X.shape[0]} rows but y has {y.shape[0]} entries")
        if not np.all(np.isfinite(X)) or not np.all(np.isfinite(y)):
            raise DataError("non-finite values in input data")
        return cls(X, y, col_means, col_scales, y_mean, y_scale,
                   names=names, X_raw=X_raw, y_raw=y_raw)


def standardize(table: RawTable, standardize_response=False) -> Dataset:
    """Standardize a RawTable's predictors (and center its response) into a
    Dataset.  Zero-variance predictor columns are rejected by name."""
    return Dataset.from_arrays(
        table.predictors,
        table.response,
        names=table.predictor_names,
        standardize_response=standardize_response,
    )

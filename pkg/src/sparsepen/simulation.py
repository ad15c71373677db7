"""Replicated benchmark harness on a synthetic sparse linear model.

The generator draws an n x p design with i.i.d. standard normal entries
(optionally AR(1)-correlated columns), plants ``n_true`` leading
coefficients equal to ``beta_value``, and adds N(0, noise_sd^2) noise.
``run_simulation`` sweeps every configured penalty family over a shared
descending lambda grid, one warm-started path per replication, and
aggregates estimation error (mean ||beta_hat - beta_true||), sparsity
level, fit time, and convergence rate per (family, lambda).  ``run_bench``
times single cold-start fits per family at one shared lambda.

Every replication draws from its own RNG stream keyed by
(seed, replication index), so results do not depend on how many worker
threads execute them.
"""
from __future__ import annotations

import statistics
from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .model_selection import lambda_grid
from .parallel import run_indexed
from .penalties import DEFAULT_A, Family, PenaltySpec
from .solver import FitConfig, fit, fit_path

# coordinate descent yields exact zeros; this only guards float dust
SPARSITY_EPS = 1e-8

_ALL_FAMILIES = ("lasso", "scad", "mcp")


def _normalize_families(families) -> tuple[tuple[Family, float], ...]:
    out = []
    for item in families:
        if isinstance(item, tuple):
            fam, a = item
        else:
            fam, a = item, None
        fam = Family.parse(fam)
        a = DEFAULT_A[fam] if a is None else float(a)
        # validate through the spec constructor (lam value irrelevant here)
        PenaltySpec(fam, 0.0, a)
        out.append((fam, a))
    if not out:
        raise ValueError("families must not be empty")
    return tuple(out)


@dataclass
class SimulationConfig:
    n: int = 200
    p: int = 1000
    n_true: int = 10
    beta_value: float = 1.0
    noise_sd: float = 1.0
    replications: int = 100
    seed: int = 0
    lambdas: np.ndarray | None = None
    n_lambdas: int = 30
    lambda_ratio: float = 0.01
    families: tuple = _ALL_FAMILIES
    tol: float = 1e-6
    max_iters: int = 10_000
    ar1_rho: float = 0.0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if not 0 <= self.n_true <= self.p:
            raise ValueError(f"n_true must lie in [0, p], got {self.n_true}")
        if self.replications < 1:
            raise ValueError(f"replications must be >= 1, got {self.replications}")
        if not self.noise_sd > 0:
            raise ValueError(f"noise_sd must be > 0, got {self.noise_sd}")
        if int(self.seed) < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")
        if not -1 < self.ar1_rho < 1:
            raise ValueError(f"ar1_rho must lie in (-1, 1), got {self.ar1_rho}")
        self.families = _normalize_families(self.families)
        if self.lambdas is not None:
            self.lambdas = np.asarray(self.lambdas, dtype=np.float64).reshape(-1)


@dataclass
class SimulationReport:
    """Aggregated per-(family, lambda) metrics plus the raw per-replication
    records they were averaged from."""

    lambdas: np.ndarray
    cells: list[dict]
    records: list[dict]


def generate_model1(cfg: SimulationConfig, replication_index: int):
    """Draw one replication of the synthetic model; returns (Dataset, beta_true).

    The RNG stream is derived from (cfg.seed, replication_index), so the
    same pair always reproduces the same data bit for bit.
    """
    rng = np.random.default_rng([int(cfg.seed), int(replication_index)])
    X = rng.standard_normal((cfg.n, cfg.p))
    if cfg.ar1_rho != 0.0:
        rho = cfg.ar1_rho
        mix = np.sqrt(1.0 - rho * rho)
        for j in range(1, cfg.p):
            X[:, j] = rho * X[:, j - 1] + mix * X[:, j]
    beta_true = np.zeros(cfg.p)
    beta_true[: cfg.n_true] = cfg.beta_value
    y = X @ beta_true + cfg.noise_sd * rng.standard_normal(cfg.n)
    return Dataset.from_arrays(X, y), beta_true


def _resolve_lambdas(cfg: SimulationConfig) -> np.ndarray:
    if cfg.lambdas is not None:
        return cfg.lambdas
    ref_data, _ = generate_model1(cfg, 0)
    return lambda_grid(ref_data, cfg.n_lambdas, cfg.lambda_ratio)


def run_simulation(cfg: SimulationConfig) -> SimulationReport:
    """Run the replicated sweep and aggregate its metrics.

    Replications execute as independent work items (possibly on several
    threads); per-cell aggregation always sums in replication order, so a
    given config yields an identical report apart from the measured
    seconds.
    """
    lambdas = _resolve_lambdas(cfg)
    families = cfg.families
    fit_cfg = FitConfig(tol=cfg.tol, max_iters=cfg.max_iters)

    def one_replication(r: int) -> list[tuple]:
        data, beta_true = generate_model1(cfg, r)
        rows = []
        for fam, a in families:
            try:
                path = fit_path(data, fam, lambdas, fit_cfg, a=a)
            except Exception:
                # a failed cell is recorded, not fatal to the sweep
                for lam in lambdas:
                    rows.append((fam, a, float(lam), r, float("nan"),
                                 float("nan"), 0.0, False, False))
                continue
            for lam, fr in zip(lambdas, path.fits):
                err = float(np.linalg.norm(fr.beta_original - beta_true))
                nnz = int(np.count_nonzero(np.abs(fr.beta) > SPARSITY_EPS))
                support_exact = bool(
                    np.array_equal(
                        np.flatnonzero(np.abs(fr.beta) > SPARSITY_EPS),
                        np.arange(cfg.n_true),
                    )
                )
                rows.append((fam, a, float(lam), r, err, nnz, fr.wall_time,
                             fr.converged, support_exact))
        return rows

    per_rep = run_indexed(one_replication, cfg.replications)

    # regroup the per-replication rows by (family, lambda) cell
    records = []
    by_cell: dict[tuple, list[tuple]] = {}
    for rows in per_rep:
        for row in rows:
            fam, a, lam, r = row[0], row[1], row[2], row[3]
            by_cell.setdefault((fam, a, lam), []).append(row)

    cells = []
    for fam, a in families:
        for lam in lambdas:
            cell_rows = by_cell[(fam, a, float(lam))]
            cell_rows.sort(key=lambda row: row[3])
            errs = [row[4] for row in cell_rows]
            nnzs = [row[5] for row in cell_rows]
            secs = [row[6] for row in cell_rows]
            convs = [row[7] for row in cell_rows]
            hits = [row[8] for row in cell_rows]
            cells.append({
                "family": fam.name.lower(),
                "lambda": float(lam),
                "a": a,
                "mean_l2_error": statistics.fmean(errs),
                "mean_sq_error": statistics.fmean(e * e for e in errs),
                "mean_sparsity": statistics.fmean(nnzs),
                "mean_fit_seconds": statistics.fmean(secs),
                "convergence_rate": statistics.fmean(1.0 if c else 0.0 for c in convs),
                "support_exact_rate": statistics.fmean(1.0 if h else 0.0 for h in hits),
            })
            for row in cell_rows:
                records.append({
                    "family": fam.name.lower(),
                    "lambda": float(lam),
                    "a": a,
                    "replication": row[3],
                    "l2_error": row[4],
                    "sparsity": row[5],
                    "seconds": row[6],
                    "converged": row[7],
                })
    return SimulationReport(lambdas=lambdas, cells=cells, records=records)


def sparsity_matched_lambda(report: SimulationReport, family, target: float) -> float:
    """Grid lambda whose mean sparsity is nearest ``target`` for one family.

    Ties go to the smallest lambda: among sparsity-equivalent candidates it
    shrinks the surviving coefficients the least, which is the operating
    point the folded-concave families are built around.
    """
    name = Family.parse(family).name.lower()
    cells = [c for c in report.cells if c["family"] == name]
    if not cells:
        raise ValueError(f"no cells for family {name!r}")
    best = min(cells, key=lambda c: (abs(c["mean_sparsity"] - target), c["lambda"]))
    return float(best["lambda"])


def run_bench(n: int = 200, p: int = 1000, n_true: int = 10,
              beta_value: float = 1.0, noise_sd: float = 1.0,
              lam: float = 0.4, replications: int = 10, seed: int = 0,
              tol: float = 1e-6, max_iters: int = 10_000,
              families=_ALL_FAMILIES, timing_repeats: int = 3) -> list[dict]:
    """Time cold-start fits per family at one shared lambda.

    Every family sees the same data and the same lambda, starts from zero,
    and runs to the same tolerance; rows report the mean wall seconds and
    mean cycle count over the replications.  Fits run strictly serially,
    and each one is timed as the best of ``timing_repeats`` identical runs,
    so scheduler noise does not distort the comparison.
    """
    fams = _normalize_families(families)
    cfg = SimulationConfig(n=n, p=p, n_true=n_true, beta_value=beta_value,
                           noise_sd=noise_sd, replications=replications,
                           seed=seed, tol=tol, max_iters=max_iters,
                           families=families)
    repeats = max(1, int(timing_repeats))

    per_rep = []
    for r in range(replications):
        data, _ = generate_model1(cfg, r)
        out = []
        for fam, a in fams:
            spec = PenaltySpec(fam, lam, a)
            step = FitConfig(tol=tol, max_iters=max_iters)
            runs = [fit(data, spec, step) for _ in range(repeats)]
            fr = runs[0]
            out.append((min(run.wall_time for run in runs),
                        fr.iterations, fr.converged))
        per_rep.append(out)
    rows = []
    for i, (fam, a) in enumerate(fams):
        secs = [per_rep[r][i][0] for r in range(replications)]
        iters = [per_rep[r][i][1] for r in range(replications)]
        convs = [per_rep[r][i][2] for r in range(replications)]
        rows.append({
            "family": fam.name.lower(),
            "lambda": float(lam),
            "a": a,
            "mean_seconds": statistics.fmean(secs),
            "mean_iterations": statistics.fmean(iters),
            "convergence_rate": statistics.fmean(1.0 if c else 0.0 for c in convs),
        })
    return rows

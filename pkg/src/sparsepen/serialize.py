"""Stable JSON/CSV emission for result types.

JSON field names match the result dataclasses exactly.  CSV writers emit
tidy tables with a fixed column order and "\n" line endings so that a
seeded run always produces byte-identical output.  ``include_timing=False``
zeroes the wall-clock fields, which are the only run-to-run varying part
of an otherwise deterministic report.
"""
from __future__ import annotations

import csv
import json

from .model_selection import CVReport
from .simulation import SimulationReport
from .solver import FitResult, PathResult

SIMULATION_CSV_COLUMNS = ["family", "lambda", "a", "replication",
                          "l2_error", "sparsity", "seconds", "converged"]
BENCH_CSV_COLUMNS = ["family", "lambda", "a", "mean_seconds",
                     "mean_iterations", "convergence_rate"]


def to_json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _bool(v) -> str:
    return "true" if v else "false"


def _jnum(v):
    # failed simulation cells carry NaN; emit null to keep the JSON strict
    v = float(v)
    return v if v == v else None


def fit_result_to_dict(fr: FitResult, include_timing: bool = True) -> dict:
    return {
        "beta": fr.beta.tolist(),
        "beta_original": fr.beta_original.tolist(),
        "intercept": fr.intercept,
        "objective_trace": fr.objective_trace.tolist(),
        "iterations": fr.iterations,
        "converged": fr.converged,
        "wall_time": fr.wall_time if include_timing else 0.0,
    }


def path_result_to_dict(pr: PathResult, include_timing: bool = True) -> dict:
    return {
        "lambdas": pr.lambdas.tolist(),
        "fits": [fit_result_to_dict(fr, include_timing) for fr in pr.fits],
        "warm_started": pr.warm_started,
    }


def cv_report_to_dict(report: CVReport) -> dict:
    return {
        "lambdas": report.lambdas.tolist(),
        "mean_cv_error": report.mean_cv_error.tolist(),
        "se_cv_error": report.se_cv_error.tolist(),
        "best_lambda": report.best_lambda,
        "fold_assignments": report.fold_assignments.tolist(),
    }


def simulation_report_to_dict(report: SimulationReport,
                              include_timing: bool = True) -> dict:
    cells = []
    for cell in report.cells:
        cell = dict(cell)
        for key in ("mean_l2_error", "mean_sq_error", "mean_sparsity"):
            cell[key] = _jnum(cell[key])
        if not include_timing:
            cell["mean_fit_seconds"] = 0.0
        cells.append(cell)
    records = []
    for rec in report.records:
        rec = dict(rec)
        rec["l2_error"] = _jnum(rec["l2_error"])
        rec["sparsity"] = _jnum(rec["sparsity"])
        if not include_timing:
            rec["seconds"] = 0.0
        records.append(rec)
    return {"lambdas": report.lambdas.tolist(), "cells": cells, "records": records}


def write_simulation_csv(report: SimulationReport, fh,
                         include_timing: bool = True) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(SIMULATION_CSV_COLUMNS)
    for rec in report.records:
        writer.writerow([
            rec["family"],
            rec["lambda"],
            rec["a"],
            rec["replication"],
            rec["l2_error"],
            rec["sparsity"],
            rec["seconds"] if include_timing else 0.0,
            _bool(rec["converged"]),
        ])


def write_bench_csv(rows: list[dict], fh, include_timing: bool = True) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(BENCH_CSV_COLUMNS)
    for row in rows:
        writer.writerow([
            row["family"],
            row["lambda"],
            row["a"],
            row["mean_seconds"] if include_timing else 0.0,
            row["mean_iterations"],
            row["convergence_rate"],
        ])


def write_cv_csv(report: CVReport, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["lambda", "mean_cv_error", "se_cv_error", "selected"])
    for lam, mean, se in zip(report.lambdas, report.mean_cv_error,
                             report.se_cv_error):
        writer.writerow([float(lam), float(mean), float(se),
                         _bool(float(lam) == report.best_lambda)])


def write_path_csv(pr: PathResult, fh, include_timing: bool = True) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["lambda", "iterations", "converged", "nonzero", "seconds"])
    for lam, fr in zip(pr.lambdas, pr.fits):
        nnz = int((abs(fr.beta) > 1e-8).sum())
        writer.writerow([float(lam), fr.iterations, _bool(fr.converged), nnz,
                         fr.wall_time if include_timing else 0.0])


def write_fit_csv(fr: FitResult, names, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["term", "beta", "beta_original"])
    writer.writerow(["(intercept)", "", fr.intercept])
    labels = names if names is not None else [f"x{j}" for j in range(fr.beta.size)]
    for label, b, bo in zip(labels, fr.beta, fr.beta_original):
        writer.writerow([label, float(b), float(bo)])

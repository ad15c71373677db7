"""Command-line front end.

Subcommands: ``fit`` (single penalized fit on a CSV dataset), ``path``
(lambda-path fit), ``cv`` (k-fold cross-validation for lambda selection),
``simulate`` (replicated synthetic benchmark sweep), and ``bench``
(per-family convergence timing table).  Results go to stdout or ``--out``
as JSON or CSV; warnings go to stderr.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.
SPARSEPEN_THREADS caps the worker count for simulate/cv (0 or unset: auto);
given the same seed the emitted data is identical for any thread count.
"""
from __future__ import annotations

import argparse
import io
import sys
from pathlib import Path

from .data import load_csv, standardize
from .errors import DataError, NumericError
from .model_selection import cross_validate, lambda_grid
from .penalties import Family, PenaltySpec
from .serialize import (
    cv_report_to_dict,
    fit_result_to_dict,
    path_result_to_dict,
    simulation_report_to_dict,
    to_json,
    write_bench_csv,
    write_cv_csv,
    write_fit_csv,
    write_path_csv,
    write_simulation_csv,
)
from .simulation import SimulationConfig, run_bench, run_simulation
from .solver import FitConfig, fit, fit_path


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_output_flags(p, default_format):
    p.add_argument("--out", default=None, help="write output to this file "
                   "instead of stdout")
    p.add_argument("--format", choices=["json", "csv"], default=default_format,
                   help=f"output format (default: {default_format})")


def _add_data_flags(p):
    p.add_argument("--data", required=True, help="CSV file with a header row")
    p.add_argument("--response", required=True,
                   help="name of the response column")
    p.add_argument("--standardize-response", action="store_true",
                   help="scale the response to unit standard deviation "
                   "(it is always centered)")


def _add_penalty_flags(p):
    p.add_argument("--penalty", required=True, choices=["lasso", "scad", "mcp"])
    p.add_argument("--a", type=float, default=None,
                   help="concavity parameter for scad (>2, default 3.7) or "
                   "mcp (>1, default 3); ignored by lasso")


def _add_solver_flags(p):
    p.add_argument("--tol", type=float, default=1e-6,
                   help="convergence tolerance on the max coefficient change "
                   "per cycle (default 1e-6)")
    p.add_argument("--max-iters", type=int, default=10_000,
                   help="cycle budget (default 10000)")


def _add_grid_flags(p, default_count):
    p.add_argument("--nlambda", type=int, default=default_count,
                   help=f"grid size (default {default_count})")
    p.add_argument("--lambda-ratio", type=float, default=0.01,
                   help="smallest lambda as a fraction of lambda_max "
                   "(default 0.01)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sparsepen",
                     description="Penalized least-squares toolkit "
                     "(lasso / scad / mcp coordinate descent)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="single fit at one lambda")
    _add_data_flags(p)
    _add_penalty_flags(p)
    p.add_argument("--lambda", dest="lam", type=float, required=True,
                   help="penalty level")
    _add_solver_flags(p)
    p.add_argument("--trace", action="store_true",
                   help="record the objective after every full cycle "
                   "(emitted in JSON output)")
    _add_output_flags(p, "json")

    p = sub.add_parser("path", help="warm-started fits over a lambda grid")
    _add_data_flags(p)
    _add_penalty_flags(p)
    _add_grid_flags(p, 50)
    _add_solver_flags(p)
    p.add_argument("--trace", action="store_true")
    _add_output_flags(p, "json")

    p = sub.add_parser("cv", help="k-fold cross-validation for lambda")
    _add_data_flags(p)
    _add_penalty_flags(p)
    _add_grid_flags(p, 50)
    _add_solver_flags(p)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--global-standardization", action="store_true",
                   help="standardize once on the full data instead of "
                   "per training split (leaks held-out statistics)")
    _add_output_flags(p, "json")

    p = sub.add_parser("simulate",
                       help="replicated synthetic benchmark sweep")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--p", type=int, default=1000)
    p.add_argument("--n-true", type=int, default=10)
    p.add_argument("--beta-value", type=float, default=1.0)
    p.add_argument("--noise-sd", type=float, default=1.0)
    p.add_argument("--replications", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    _add_grid_flags(p, 30)
    p.add_argument("--families", default="lasso,scad,mcp",
                   help="comma list; an entry like scad:4.2 overrides a "
                   "(default lasso,scad,mcp)")
    _add_solver_flags(p)
    p.add_argument("--no-timing", action="store_true",
                   help="emit 0.0 in the seconds fields so repeated seeded "
                   "runs are byte-identical")
    _add_output_flags(p, "csv")

    p = sub.add_parser("bench", help="per-family convergence timing table")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--p", type=int, default=1000)
    p.add_argument("--n-true", type=int, default=10)
    p.add_argument("--beta-value", type=float, default=1.0)
    p.add_argument("--noise-sd", type=float, default=1.0)
    p.add_argument("--lambda", dest="lam", type=float, default=0.4,
                   help="shared penalty level for every family "
                   "(default 0.4)")
    p.add_argument("--replications", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    _add_solver_flags(p)
    p.add_argument("--no-timing", action="store_true",
                   help="emit 0.0 in the seconds column so repeated seeded "
                   "runs are byte-identical")
    _add_output_flags(p, "csv")

    return parser


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _csv_text(write, *args, **kwargs) -> str:
    buf = io.StringIO()
    write(*args, fh=buf, **kwargs)
    return buf.getvalue()


def _build_spec(args, lam: float) -> PenaltySpec:
    family = Family.parse(args.penalty)
    a = args.a
    if family is Family.LASSO and a is not None:
        print("sparsepen: warning: --a is ignored by the lasso penalty",
              file=sys.stderr)
        a = None
    return PenaltySpec(family, lam, a)


def _load_dataset(args):
    table = load_csv(args.data, args.response)
    return standardize(table, standardize_response=args.standardize_response)


def _parse_families(text: str):
    entries = [e.strip() for e in text.split(",") if e.strip()]
    if not entries:
        raise UsageError("--families must name at least one penalty family")
    out = []
    for entry in entries:
        if ":" in entry:
            name, raw_a = entry.split(":", 1)
            try:
                out.append((name.strip(), float(raw_a)))
            except ValueError:
                raise UsageError(f"bad a value in --families entry {entry!r}")
        else:
            out.append(entry)
    return tuple(out)


def _cmd_fit(args) -> int:
    data = _load_dataset(args)
    spec = _build_spec(args, args.lam)
    cfg = FitConfig(tol=args.tol, max_iters=args.max_iters, trace=args.trace)
    result = fit(data, spec, cfg)
    if args.format == "json":
        text = to_json(fit_result_to_dict(result))
    else:
        text = _csv_text(write_fit_csv, result, data.names)
    _emit(text, args.out)
    return 0


def _cmd_path(args) -> int:
    data = _load_dataset(args)
    spec = _build_spec(args, 0.0)  # validates family/a combination
    grid = lambda_grid(data, args.nlambda, args.lambda_ratio)
    cfg = FitConfig(tol=args.tol, max_iters=args.max_iters, trace=args.trace)
    result = fit_path(data, spec.family, grid, cfg, a=spec.a)
    if args.format == "json":
        text = to_json(path_result_to_dict(result))
    else:
        text = _csv_text(write_path_csv, result)
    _emit(text, args.out)
    return 0


def _cmd_cv(args) -> int:
    data = _load_dataset(args)
    spec = _build_spec(args, 0.0)
    grid = lambda_grid(data, args.nlambda, args.lambda_ratio)
    cfg = FitConfig(tol=args.tol, max_iters=args.max_iters)
    report = cross_validate(
        data, spec.family, grid, k=args.folds, seed=args.seed, a=spec.a,
        cfg=cfg, standardize_response=args.standardize_response,
        global_standardization=args.global_standardization,
    )
    if args.format == "json":
        text = to_json(cv_report_to_dict(report))
    else:
        text = _csv_text(write_cv_csv, report)
    _emit(text, args.out)
    return 0


def _cmd_simulate(args) -> int:
    cfg = SimulationConfig(
        n=args.n, p=args.p, n_true=args.n_true, beta_value=args.beta_value,
        noise_sd=args.noise_sd, replications=args.replications,
        seed=args.seed, n_lambdas=args.nlambda,
        lambda_ratio=args.lambda_ratio,
        families=_parse_families(args.families),
        tol=args.tol, max_iters=args.max_iters,
    )
    report = run_simulation(cfg)
    timing = not args.no_timing
    if args.format == "json":
        text = to_json(simulation_report_to_dict(report, include_timing=timing))
    else:
        text = _csv_text(write_simulation_csv, report, include_timing=timing)
    _emit(text, args.out)
    return 0


def _cmd_bench(args) -> int:
    rows = run_bench(
        n=args.n, p=args.p, n_true=args.n_true, beta_value=args.beta_value,
        noise_sd=args.noise_sd, lam=args.lam, replications=args.replications,
        seed=args.seed, tol=args.tol, max_iters=args.max_iters,
    )
    timing = not args.no_timing
    if args.format == "json":
        payload = []
        for row in rows:
            row = dict(row)
            if not timing:
                row["mean_seconds"] = 0.0
            payload.append(row)
        text = to_json({"rows": payload})
    else:
        text = _csv_text(write_bench_csv, rows, include_timing=timing)
    _emit(text, args.out)
    return 0


_DISPATCH = {
    "fit": _cmd_fit,
    "path": _cmd_path,
    "cv": _cmd_cv,
    "simulate": _cmd_simulate,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _DISPATCH[args.command](args)
    except UsageError as exc:
        print(f"sparsepen: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"sparsepen: error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"sparsepen: data error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"sparsepen: numeric failure: {exc}", file=sys.stderr)
        return 3
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)


def cli_entry() -> None:
    raise SystemExit(main())

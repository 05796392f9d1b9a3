"""Command-line front end.

Subcommands:

* ``run``           Monte Carlo sweep from a config file and/or flags,
                    CSV results to --out.
* ``validate``      numerical proposition checks; exit 1 if any fails.
* ``dump-channels`` raw channel realizations as CSV for debugging.

Exit codes: 0 success, 1 runtime/check failure, 2 configuration error.
"""

import argparse
import sys

from . import analysis
from .channel import NetworkConfig, deploy, dump_channels_csv
from .harness import (
    ConfigError,
    ExperimentConfig,
    parse_config_file,
    run_sweep,
    write_results_csv,
)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cbfsim",
        description="Coordinated multicell precoding and user-selection simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a Monte Carlo sum-rate sweep")
    run_p.add_argument("--config", help="flat key = value config file")
    run_p.add_argument("--b", type=int, help="number of base stations")
    run_p.add_argument("--nt", type=int, help="antennas per base station")
    run_p.add_argument("--k", type=int, help="users per base station")
    run_p.add_argument(
        "--rho-db", help="comma-separated cell-border SNR grid in dB"
    )
    run_p.add_argument("--k-grid", help="comma-separated users-per-BS grid")
    run_p.add_argument("--trials", type=int, help="Monte Carlo trials per point")
    run_p.add_argument("--seed", type=int, help="master seed")
    run_p.add_argument("--precoder", choices=["DZF", "DVSINR"])
    run_p.add_argument("--strategies", help="comma-separated strategy names")
    run_p.add_argument("--workers", type=int, default=1, help="parallel workers")
    run_p.add_argument("--out", help="output CSV path (default stdout)")

    val_p = sub.add_parser("validate", help="numerically validate the propositions")
    val_p.add_argument(
        "--prop",
        type=int,
        choices=[1, 2, 3, 4, 5, 6],
        help="single proposition to check (default: the full suite)",
    )
    val_p.add_argument("--nt", type=int, default=3)
    val_p.add_argument("--b", type=int, default=3)
    val_p.add_argument("--samples", type=int, default=20_000)
    val_p.add_argument("--seed", type=int, default=0)
    val_p.add_argument("--rho-grid", help="comma-separated linear-SNR grid")
    val_p.add_argument("--out", help="report CSV path (default stdout)")

    dump_p = sub.add_parser("dump-channels", help="write raw channel draws as CSV")
    dump_p.add_argument("--b", type=int, default=3)
    dump_p.add_argument("--nt", type=int, default=3)
    dump_p.add_argument("--k", type=int, default=10)
    dump_p.add_argument("--seed", type=int, default=0)
    dump_p.add_argument("--trials", type=int, default=1)
    dump_p.add_argument("--out", help="output CSV path (default stdout)")
    return parser


def _csv_floats(text):
    return tuple(float(v) for v in text.split(","))


def _cmd_run(args):
    fields = {}
    if args.config:
        fields = parse_config_file(args.config)
    if args.b is not None:
        fields["b"] = args.b
    if args.nt is not None:
        fields["nt"] = args.nt
    if args.k is not None:
        fields["k"] = args.k
    if args.rho_db is not None:
        fields["rho_db_grid"] = _csv_floats(args.rho_db)
    if args.k_grid is not None:
        fields["k_grid"] = tuple(int(v) for v in args.k_grid.split(","))
    if args.trials is not None:
        fields["trials"] = args.trials
    if args.seed is not None:
        fields["seed"] = args.seed
    if args.precoder is not None:
        fields["precoder"] = args.precoder
    if args.strategies is not None:
        fields["strategies"] = tuple(s.strip() for s in args.strategies.split(","))
    try:
        cfg = ExperimentConfig(**fields)
        cfg.validate()
    except (ConfigError, TypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    rows = run_sweep(cfg, workers=max(1, args.workers))
    _write(args.out, lambda fh: write_results_csv(rows, fh))
    return 0


_CHECKS = {
    1: lambda a, grid: analysis.check_prop1(a.nt, a.b, a.samples, a.seed),
    2: lambda a, grid: analysis.check_prop2_prop3(a.nt, a.b, grid, a.samples, a.seed),
    3: lambda a, grid: analysis.check_prop2_prop3(a.nt, a.b, grid, a.samples, a.seed),
    4: lambda a, grid: analysis.check_prop4_leakage(a.nt, a.b, grid, a.samples, a.seed),
    5: lambda a, grid: analysis.check_alpha_heuristic(a.nt, a.b, grid, a.samples, a.seed),
    6: lambda a, grid: analysis.check_prop6_nspa(a.nt, a.b, a.samples, a.seed),
}


def _cmd_validate(args):
    grid = list(_csv_floats(args.rho_grid)) if args.rho_grid else None
    props = [args.prop] if args.prop else [1, 2, 4, 5, 6]
    try:
        reports = [_CHECKS[p](args, grid) for p in props]
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    _write(args.out, lambda fh: analysis.reports_to_csv(reports, fh))
    for rep in reports:
        status = "ok" if rep.passed else "FAILED"
        print(f"{rep.prop}: {status}", file=sys.stderr)
    return 0 if all(rep.passed for rep in reports) else 1


def _cmd_dump(args):
    try:
        cfg = NetworkConfig(B=args.b, Nt=args.nt, K=args.k)
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    def emit(fh):
        for trial in range(args.trials):
            real = deploy(cfg, (args.seed, trial))
            dump_channels_csv(real, fh, trial=trial, header=trial == 0)

    _write(args.out, emit)
    return 0


def _write(path, emit):
    if path:
        with open(path, "w", newline="") as fh:
            emit(fh)
    else:
        emit(sys.stdout)


def cli_main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "validate":
            return _cmd_validate(args)
        if args.command == "dump-channels":
            return _cmd_dump(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure, not a usage problem
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 2


def main():
    sys.exit(cli_main())

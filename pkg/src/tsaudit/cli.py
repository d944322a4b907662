"""Command-line entry points: `tsaudit audit` and `tsaudit simulate`.

Exit codes: 0 = run completed (any verdict), 2 = input error,
3 = numerical failure (estimation did not converge or broke down).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .arimax import ArimaxSpec
from .audit import AuditConfig, render, run_audit
from .errors import DataError, TsAuditError
from .montecarlo import Process, SimConfig, spurious_experiment

_FORMAT_ALIASES = {"json": "json", "md": "markdown", "markdown": "markdown",
                   "svg": "svg"}

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3


def _parse_formats(text: str) -> tuple:
    out = []
    for tok in text.split(","):
        tok = tok.strip().lower()
        if not tok:
            continue
        if tok not in _FORMAT_ALIASES:
            raise DataError(f"unknown format {tok!r}; expected json, md, svg")
        fmt = _FORMAT_ALIASES[tok]
        if fmt not in out:
            out.append(fmt)
    return tuple(out)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsaudit",
        description="Audit a monthly level-on-level regression for spurious "
                    "time-series inference, or run the supporting simulations.")
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser(
        "audit",
        help="run the full diagnostic pipeline on a CSV of monthly series",
        description="Runs, in order: levels regression, residual diagnostics, "
                    "unit-root tests, the differenced regression, and an "
                    "ARMA(1,1)-error re-estimation; writes a report and a "
                    "verdict.")
    pa.add_argument("--input", required=True, help="CSV file with a date "
                    "column and the two series")
    pa.add_argument("--y", required=True, dest="y_col",
                    help="dependent series column name")
    pa.add_argument("--x", required=True, dest="x_col",
                    help="explanatory series column name")
    pa.add_argument("--date-col", default="date",
                    help="date column name (default: date); with "
                    "--date-fmt year,month give the two column names "
                    "comma-separated")
    pa.add_argument("--date-fmt", default="YYYY-MM",
                    choices=["YYYY-MM", "year,month"],
                    help="date layout (default: YYYY-MM)")
    pa.add_argument("--no-interpolate", action="store_true",
                    help="do not fill interior gaps of the x series by "
                    "linear interpolation")
    pa.add_argument("--durbin-lags", type=int, default=12, metavar="K",
                    help="lag order for the serial-correlation test "
                    "(default: 12)")
    pa.add_argument("--adf-lags", type=int, default=12, metavar="K",
                    help="augmented lag order for the unit-root tests "
                    "(default: 12)")
    pa.add_argument("--acf-lags", type=int, default=20, metavar="K",
                    help="lags shown in the correlograms (default: 20)")
    pa.add_argument("--vce", default="robust",
                    choices=["robust", "classical"],
                    help="covariance estimator for the ARMA-error model "
                    "(default: robust)")
    pa.add_argument("--alpha-durbin", type=float, default=0.01,
                    help="serial-correlation rejection level used by the "
                    "verdict (default: 0.01)")
    pa.add_argument("--alpha-adf", type=float, default=0.10,
                    help="unit-root rejection level used by the verdict "
                    "(default: 0.10)")
    pa.add_argument("--alpha-beta", type=float, default=0.05,
                    help="slope significance level used by the verdict "
                    "(default: 0.05)")
    pa.add_argument("--out", default=".", metavar="DIR",
                    help="output directory (default: current directory)")
    pa.add_argument("--format", default="json,md,svg", metavar="LIST",
                    help="comma-separated outputs among json, md, svg "
                    "(default: json,md,svg); an empty value writes nothing")

    ps = sub.add_parser(
        "simulate",
        help="independent-pair regression experiment over a seeded process",
        description="Generates pairs of independent series from the chosen "
                    "process, regresses one on the other per replication, "
                    "and summarizes the nominal 5%% slope-test rejections. "
                    "On random walks in levels this exhibits the spurious-"
                    "regression effect; --difference shows the remedy.")
    ps.add_argument("--process", default="random-walk",
                    choices=["random-walk", "white-noise", "ar1", "arma11"],
                    help="generating process (default: random-walk)")
    ps.add_argument("--rho", type=float, default=0.0,
                    help="AR coefficient for ar1/arma11 (default: 0)")
    ps.add_argument("--theta", type=float, default=0.0,
                    help="MA coefficient for arma11 (default: 0)")
    ps.add_argument("--n", type=int, required=True, help="series length")
    ps.add_argument("--reps", type=int, required=True,
                    help="replication count (at least 100)")
    ps.add_argument("--seed", type=int, required=True,
                    help="64-bit RNG seed")
    ps.add_argument("--sigma", type=float, default=1.0,
                    help="innovation standard deviation (default: 1)")
    ps.add_argument("--difference", action="store_true",
                    help="regress first differences instead of levels")
    ps.add_argument("--out", default=".", metavar="DIR",
                    help="output directory (default: current directory)")
    ps.add_argument("--csv", action="store_true",
                    help="also write per-replication statistics as CSV")
    return parser


def _cmd_audit(args: argparse.Namespace) -> int:
    try:
        formats = _parse_formats(args.format)
        cfg = AuditConfig(
            input_path=args.input,
            y_col=args.y_col,
            x_col=args.x_col,
            date_col=args.date_col,
            date_fmt=args.date_fmt,
            interpolate=not args.no_interpolate,
            durbin_lags=args.durbin_lags,
            adf_lags=args.adf_lags,
            acf_lags=args.acf_lags,
            arimax=ArimaxSpec(p=1, d=1, q=1, vce=args.vce),
            alpha_durbin=args.alpha_durbin,
            alpha_adf=args.alpha_adf,
            alpha_beta=args.alpha_beta,
        )
    except TsAuditError as exc:
        print(f"tsaudit: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = run_audit(cfg)
    try:
        written = render(report, args.out, formats)
    except (TsAuditError, OSError) as exc:
        print(f"tsaudit: cannot write report: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for path in written:
        print(path)
    if report.truncated:
        t = report.truncation or {}
        print(f"tsaudit: pipeline truncated at step {t.get('step')!r}: "
              f"{t.get('message')}", file=sys.stderr)
        return EXIT_NUMERIC if t.get("error_kind") == "estimation" else EXIT_INPUT
    print(f"verdict: {report.verdict}")
    return EXIT_OK


def _cmd_simulate(args: argparse.Namespace) -> int:
    try:
        process = Process(args.process, rho=args.rho, theta=args.theta)
        cfg = SimConfig(process=process, n=args.n, reps=args.reps,
                        seed=args.seed, sigma=args.sigma)
        summary = spurious_experiment(cfg, difference=args.difference)
    except TsAuditError as exc:
        print(f"tsaudit: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        os.makedirs(args.out, exist_ok=True)
        json_path = os.path.join(args.out, "simulate.json")
        with open(json_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(json.dumps(summary.to_dict(), sort_keys=True, indent=2,
                                allow_nan=False) + "\n")
        print(json_path)
        if args.csv:
            csv_path = os.path.join(args.out, "simulate_reps.csv")
            with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write("rep,t,r_squared\n")
                for i, (t, r2) in enumerate(summary.detail):
                    fh.write(f"{i},{t!r},{r2!r}\n")
            print(csv_path)
    except OSError as exc:
        print(f"tsaudit: cannot write output: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"rejection_rate: {summary.rejection_rate}")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "audit":
        return _cmd_audit(args)
    return _cmd_simulate(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: sweep subcommands writing CSV plus a figure.

Exit codes: 0 success, 2 configuration error, 3 runtime numerical error
(deep fade / singular channel).
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from ..analysis import ComplexityParams, complexity
from ..errors import ConfigError, NumericalError
from . import engine
from .config import load_complexity, load_scenario
from .figures import render_complexity, render_sweep

COMPLEXITY_COLUMNS = (
    "kind",
    "iterations",
    "m_order",
    "n_fft",
    "n_data",
    "k",
    "additions",
    "multiplications",
    "adds_per_data_subcarrier",
    "mults_per_data_subcarrier",
)


def _add_common_options(parser: argparse.ArgumentParser):
    parser.add_argument("--config", required=True, help="scenario file (sectioned key=value)")
    parser.add_argument("--out", required=True, help="output CSV path")
    parser.add_argument("--seed", type=int, default=None, help="override the configured master seed")
    parser.add_argument("--threads", type=int, default=1, help="worker processes for grid points")
    parser.add_argument(
        "--no-figure", action="store_true", help="skip rendering the companion figure"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mimo-cnc",
        description=(
            "Monte Carlo link simulator for a massive-MIMO OFDM downlink with "
            "clipped amplifiers and iterative distortion-cancelling receivers"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in engine.SWEEP_KINDS:
        p = sub.add_parser(kind, help=f"run a {kind} campaign")
        _add_common_options(p)
        p.set_defaults(func=_run_sweep_command, kind=kind)
    p = sub.add_parser("complexity", help="evaluate the operation-count model")
    _add_common_options(p)
    p.set_defaults(func=_run_complexity_command, kind="complexity")
    return parser


def _figure_path(out: str) -> str:
    return str(Path(out).with_suffix(".png"))


def _run_sweep_command(args) -> int:
    scenario = load_scenario(args.config)
    if args.seed is not None:
        scenario = scenario.replace_seed(args.seed)
    records = engine.run_sweep(scenario, args.kind, threads=max(1, args.threads))
    engine.write_csv(records, args.out)
    print(f"{args.kind}: wrote {len(records)} records to {args.out}")
    if not args.no_figure:
        figure = render_sweep(args.kind, records, _figure_path(args.out))
        print(f"{args.kind}: wrote figure to {figure}")
    return 0


def _run_complexity_command(args) -> int:
    request = load_complexity(args.config)
    rows = []
    for kind in request.kinds:
        for i in request.iterations:
            params = ComplexityParams(
                order=request.order,
                n_fft=request.n_fft,
                n_data=request.n_data,
                n_antennas=request.n_antennas,
                iterations=i,
            )
            count = complexity(kind, params)
            rows.append(
                {
                    "kind": kind,
                    "iterations": i,
                    "m_order": request.order,
                    "n_fft": request.n_fft,
                    "n_data": request.n_data,
                    "k": request.n_antennas,
                    "additions": count.additions,
                    "multiplications": count.multiplications,
                    "adds_per_data_subcarrier": count.additions_per_data_subcarrier,
                    "mults_per_data_subcarrier": count.multiplications_per_data_subcarrier,
                }
            )
    with open(args.out, "w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=COMPLEXITY_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    print(f"complexity: wrote {len(rows)} rows to {args.out}")
    if not args.no_figure:
        figure = render_complexity(rows, _figure_path(args.out))
        print(f"complexity: wrote figure to {figure}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"config error: {problem}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

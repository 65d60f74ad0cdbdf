"""
Command-line front end.

    msad run --config experiment.yaml [--out series.csv] [--preset paper]
    msad sweep --config base.yaml --betas 0,0.7,1.1 --topologies line,circle --out table.csv

Exit status is 0 on success, 1 on any validation, simulation or I/O error
and 2 on usage errors.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from src.cli.config_loader import PRESETS, load_config
from src.cli.experiment import DEFAULT_WINDOW, run_experiment, run_sweep, write_sweep
from src.core.config import get_settings
from src.core.exceptions import MsadError
from src.core.logger import get_logger
from src.model.topologies import TopologyKind
from src.utils.decorators import log_errors
from src.utils.helpers import parse_float_list, parse_name_list

logger = get_logger(__name__)

DEFAULT_BETAS = "0,0.6,0.7,0.8,0.9,1.0,1.1"
DEFAULT_TOPOLOGIES = ",".join(kind.value for kind in TopologyKind)


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog="msad",
        description=f"{settings.app_name} simulator",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Growable tree with the published setup
  msad run --preset paper --out growable.csv

  # Mean-profit table with release factor 0.2
  msad sweep --config config/mean_profit_sweep.yaml --out mean_profit.csv
        """,
    )
    parser.add_argument("--version", action="version", version=settings.app_version)
    commands = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="YAML experiment config")
    common.add_argument(
        "--preset",
        choices=sorted(PRESETS),
        help="Preset applied underneath the config keys",
    )

    run_cmd = commands.add_parser("run", parents=[common], help="Run one experiment")
    run_cmd.add_argument("--out", type=Path, help="CSV time series path")

    sweep_cmd = commands.add_parser(
        "sweep", parents=[common], help="Mean profit over a beta x topology grid"
    )
    sweep_cmd.add_argument(
        "--betas",
        default=DEFAULT_BETAS,
        help=f"Comma-separated beta values (default: {DEFAULT_BETAS})",
    )
    sweep_cmd.add_argument(
        "--topologies",
        default=DEFAULT_TOPOLOGIES,
        help="Comma-separated topology names (default: all)",
    )
    sweep_cmd.add_argument("--out", type=Path, required=True, help="CSV table path")
    sweep_cmd.add_argument(
        "--from-step", type=int, default=DEFAULT_WINDOW[0], help="First step of the mean"
    )
    sweep_cmd.add_argument(
        "--to-step", type=int, default=DEFAULT_WINDOW[1], help="Step the mean stops before"
    )
    sweep_cmd.add_argument(
        "--workers",
        type=int,
        default=None,
        help="Worker processes (default: MSAD_SWEEP_WORKERS or 1)",
    )
    return parser


@log_errors
def _run_command(args: argparse.Namespace) -> None:
    config = load_config(args.config, preset=args.preset)
    _, path = run_experiment(config, out=args.out)
    print(path)


@log_errors
def _sweep_command(args: argparse.Namespace) -> None:
    base = load_config(args.config, preset=args.preset)
    table = run_sweep(
        parse_name_list(args.topologies),
        parse_float_list(args.betas),
        base,
        window=(args.from_step, args.to_step),
        workers=args.workers,
    )
    print(write_sweep(table, args.out))


COMMANDS = {"run": _run_command, "sweep": _sweep_command}


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        COMMANDS[args.command](args)
    except MsadError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""
Bessel-K order derivatives - command-line app

Subcommands:
- eval: one derivative pair with its oracle comparison
- table: derivative pairs over an x grid
- verify: oracle suites, exit status 0 iff every check passes
- alpha: Taylor coefficients of h(s) at s = 1/2
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

sys.path.insert(0, str(Path(__file__).parent.parent))

from engines.quadrature import QuadratureError
from engines.verification import SUITE_NAMES

from .api import DerivativeBackend
from .config import load_config
from .utils.formatters import format_records, reports_to_records

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_ERROR = 2


def parse_grid(text: str) -> list[float]:
    """'a,b,c' to a non-empty, strictly increasing list of positive floats"""
    try:
        grid = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    if not grid:
        raise argparse.ArgumentTypeError("grid must not be empty")
    if any(x <= 0 for x in grid):
        raise argparse.ArgumentTypeError("grid points must be positive")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise argparse.ArgumentTypeError("grid must be strictly increasing")
    return grid


def positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=positive_float, help="absolute quadrature tolerance")
    common.add_argument("--format", choices=("json", "csv"), help="output format (default json)")
    common.add_argument("--workers", type=int, help="worker threads for grid points and j-terms")
    common.add_argument("--config", type=Path, help="user config JSON file")
    common.add_argument("--quiet", action="store_true", help="only warnings and errors on stderr")

    parser = argparse.ArgumentParser(
        prog="besselk",
        description="Order derivatives of the modified Bessel function K at s = 1/2",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common], help="one derivative pair with oracle")
    p_eval.add_argument("--n", type=int, required=True)
    p_eval.add_argument("--x", type=positive_float, required=True)

    p_table = sub.add_parser("table", parents=[common], help="derivative pairs over an x grid")
    p_table.add_argument("--n-max", type=int, required=True)
    p_table.add_argument("--x-grid", type=parse_grid, required=True)

    p_verify = sub.add_parser("verify", parents=[common], help="run verification suites")
    p_verify.add_argument("--suite", choices=SUITE_NAMES + ("all",), default="all")

    p_alpha = sub.add_parser("alpha", parents=[common], help="Taylor coefficients of h at s = 1/2")
    p_alpha.add_argument("--n-max", type=int, default=0)
    p_alpha.add_argument("--j-max", type=int)

    return parser


def _resolve_config(args: argparse.Namespace) -> dict:
    config = load_config(args.config)
    if args.tol is not None:
        config["quadrature"]["tol"] = args.tol
    if args.workers is not None:
        config["parallel"]["workers"] = args.workers
    if args.format is not None:
        config["output"]["format"] = args.format
    return config


def run(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    backend = DerivativeBackend(config)
    fmt = config["output"]["format"]
    digits = config["output"]["digits"]

    try:
        if args.command == "eval":
            records = [backend.evaluate(args.n, args.x)]
            status = EXIT_OK
        elif args.command == "table":
            records = backend.table(args.n_max, args.x_grid)
            status = EXIT_OK
        elif args.command == "alpha":
            j_max = args.j_max if args.j_max is not None else config["zeta"]["j_max"]
            if j_max < 1:
                raise ValueError(f"--j-max must be >= 1, got {j_max}")
            records = backend.alpha(args.n_max, j_max)
            status = EXIT_OK
        else:
            reports = backend.verify(args.suite)
            records = reports_to_records(reports)
            status = EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED_CHECK
    except QuadratureError as e:
        logger.error(f"Quadrature failed: {e}")
        return EXIT_ERROR
    except ValueError as e:
        logger.error(str(e))
        return EXIT_ERROR
    except Exception as e:
        if args.command != "verify":
            raise
        logger.error(f"Verification aborted: {e}")
        return EXIT_ERROR

    sys.stdout.write(format_records(records, args.command, fmt, digits))
    sys.stdout.write("\n")
    return status


def main(argv: Optional[list[str]] = None) -> int:
    """Main entry point"""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    status = run(args)
    if argv is None:
        sys.exit(status)
    return status


if __name__ == "__main__":
    main()

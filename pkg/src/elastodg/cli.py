"""
elastodg command line
=====================

Verbs: run, check, verify, misfit.
"""

import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .analysis import read_seismogram_csv, sample_interval, tf_misfit
from .config import Settings
from .exceptions import ConfigurationError, ContractViolation, DivergenceError, MeshError
from .runner import check, run
from .scenario import parse_config
from .verify import get_checks, run_checks

logger = logging.getLogger("elastodg")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_MESH = 3
EXIT_DIVERGENCE = 4


def configure_logging(level: str) -> None:
    """Attach a single stderr handler to the package logger."""
    logger.setLevel(level.upper())
    if not any(getattr(h, "_elastodg", False) for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(
            logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s")
        )
        handler._elastodg = True
        logger.addHandler(handler)


def _band(text: str):
    try:
        lo, hi = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo,hi but got {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    settings = Settings()
    parser = argparse.ArgumentParser(
        prog="elastodg",
        description="ADER discontinuous Galerkin solver for 3D elastic waves",
    )
    parser.add_argument("--version", action="version", version=settings.APP_VERSION)
    parser.add_argument("--output-dir", type=Path, default=None)
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--log-level", default=settings.LOG_LEVEL)
    verbs = parser.add_subparsers(dest="verb", required=True)

    p = verbs.add_parser("run", help="Solve a scenario and write its outputs")
    p.add_argument("config", type=Path)

    p = verbs.add_parser("check", help="Report mesh and time step without solving")
    p.add_argument("config", type=Path)

    p = verbs.add_parser("verify", help="Run built-in property checks")
    p.add_argument("checks", nargs="*", help=f"any of: {', '.join(get_checks())}")

    p = verbs.add_parser("misfit", help="Time-frequency misfit between two seismograms")
    p.add_argument("signal", type=Path)
    p.add_argument("reference", type=Path)
    p.add_argument("--band", type=_band, required=True, help="lo,hi in Hz")
    p.add_argument("--channel", default="v_x")
    return parser


def _cmd_run(args) -> int:
    config = parse_config(args.config)
    result = asyncio.run(run(config, output_dir=args.output_dir, threads=args.threads))
    print(f"{result.steps} steps to t={result.t_final:.6g}, outputs in {result.directory}")
    return EXIT_OK


def _cmd_check(args) -> int:
    report = check(parse_config(args.config))
    print(json.dumps(report, indent=2, default=float))
    return EXIT_OK


def _cmd_verify(args) -> int:
    results = run_checks(args.checks or None)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<14} {r.detail}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILURE


def _cmd_misfit(args) -> int:
    signal = read_seismogram_csv(args.signal)
    reference = read_seismogram_csv(args.reference)
    for path, columns in ((args.signal, signal), (args.reference, reference)):
        if args.channel not in columns:
            raise ConfigurationError(
                f"Channel {args.channel} not in {path}; has {', '.join(columns)}"
            )
    dt = sample_interval(reference["t"])
    report = tf_misfit(signal[args.channel], reference[args.channel], dt, args.band)
    print(report.render())
    return EXIT_OK


COMMANDS = {
    "run": _cmd_run,
    "check": _cmd_check,
    "verify": _cmd_verify,
    "misfit": _cmd_misfit,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, dispatch the verb and map errors to exit codes."""
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return COMMANDS[args.verb](args)
    except (ConfigurationError, ContractViolation) as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    except MeshError as e:
        logger.error(f"Mesh error: {e}")
        return EXIT_MESH
    except DivergenceError as e:
        logger.error(str(e))
        return EXIT_DIVERGENCE
    except ValueError as e:
        logger.error(f"Error: {e}")
        return EXIT_FAILURE
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        return EXIT_FAILURE

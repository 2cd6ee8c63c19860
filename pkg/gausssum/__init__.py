"""
Gauss Sum Toolkit
Command-line factory and dispatcher
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from gausssum.errors import GaussSumError, UsageError

logger = logging.getLogger(__name__)

# argument name -> (config key path) filled in when the flag is absent
CONFIG_DEFAULTS = {
    'seed': ('seed',),
    't': ('samples',),
    'strategy': ('strategy',),
    'estimator': ('estimator',),
    'parallel': ('parallel_components',),
    'oracle': ('oracle', 'mode'),
    'epsilon': ('oracle', 'epsilon'),
    'votes': ('oracle', 'votes'),
}

# Namespace entries that are plumbing, not part of the run echo
_NOT_ECHOED = ('handler', 'csv_key', 'timings', 'log_level', 'config')


def create_parser() -> argparse.ArgumentParser:
    """Parser factory"""
    from gausssum.commands import REGISTRARS
    from gausssum.commands.common import common_parent

    parser = argparse.ArgumentParser(
        prog='gauss_cli',
        description="Gauss and Jacobi sums over finite fields and rings, with simulated phase estimation"
    )
    subparsers = parser.add_subparsers(dest='command', required=True, metavar='COMMAND')
    parents = [common_parent()]

    # Register command groups
    for register in REGISTRARS:
        register(subparsers, parents)

    return parser


def _apply_config_defaults(args: argparse.Namespace, config: Dict):
    for name, path in CONFIG_DEFAULTS.items():
        if hasattr(args, name) and getattr(args, name) is None:
            value = config
            for key in path:
                value = value[key]
            setattr(args, name, value)


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def _dump(record: Dict) -> str:
    return json.dumps(record, sort_keys=True, indent=2, default=_json_default) + '\n'


def _emit(text: str, output: Optional[str]):
    if output:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', newline='') as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def run_cli(argv: Optional[List[str]] = None) -> int:
    """
    Parse, run and print one command

    Returns:
        0 on success, 1 on a domain error (reported on stderr), 2 on a usage error
    """
    from gauss_config import load_gauss_config, setup_logging

    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2

    try:
        config = load_gauss_config(args.config, required=args.config is not None)
    except GaussSumError as e:
        sys.stderr.write(_dump({"success": False, "error": str(e)}))
        return 1

    setup_logging(config["logging"]["log_path"], args.log_level or config["logging"]["level"])
    _apply_config_defaults(args, config)

    if args.format == 'csv' and not getattr(args, 'csv_key', None):
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"gauss_cli: error: --format csv is not available for {args.command}\n")
        return 2

    echo = {k: v for k, v in sorted(vars(args).items()) if k not in _NOT_ECHOED}
    logger.debug("=" * 60)
    logger.debug(f"Running {args.command}")
    logger.debug("=" * 60)

    started = time.perf_counter()
    try:
        outcome = args.handler(args, config)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"gauss_cli: error: {e}\n")
        return 2
    except GaussSumError as e:
        logger.debug(f"{args.command} failed: {e}", exc_info=True)
        sys.stderr.write(_dump({"success": False, "config": echo, "error": str(e)}))
        return 1
    elapsed = time.perf_counter() - started

    csv_text = outcome.pop(args.csv_key, None) if getattr(args, 'csv_key', None) else None
    if args.format == 'csv':
        _emit(csv_text, args.output)
    else:
        record = {"config": echo, "timings": {"total_seconds": elapsed} if args.timings else None}
        record.update(outcome)
        _emit(_dump(record), args.output)
    return 0 if outcome.get("success", False) else 1


__all__ = [
    'create_parser',
    'run_cli'
]

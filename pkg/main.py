import argparse
import json
import logging
import sys
from typing import List, Optional

from config.logging_config import setup_logging, get_logger
import curve_arith.commands, quot_bb.commands, hn_strata.commands
import bun_formulas.commands
import shell.commands
from shared_utils.errors import EXIT_USAGE, BunmotError

logger = get_logger(__name__)

# ------------- Commands -------------
# each feature registers its own sub-commands, in help order
FEATURE_COMMANDS = (
    curve_arith.commands,
    quot_bb.commands,
    bun_formulas.commands,
    hn_strata.commands,
    shell.commands,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bunmot",
        description="Exact motivic and point-count formulas for moduli of vector bundles on curves",
    )
    parser.add_argument("--log-level", default=None, help="Override LOG_LEVEL for this run")
    parser.add_argument("--log-json", action="store_true", default=None, help="JSON log lines on stderr")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in FEATURE_COMMANDS:
        module.register(subparsers)
    return parser


# ------------- Error reporting -------------
def _report_error(error: BunmotError, as_json: bool):
    if as_json:
        print(json.dumps(error.to_dict()))
    else:
        print(f"error: {error}", file=sys.stderr)


# ------------- Entry point -------------
def main(argv: Optional[List[str]] = None) -> int:
    """Run one command; returns the process exit code"""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad usage and 0 after --help
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    setup_logging(level=args.log_level, json_format=args.log_json)
    as_json = getattr(args, "json", False)

    try:
        return args.handler(args)
    except BunmotError as e:
        logger.debug(f"{type(e).__name__} in {args.command}: {e}")
        _report_error(e, as_json)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())

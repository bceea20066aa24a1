# zonovol/main.py

import argparse
import sys
from typing import Optional, Sequence

from zonovol import __version__
from zonovol.cli import COMMANDS
from zonovol.cli.error_handler import EXIT_USAGE, handle_exception
from zonovol.core.config import settings
from zonovol.core.logging import get_logger, setup_logging

logger = get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zonovol",
        description="Exact volumes of reachable and controllable regions of x(k+1) = A x(k) + B u(k), |u| <= 1.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level",
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help=f"default {settings.LOG_LEVEL}",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    setup_logging(args.log_level)
    logger.debug("command %s", args.command)
    try:
        return args.handler(args)
    except Exception as exc:
        return handle_exception(exc, getattr(args, "format", "text"))


if __name__ == "__main__":
    sys.exit(main())

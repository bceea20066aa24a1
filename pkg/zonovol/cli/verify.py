# zonovol/cli/verify.py

import argparse
from pathlib import Path

from zonovol.cli.error_handler import EXIT_FAILURE, EXIT_OK
from zonovol.cli.options import write_output
from zonovol.core.exceptions import UsageError
from zonovol.services.verify_service import render_verify, run_verify


def parse_dims(value: str) -> list[int]:
    """``a:b`` (inclusive) or a comma list."""
    try:
        if ":" in value:
            low, high = (int(part) for part in value.split(":"))
            return list(range(low, high + 1))
        return [int(part) for part in value.split(",")]
    except ValueError as exc:
        raise UsageError(f"invalid --dims {value!r}", {"dims": value}) from exc


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "verify",
        help="seeded cross-method property checks on random instances",
    )
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--dims", default="2:4", help="a:b (inclusive) or a comma list, within 1..5")
    parser.add_argument("--trials", type=int, default=50, help="trials per property and dimension")
    parser.add_argument("--fuzz", type=int, default=10_000, help="quasi-Vandermonde positivity instances")
    parser.add_argument(
        "--inject-ordering-violation",
        action="store_true",
        help="feed one descending eigenvalue sequence; the run must report a failure",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--out", type=Path, default=None)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    if args.seed < 0:
        raise UsageError("--seed must be nonnegative", {"seed": args.seed})
    report = run_verify(
        args.seed,
        parse_dims(args.dims),
        args.trials,
        fuzz=args.fuzz,
        inject_ordering_violation=args.inject_ordering_violation,
    )
    write_output(render_verify(report, args.format), args.out)
    return EXIT_OK if report.ok else EXIT_FAILURE

# zonovol/cli/bench.py

import argparse

from zonovol.cli.error_handler import EXIT_OK
from zonovol.cli.options import (
    add_model_argument,
    add_output_arguments,
    add_region_argument,
    add_route_argument,
    write_output,
)
from zonovol.core.exceptions import UsageError
from zonovol.core.metrics import metrics_service
from zonovol.schemas.volume import VolumeMethod
from zonovol.services.bench_service import parse_horizons, render_report, run_bench
from zonovol.services.model_service import resolve_model

FINITE_METHODS = [VolumeMethod.exact, VolumeMethod.recursive, VolumeMethod.spectral]


def _parse_methods(value: str) -> list[VolumeMethod]:
    names = [part.strip() for part in value.split(",") if part.strip()]
    allowed = {m.value for m in FINITE_METHODS}
    unknown = [name for name in names if name not in allowed]
    if not names or unknown:
        raise UsageError(
            f"--methods takes a comma list of {', '.join(sorted(allowed))}",
            {"methods": value},
        )
    return [VolumeMethod(name) for name in names]


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "bench",
        help="table of region volumes and operation counters over a horizon range",
    )
    add_model_argument(parser)
    parser.add_argument(
        "--horizons",
        required=True,
        help="start:stop:step (stop inclusive), or a comma list",
    )
    parser.add_argument(
        "--methods",
        "--method",
        dest="methods",
        default="recursive,spectral",
        help="comma list of exact, recursive, spectral",
    )
    add_region_argument(parser)
    add_route_argument(parser)
    parser.add_argument("--det-budget", type=int, default=None)
    parser.add_argument("--workers", type=int, default=None, help="threads across horizons")
    parser.add_argument(
        "--metrics-out",
        default=None,
        help="write the operation counters in Prometheus text format",
    )
    add_output_arguments(parser, default_format="csv")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    horizons = parse_horizons(args.horizons)
    methods = _parse_methods(args.methods)
    if args.det_budget is not None and args.det_budget < 1:
        raise UsageError("--det-budget must be >= 1", {"det_budget": args.det_budget})

    model = resolve_model(args.model)
    report = run_bench(
        model,
        horizons,
        methods,
        region=args.region,
        det_budget=args.det_budget,
        workers=args.workers,
        route=args.route,
    )
    write_output(render_report(report, args.format, args.precision), args.out)
    if args.metrics_out:
        metrics_service.write_textfile(args.metrics_out)
    return EXIT_OK

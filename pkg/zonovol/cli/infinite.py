# zonovol/cli/infinite.py

import argparse

from zonovol.cli.error_handler import EXIT_OK
from zonovol.cli.options import (
    add_model_argument,
    add_output_arguments,
    add_region_argument,
    render_result,
    write_output,
)
from zonovol.schemas.region import MethodChoice, RegionKind, RegionQuery
from zonovol.services.model_service import resolve_model
from zonovol.services.region_service import evaluate


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "infinite",
        help="closed-form volume of the infinite-time region",
    )
    add_model_argument(parser)
    add_region_argument(parser, default=RegionKind.controllable)
    add_output_arguments(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    model = resolve_model(args.model)
    query = RegionQuery(
        model=model,
        region=RegionKind(args.region),
        horizon=None,
        method=MethodChoice.analytic,
    )
    result = evaluate(query)
    write_output(render_result(result, model.name, args.format, args.precision), args.out)
    return EXIT_OK

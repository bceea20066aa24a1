# zonovol/cli/volume.py

import argparse

from pydantic import ValidationError

from zonovol.cli.error_handler import EXIT_OK, usage_from_validation
from zonovol.cli.options import (
    add_model_argument,
    add_output_arguments,
    add_region_argument,
    add_route_argument,
    render_result,
    write_output,
)
from zonovol.schemas.region import MethodChoice, RegionKind, RegionQuery
from zonovol.services.model_service import resolve_model
from zonovol.services.region_service import evaluate


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "volume",
        help="volume of the N-step reachable or controllable region",
    )
    add_model_argument(parser)
    parser.add_argument("--horizon", type=int, required=True, help="number of steps N")
    add_region_argument(parser)
    parser.add_argument(
        "--method",
        choices=[m.value for m in MethodChoice],
        default=MethodChoice.auto.value,
    )
    add_route_argument(parser)
    parser.add_argument("--det-budget", type=int, default=None)
    add_output_arguments(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    model = resolve_model(args.model)
    try:
        query = RegionQuery(
            model=model,
            region=RegionKind(args.region),
            horizon=args.horizon,
            method=MethodChoice(args.method),
            route=args.route,
            det_budget=args.det_budget,
        )
    except ValidationError as exc:
        raise usage_from_validation(exc) from exc

    result = evaluate(query)
    write_output(render_result(result, model.name, args.format, args.precision), args.out)
    return EXIT_OK

# zonovol/cli/options.py

import argparse
import csv
import io
import json
from pathlib import Path
from typing import Optional

from zonovol.core.logging import get_logger
from zonovol.schemas.region import ControllableRoute, RegionKind
from zonovol.schemas.volume import VolumeResult
from zonovol.services.bench_service import CSV_HEADER, format_volume

logger = get_logger(__name__)

FORMATS = ("text", "csv", "json")
PRECISIONS = ("default", "full")


def add_model_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--model",
        required=True,
        help="model file path, or a bundled model name (ex1, ex2)",
    )


def add_region_argument(
    parser: argparse.ArgumentParser, default: RegionKind = RegionKind.reachable
) -> None:
    parser.add_argument(
        "--region",
        choices=[k.value for k in RegionKind],
        default=default.value,
    )


def add_route_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--route",
        choices=[r.value for r in ControllableRoute],
        default=ControllableRoute.scale.value,
        help="controllable region only: scale the reachable volume, or use {A^-1, A^-1 B}",
    )


def add_output_arguments(
    parser: argparse.ArgumentParser, default_format: str = "text", formats=FORMATS
) -> None:
    parser.add_argument("--format", choices=formats, default=default_format)
    parser.add_argument("--precision", choices=PRECISIONS, default="default")
    parser.add_argument("--out", type=Path, default=None, help="write to a file instead of stdout")


def render_result(result: VolumeResult, model_name: str, fmt: str, precision: str) -> str:
    if fmt == "json":
        payload = {"model": model_name, **result.model_dump(mode="json")}
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerow(
            [
                result.horizon_label,
                format_volume(result.volume, precision),
                result.method.value,
                result.det_count,
                result.mult_count,
                f"{result.wall_ms:.3f}",
            ]
        )
        return buffer.getvalue()

    lines = [
        f"model: {model_name}",
        f"region: {result.region}",
        f"horizon: {result.horizon_label}",
        f"method: {result.method.value}",
        f"volume: {format_volume(result.volume, precision)}",
        f"n_d: {result.det_count}",
        f"n_p: {result.mult_count}",
        f"wall_ms: {result.wall_ms:.3f}",
    ]
    lines.extend(f"note.{key}: {value}" for key, value in result.notes.items())
    return "\n".join(lines) + "\n"


def write_output(text: str, out: Optional[Path]) -> None:
    if out is None:
        print(text, end="")
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    logger.info("output written to %s", out)

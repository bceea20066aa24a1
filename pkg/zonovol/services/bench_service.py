# zonovol/services/bench_service.py

"""
Benchmark tables: one row per (horizon, method) with the region volume and
the operation counters n_d / n_p.
"""

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Iterable, List, Optional, Sequence

from zonovol.core.config import settings
from zonovol.core.exceptions import (
    BudgetExceeded,
    ContractViolation,
    SpectralUnsupported,
    UsageError,
)
from zonovol.core.logging import get_logger
from zonovol.schemas.bench import BenchReport, BenchRow
from zonovol.schemas.matrix import SystemModel
from zonovol.schemas.region import ControllableRoute, RegionKind
from zonovol.schemas.volume import VolumeMethod
from zonovol.services.generic_volume_service import exact_det_count
from zonovol.services.region_service import controllable_volume, reachable_volume

logger = get_logger(__name__)

CSV_HEADER = ["N", "v_r", "method", "n_d", "n_p", "wall_ms"]

# largest relative gap tolerated between methods on one horizon
AGREEMENT_RTOL = 1e-6


def parse_horizons(value: str) -> List[int]:
    """
    ``start:stop:step`` (stop inclusive), ``start:stop`` (step 1), a single
    ``N`` or a comma list of those.

    Raises:
        UsageError: malformed range or a horizon below 1
    """
    horizons: List[int] = []
    for chunk in value.split(","):
        chunk = chunk.strip()
        try:
            parts = [int(p) for p in chunk.split(":")]
        except ValueError as exc:
            raise UsageError(f"invalid horizon range {chunk!r}", {"horizons": value}) from exc
        if len(parts) == 1:
            horizons.append(parts[0])
            continue
        if len(parts) > 3 or (len(parts) == 3 and parts[2] < 1):
            raise UsageError(f"invalid horizon range {chunk!r}", {"horizons": value})
        start, stop = parts[0], parts[1]
        step = parts[2] if len(parts) == 3 else 1
        horizons.extend(range(start, stop + 1, step))

    if not horizons:
        raise UsageError("horizon list is empty", {"horizons": value})
    if min(horizons) < 1:
        raise UsageError("horizons must be >= 1", {"horizons": value})
    return horizons


def _skipped(N: int, region: RegionKind, method: VolumeMethod, reason: str) -> BenchRow:
    logger.warning("bench cell N=%d method=%s skipped: %s", N, method.value, reason)
    return BenchRow(N=N, region=region, method=method, annotation=reason)


def _cell(
    model: SystemModel,
    N: int,
    method: VolumeMethod,
    region: RegionKind,
    det_budget: int,
    route: ControllableRoute,
) -> BenchRow:
    if method is VolumeMethod.exact:
        needed = exact_det_count(model.r * N, model.n)
        if needed > det_budget:
            return _skipped(N, region, method, f"budget: needs {needed} determinants")
    try:
        if region is RegionKind.controllable:
            result = controllable_volume(
                model, N, method.value, route=route, det_budget=det_budget
            )
        else:
            result = reachable_volume(model, N, method.value, det_budget=det_budget)
    except BudgetExceeded as exc:
        return _skipped(N, region, method, f"budget: needs {exc.details['needed']} determinants")
    except SpectralUnsupported as exc:
        return _skipped(N, region, method, f"inapplicable: {exc.reason} eigenvalues")
    except ContractViolation as exc:
        return _skipped(N, region, method, f"inapplicable: {exc.message}")

    return BenchRow(
        N=N,
        region=region,
        method=method,
        v_r=result.volume,
        n_d=result.det_count,
        n_p=result.mult_count,
        wall_ms=result.wall_ms,
    )


def _check_agreement(rows: List[BenchRow]) -> List[BenchRow]:
    """Annotates computed cells of one horizon whose volumes differ by more than AGREEMENT_RTOL."""
    computed = [row for row in rows if not row.skipped]
    if len(computed) < 2:
        return rows
    reference = computed[0]
    for row in computed[1:]:
        gap = abs(row.v_r - reference.v_r) / max(abs(row.v_r), abs(reference.v_r), 1e-300)
        if gap <= AGREEMENT_RTOL:
            continue
        logger.warning(
            "bench N=%d: %s and %s disagree (rel %.3E)",
            row.N, reference.method.value, row.method.value, gap,
        )
        row.annotation = f"disagreement: rel {gap:.3E} vs {reference.method.value}"
        if reference.annotation is None:
            reference.annotation = f"disagreement: rel {gap:.3E} vs {row.method.value}"
    return rows


def _horizon_rows(model, N, methods, region, det_budget, route) -> List[BenchRow]:
    return _check_agreement(
        [_cell(model, N, m, region, det_budget, route) for m in methods]
    )


def run_bench(
    model: SystemModel,
    horizons: Sequence[int],
    methods: Iterable[VolumeMethod | str],
    *,
    region: RegionKind | str = RegionKind.reachable,
    det_budget: Optional[int] = None,
    workers: Optional[int] = None,
    route: ControllableRoute | str = ControllableRoute.scale,
) -> BenchReport:
    """
    Computes every (horizon, method) cell; horizons may run on a thread pool,
    rows come back in horizon order.

    Cells over the determinant budget, or whose method does not apply to the
    model (complex spectrum, multi-input spectral), are annotated and skipped.
    Computed cells of one horizon that differ by more than AGREEMENT_RTOL are
    annotated and logged as a disagreement.

    Raises:
        UsageError: empty horizon list, or the analytic method requested
        ZonovolError: errors that affect every cell (e.g. singular A)
    """
    if not horizons:
        raise UsageError("horizon list is empty")
    methods = [VolumeMethod(m) for m in methods]
    if VolumeMethod.analytic in methods:
        raise UsageError("bench runs finite horizons; use `infinite` for the analytic method")
    region = RegionKind(region)
    route = ControllableRoute(route)
    budget = det_budget if det_budget is not None else settings.DET_BUDGET
    workers = workers or settings.BENCH_WORKERS

    by_horizon = {}
    if workers <= 1:
        for N in horizons:
            by_horizon[N] = _horizon_rows(model, N, methods, region, budget, route)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {
                pool.submit(_horizon_rows, model, N, methods, region, budget, route): N
                for N in horizons
            }
            for future in as_completed(futures):
                by_horizon[futures[future]] = future.result()

    report = BenchReport(model=model.name, region=region)
    for N in horizons:
        report.rows.extend(by_horizon[N])
    logger.info(
        "bench %s: %d horizons x %d methods, %d skipped",
        model.name, len(horizons), len(methods),
        sum(row.skipped for row in report.rows),
    )
    return report


def format_volume(value: Optional[float], precision: str = "default") -> str:
    """``%.3E`` by default, the shortest round-trip repr with ``full``; "" for None."""
    if value is None:
        return ""
    return repr(value) if precision == "full" else f"{value:.3E}"


def render_csv(report: BenchReport, precision: str = "default") -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in report.rows:
        writer.writerow(
            [
                row.N,
                format_volume(row.v_r, precision),
                row.method.value,
                row.n_d,
                row.n_p,
                f"{row.wall_ms:.3f}",
            ]
        )
    return buffer.getvalue()


def render_json(report: BenchReport) -> str:
    return json.dumps(report.model_dump(mode="json"), indent=2) + "\n"


def render_text(report: BenchReport, precision: str = "default") -> str:
    lines = [f"model: {report.model}", f"region: {report.region.value}"]
    for row in report.rows:
        volume = format_volume(row.v_r, precision) or f"skipped ({row.annotation})"
        lines.append(
            f"N={row.N:<6} {row.method.value:<10} v_r={volume:<12} "
            f"n_d={row.n_d:<10} n_p={row.n_p:<8} wall_ms={row.wall_ms:.3f}"
        )
        if not row.skipped and row.annotation:
            lines[-1] += f"  [{row.annotation}]"
    return "\n".join(lines) + "\n"


def render_report(report: BenchReport, fmt: str, precision: str = "default") -> str:
    if fmt == "csv":
        return render_csv(report, precision)
    if fmt == "json":
        return render_json(report)
    return render_text(report, precision)


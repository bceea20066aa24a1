import csv
import io
import json

import pytest

from zonovol.core.exceptions import SingularMatrixError, UsageError
from zonovol.schemas.region import RegionKind
from zonovol.schemas.volume import VolumeMethod
from zonovol.services import bench_service
from zonovol.services.bench_service import (
    CSV_HEADER,
    format_volume,
    parse_horizons,
    render_csv,
    render_json,
    render_report,
    render_text,
    run_bench,
)
from zonovol.services.region_service import reachable_volume
from zonovol.tests.utils.factories import diagonal_model, model


def test_parse_horizons_range_inclusive():
    assert parse_horizons("100:800:100") == [100, 200, 300, 400, 500, 600, 700, 800]
    assert parse_horizons("3:5") == [3, 4, 5]
    assert parse_horizons("7") == [7]
    assert parse_horizons("10, 20,5:6") == [10, 20, 5, 6]


@pytest.mark.parametrize("value", ["", "a:b", "1:5:0", "1:2:3:4", "0:3", "5:4"])
def test_parse_horizons_rejects(value):
    with pytest.raises(UsageError):
        parse_horizons(value)


def test_single_row_matches_volume(ex1):
    report = run_bench(ex1, [20], ["recursive"])
    assert len(report.rows) == 1
    row = report.rows[0]
    assert row.N == 20 and row.method is VolumeMethod.recursive
    assert row.v_r == pytest.approx(reachable_volume(ex1, 20, "recursive").volume, rel=1e-12)
    assert row.n_d == 18 * 19 // 2 + 2
    assert not row.skipped


def test_rows_in_horizon_then_method_order(ex1):
    report = run_bench(ex1, [12, 6, 9], ["spectral", "recursive"], workers=3)
    assert [(row.N, row.method.value) for row in report.rows] == [
        (12, "spectral"), (12, "recursive"),
        (6, "spectral"), (6, "recursive"),
        (9, "spectral"), (9, "recursive"),
    ]
    for N in (6, 9, 12):
        spectral, recursive = report.for_horizon(N)
        assert spectral.v_r == pytest.approx(recursive.v_r, rel=1e-8)


def test_workers_do_not_change_results(ex1):
    serial = run_bench(ex1, [5, 10, 15], ["recursive", "spectral"], workers=1)
    pooled = run_bench(ex1, [5, 10, 15], ["recursive", "spectral"], workers=4)
    assert [r.v_r for r in serial.rows] == [r.v_r for r in pooled.rows]
    assert [r.n_d for r in serial.rows] == [r.n_d for r in pooled.rows]


def test_budget_skips_exact_cell(ex1):
    report = run_bench(ex1, [10, 40], ["exact", "recursive"], det_budget=200)
    exact_small, _, exact_large, recursive_large = report.rows
    assert exact_small.v_r is not None and exact_small.n_d == 120
    assert exact_large.skipped
    assert exact_large.annotation.startswith("budget")
    assert recursive_large.v_r is not None


def test_complex_spectrum_skips_spectral():
    rotation = model([[0.0, -1.0], [1.0, 0.0]], [[1.0], [0.0]])
    report = run_bench(rotation, [4], ["spectral", "recursive"])
    spectral, recursive = report.rows
    assert spectral.skipped
    assert spectral.annotation == "inapplicable: complex eigenvalues"
    assert recursive.v_r > 0


def test_multi_input_skips_spectral():
    m = model([[0.5, 0.0], [0.0, 0.8]], [[1.0, 0.0], [0.0, 1.0]])
    spectral, exact = run_bench(m, [3], ["spectral", "exact"]).rows
    assert spectral.skipped
    assert spectral.annotation.startswith("inapplicable")
    assert exact.v_r > 0


def test_analytic_rejected(ex1):
    with pytest.raises(UsageError):
        run_bench(ex1, [10], ["analytic"])


def test_controllable_singular_propagates():
    singular = model([[1.0, 2.0], [2.0, 4.0]], [[1.0], [0.0]])
    with pytest.raises(SingularMatrixError):
        run_bench(singular, [3], ["recursive"], region=RegionKind.controllable)


def test_deterministic(ex2):
    first = run_bench(ex2, [8, 16], ["recursive", "spectral"], region="controllable")
    second = run_bench(ex2, [8, 16], ["recursive", "spectral"], region="controllable")
    assert [r.v_r for r in first.rows] == [r.v_r for r in second.rows]
    assert [r.n_p for r in first.rows] == [r.n_p for r in second.rows]


def test_render_csv():
    m = diagonal_model([0.5, 0.8])
    report = run_bench(m, [4], ["exact"])
    rows = list(csv.reader(io.StringIO(render_csv(report))))
    assert rows[0] == CSV_HEADER
    assert rows[1][0] == "4"
    assert rows[1][2] == "exact"
    assert rows[1][3] == "6"
    assert float(rows[1][1]) == pytest.approx(report.rows[0].v_r, rel=1e-3)
    full = list(csv.reader(io.StringIO(render_csv(report, precision="full"))))
    assert float(full[1][1]) == report.rows[0].v_r


def test_render_skipped_cells(ex1):
    report = run_bench(ex1, [60], ["exact"], det_budget=10)
    assert list(csv.reader(io.StringIO(render_csv(report))))[1][1] == ""
    assert "skipped (budget" in render_text(report)
    assert json.loads(render_json(report))["rows"][0]["v_r"] is None


def test_render_report_dispatch(ex1):
    report = run_bench(ex1, [5], ["recursive"])
    assert render_report(report, "csv").startswith(",".join(CSV_HEADER))
    assert json.loads(render_report(report, "json"))["model"] == "ex1"
    assert render_report(report, "text").startswith("model: ex1")


def test_agreeing_methods_carry_no_annotation(ex1):
    report = run_bench(ex1, [15], ["exact", "recursive", "spectral"])
    assert all(row.annotation is None for row in report.rows)


def test_disagreeing_methods_are_annotated(ex1, monkeypatch):
    def skewed(model, N, method, **kwargs):
        result = reachable_volume(model, N, method, **kwargs)
        return result.scaled(1.01) if method == "recursive" else result

    monkeypatch.setattr(bench_service, "reachable_volume", skewed)
    report = run_bench(ex1, [15], ["spectral", "recursive"])
    spectral, recursive = report.rows
    assert not spectral.skipped and not recursive.skipped
    assert recursive.annotation.startswith("disagreement: rel")
    assert recursive.annotation.endswith("vs spectral")
    assert spectral.annotation.endswith("vs recursive")
    assert "[disagreement" in render_text(report)


def test_format_volume():
    assert format_volume(None) == ""
    assert format_volume(8.874e8) == "8.874E+08"
    assert format_volume(0.1, "full") == "0.1"

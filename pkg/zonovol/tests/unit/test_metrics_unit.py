from zonovol.core.metrics import MetricsService, get_metrics, metrics_service
from zonovol.services.spectral_volume_service import volume_spectral
from zonovol.tests.utils.factories import diagonal_model


def test_record_computation_counters():
    service = MetricsService()
    service.record_computation("recursive", det_count=12, seconds=0.01)
    service.record_computation("recursive", success=False)
    registry = service.registry
    assert registry.get_sample_value("zonovol_determinants_total", {"method": "recursive"}) == 12
    assert (
        registry.get_sample_value(
            "zonovol_volume_computations_total", {"method": "recursive", "status": "error"}
        )
        == 1
    )
    assert registry.get_sample_value("zonovol_multiplications_total", {"method": "recursive"}) is None


def test_spectral_records_multiplications():
    def sample():
        value = metrics_service.registry.get_sample_value(
            "zonovol_multiplications_total", {"method": "spectral"}
        )
        return value or 0.0

    before = sample()
    result = volume_spectral(diagonal_model([0.5, 0.8]), 10)
    assert sample() - before == result.mult_count


def test_exposition_and_textfile(tmp_path):
    assert b"zonovol_determinants_total" in get_metrics()
    path = tmp_path / "zonovol.prom"
    metrics_service.write_textfile(path)
    assert "zonovol_volume_computations_total" in path.read_text(encoding="utf-8")

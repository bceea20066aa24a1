# zonovol/core/metrics.py

"""
Prometheus counters for the volume engines.

The registry is private to the process so repeated imports (tests) never
collide with the global default registry.
"""

from pathlib import Path

from prometheus_client import (
    CollectorRegistry,
    Counter,
    Histogram,
    generate_latest,
    write_to_textfile,
)

from zonovol.core.config import settings
from zonovol.core.logging import get_logger

logger = get_logger(__name__)


class MetricsService:
    """Collects operation counters and timings per volume method."""

    def __init__(self):
        self.registry = CollectorRegistry()
        self._init_metrics()

    def _init_metrics(self):
        self.determinants_total = Counter(
            "zonovol_determinants_total",
            "Number of n x n determinant evaluations",
            ["method"],
            registry=self.registry,
        )
        self.multiplications_total = Counter(
            "zonovol_multiplications_total",
            "Number of multiplications in the spectral recursion and closed form",
            ["method"],
            registry=self.registry,
        )
        self.computations_total = Counter(
            "zonovol_volume_computations_total",
            "Number of volume computations",
            ["method", "status"],
            registry=self.registry,
        )
        self.computation_seconds = Histogram(
            "zonovol_computation_seconds",
            "Wall time of one volume computation",
            ["method"],
            buckets=[0.0005, 0.001, 0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 30.0, 120.0],
            registry=self.registry,
        )
        logger.debug("metrics registry ready for %s", settings.PROJECT_NAME)

    def record_computation(
        self,
        method: str,
        *,
        det_count: int = 0,
        mult_count: int = 0,
        seconds: float = 0.0,
        success: bool = True,
    ):
        """Records one finished computation and its counters."""
        status = "success" if success else "error"
        self.computations_total.labels(method=method, status=status).inc()
        if det_count:
            self.determinants_total.labels(method=method).inc(det_count)
        if mult_count:
            self.multiplications_total.labels(method=method).inc(mult_count)
        self.computation_seconds.labels(method=method).observe(seconds)

    def get_metrics_content(self) -> bytes:
        return generate_latest(self.registry)

    def write_textfile(self, path: str | Path) -> None:
        write_to_textfile(str(path), self.registry)
        logger.info("metrics written to %s", path)


metrics_service = MetricsService()


def record_computation(method: str, **kwargs):
    """Utility wrapper around the global service."""
    metrics_service.record_computation(method, **kwargs)


def get_metrics() -> bytes:
    return metrics_service.get_metrics_content()

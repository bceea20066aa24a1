# zonovol/services/verify_service.py

"""
Seeded property suite over random instances. Every check uses the
enumeration method or a closed form as its oracle.
"""

import math
from typing import Callable, Optional, Sequence

import numpy as np

from zonovol.core.exceptions import UsageError, ZonovolError
from zonovol.core.logging import get_logger
from zonovol.schemas.bench import VerifyReport
from zonovol.schemas.matrix import RealMatrix, SystemModel
from zonovol.services.generic_volume_service import (
    exact_det_count,
    volume_exact,
    volume_recursive,
)
from zonovol.services.linalg_service import controllability_matrix, determinant
from zonovol.services.spectral_volume_service import (
    SpectralTable,
    quasi_vandermonde,
    volume_infinite,
    volume_spectral,
)

logger = get_logger(__name__)

EQUIVALENCE_RTOL = 1e-8
COVARIANCE_RTOL = 1e-8
CONVERGENCE_RTOL = 1e-6
MAX_HORIZON = 12
SUPPORTED_DIMS = range(1, 6)

# property names, in report order
EQUIVALENCE = "method_equivalence"
POSITIVITY = "quasi_vandermonde_positivity"
MONOTONICITY = "horizon_monotonicity"
COVARIANCE = "linear_map_covariance"
CONVERGENCE = "infinite_convergence"
COUNTERS = "counter_laws"


# ---------- random instances ----------


def sorted_spaced(rng: np.random.Generator, n: int, lo: float, hi: float, gap: float) -> np.ndarray:
    """n ascending values in [lo, hi] with consecutive gaps of at least ``gap``."""
    span = hi - lo - (n - 1) * gap
    if span <= 0:
        raise ValueError(f"cannot place {n} values {gap} apart in [{lo}, {hi}]")
    base = np.sort(rng.uniform(0.0, span, size=n))
    return lo + base + gap * np.arange(n)


def well_conditioned(rng: np.random.Generator, n: int, max_cond: float = 50.0) -> np.ndarray:
    while True:
        T = np.eye(n) + 0.4 * rng.standard_normal((n, n))
        if np.linalg.cond(T) < max_cond:
            return T


def random_spectral_model(
    rng: np.random.Generator, n: int, lo: float = 0.3, hi: float = 1.8, gap: float = 0.15
) -> SystemModel:
    """Single-input pair whose A has real, distinct, positive eigenvalues."""
    lam = sorted_spaced(rng, n, lo, hi, gap)
    T = well_conditioned(rng, n)
    A = T @ np.diag(lam) @ np.linalg.inv(T)
    B = rng.standard_normal((n, 1))
    return SystemModel(name=f"random-spectral-{n}", A=A, B=B)


def random_model(rng: np.random.Generator, n: int, r: int) -> SystemModel:
    """Pair with real eigenvalues of either sign, magnitudes in [0.5, 1.5]."""
    lam = sorted_spaced(rng, n, 0.5, 1.5, 0.1) * rng.choice([-1.0, 1.0], size=n)
    T = well_conditioned(rng, n)
    A = T @ np.diag(lam) @ np.linalg.inv(T)
    B = rng.standard_normal((n, r))
    return SystemModel(name=f"random-{n}x{r}", A=A, B=B)


def _rel_gap(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


# ---------- property checks ----------


def check_method_equivalence(rng: np.random.Generator, n: int) -> Optional[str]:
    model = random_spectral_model(rng, n)
    N = int(rng.integers(n, MAX_HORIZON + 1))
    exact = volume_exact(controllability_matrix(model, N)).volume
    recursive = volume_recursive(model, N).volume
    spectral = volume_spectral(model, N).volume
    worst = max(_rel_gap(exact, recursive), _rel_gap(exact, spectral))
    if worst > EQUIVALENCE_RTOL:
        return (
            f"n={n} N={N}: exact={exact!r} recursive={recursive!r} "
            f"spectral={spectral!r} (rel {worst:.2e})"
        )

    multi = random_model(rng, n, 2)
    N = int(rng.integers(math.ceil(n / 2), MAX_HORIZON // 2 + 1))
    exact = volume_exact(controllability_matrix(multi, N)).volume
    recursive = volume_recursive(multi, N).volume
    if _rel_gap(exact, recursive) > EQUIVALENCE_RTOL:
        return f"n={n} r=2 N={N}: exact={exact!r} recursive={recursive!r}"
    return None


def check_positivity(
    rng: np.random.Generator, count: int, max_n: int = 6
) -> Optional[str]:
    for _ in range(count):
        n = int(rng.integers(1, max_n + 1))
        lam = sorted_spaced(rng, n, 1e-3, 2.0, 1e-3)
        exponents = np.sort(rng.choice(2 * n + 4, size=n, replace=False))
        value = quasi_vandermonde(lam.tolist(), exponents.tolist())
        if not value > 0:
            return f"lambda={lam.tolist()} k={exponents.tolist()} -> {value!r}"
    return None


def check_monotonicity(rng: np.random.Generator, n: int) -> Optional[str]:
    model = random_model(rng, n, int(rng.integers(1, 3)))
    N = int(rng.integers(1, MAX_HORIZON - 1))
    P = controllability_matrix(model, N + 1)
    smaller = volume_exact(RealMatrix(values=P.values[:, : model.r * N])).volume
    larger = volume_exact(P).volume
    if larger < smaller * (1.0 - 1e-12):
        return f"n={n} N={N}: V(N+1)={larger!r} < V(N)={smaller!r}"
    return None


def check_covariance(rng: np.random.Generator, n: int) -> Optional[str]:
    Z = rng.standard_normal((n, n + 3))
    T = well_conditioned(rng, n)
    base = volume_exact(RealMatrix(values=Z)).volume
    moved = volume_exact(RealMatrix(values=T @ Z)).volume
    expected = abs(determinant(RealMatrix(values=T))) * base
    if _rel_gap(moved, expected) > COVARIANCE_RTOL:
        return f"n={n}: V(TZ)={moved!r} |det T| V(Z)={expected!r}"
    return None


def check_convergence(rng: np.random.Generator, n: int) -> Optional[str]:
    lam = sorted_spaced(rng, n, 0.05, 0.9, min(0.1, 0.8 / n))
    phi = volume_infinite(lam.tolist())
    table = SpectralTable(lam)
    max_steps = math.ceil(math.log(1e-10) / math.log(lam[-1])) + 50 * n
    previous = 0.0
    while table.step < max_steps:
        table.advance()
        current = table.volume_factor
        if current < previous - 1e-9 * phi:
            return f"n={n} k={table.step}: V decreased {previous!r} -> {current!r}"
        if phi - current < -1e-9 * phi:
            return f"n={n} k={table.step}: V={current!r} exceeds Phi={phi!r}"
        if table.step >= n and abs(phi - current) < CONVERGENCE_RTOL * phi:
            return None
        previous = current
    return f"n={n}: no convergence to Phi={phi!r} within {max_steps} steps (V={previous!r})"


def check_counters(rng: np.random.Generator, n: int) -> Optional[str]:
    model = random_model(rng, n, int(rng.integers(1, 3)))
    N = int(rng.integers(math.ceil(n / model.r) + 2, MAX_HORIZON + 1))
    exact = volume_exact(controllability_matrix(model, N))
    if exact.det_count != exact_det_count(model.r * N, n):
        return f"n={n} N={N}: exact n_d={exact.det_count} != C({model.r * N}, {n})"
    recursive = volume_recursive(model, N)
    if recursive.notes["last_step_dets"] > recursive.notes["step_bound"]:
        return f"n={n} N={N}: recursion step used {recursive.notes['last_step_dets']} dets"

    lam = sorted_spaced(rng, n, 0.05, 0.95, 0.8 / (n + 1))
    counts = [SpectralTable(lam).advance_to(N).mult_count for N in (200, 400, 800)]
    for low, high in zip(counts, counts[1:]):
        if not 1.8 <= high / low <= 2.2:
            return f"n={n}: spectral n_p ratio {high}/{low} outside [1.8, 2.2]"
    return None


def _ordering_violation(rng: np.random.Generator) -> Optional[str]:
    lam = sorted_spaced(rng, 3, 0.1, 2.0, 0.1)[::-1]
    quasi_vandermonde(lam.tolist(), [0, 1, 2])
    return None


# ---------- suite ----------


def _run_check(
    report: VerifyReport, prop: str, check: Callable[[], Optional[str]]
) -> None:
    try:
        failure = check()
    except ZonovolError as exc:
        failure = f"{exc.code}: {exc.message}"
    report.record(prop, failure is None, failure)


def run_verify(
    seed: int,
    dims: Sequence[int],
    trials: int,
    *,
    fuzz: int = 10_000,
    inject_ordering_violation: bool = False,
) -> VerifyReport:
    """
    Runs every property ``trials`` times per dimension; the quasi-Vandermonde
    positivity fuzz counts each of its ``fuzz`` instances as one check.

    ``inject_ordering_violation`` feeds one descending eigenvalue sequence to
    ``quasi_vandermonde``; the resulting contract violation shows up as a
    failure of the positivity property.

    Raises:
        UsageError: trials < 1, or a dimension outside 1..5
    """
    if trials < 1:
        raise UsageError("trials must be >= 1", {"trials": trials})
    dims = list(dims)
    if not dims or any(n not in SUPPORTED_DIMS for n in dims):
        raise UsageError("dims must be a nonempty subset of 1..5", {"dims": dims})

    rng = np.random.default_rng(seed)
    report = VerifyReport(seed=seed, dims=dims, trials=trials)

    for _ in range(fuzz):
        _run_check(report, POSITIVITY, lambda: check_positivity(rng, 1))
    if inject_ordering_violation:
        _run_check(report, POSITIVITY, lambda: _ordering_violation(rng))

    checks = [
        (EQUIVALENCE, check_method_equivalence),
        (MONOTONICITY, check_monotonicity),
        (COVARIANCE, check_covariance),
        (CONVERGENCE, check_convergence),
    ]
    for n in dims:
        for _ in range(trials):
            for prop, check in checks:
                _run_check(report, prop, lambda: check(rng, n))
        _run_check(report, COUNTERS, lambda: check_counters(rng, n))
        logger.info("verify n=%d: %d trials done", n, trials)

    logger.info(
        "verify seed=%d: %d checks, %d failures",
        seed, sum(o.total for o in report.properties.values()), len(report.failures),
    )
    return report


def render_verify(report: VerifyReport, fmt: str = "text") -> str:
    if fmt == "json":
        return report.model_dump_json(indent=2) + "\n"
    lines = [f"seed: {report.seed}", f"dims: {report.dims}", f"trials: {report.trials}"]
    for prop, outcome in report.properties.items():
        lines.append(f"{prop}: {outcome.passed}/{outcome.total} passed")
    lines.extend(f"FAIL {failure}" for failure in report.failures)
    lines.append("result: " + ("pass" if report.ok else "fail"))
    return "\n".join(lines) + "\n"

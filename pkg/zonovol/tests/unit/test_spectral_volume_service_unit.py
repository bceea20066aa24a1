import math

import numpy as np
import pytest

from zonovol.core.exceptions import ContractViolation, DomainError, SpectralUnsupported
from zonovol.schemas.matrix import RealMatrix
from zonovol.schemas.volume import VolumeMethod
from zonovol.services.generic_volume_service import volume_exact
from zonovol.services.linalg_service import controllability_matrix, determinant
from zonovol.services.spectral_volume_service import (
    SpectralTable,
    analytic_mult_count,
    quasi_vandermonde,
    spectral_mult_model,
    vandermonde_product,
    volume_analytic,
    volume_infinite,
    volume_spectral,
)
from zonovol.tests.utils.factories import diagonal_model, model, random_spectral_model


# ---------- quasi-Vandermonde ----------


def test_quasi_vandermonde_small_cases():
    assert quasi_vandermonde([1.0, 2.0], [0, 1]) == pytest.approx(1.0)
    assert quasi_vandermonde([2.0, 3.0], [1, 2]) == pytest.approx(6.0)


def test_quasi_vandermonde_matches_generic_determinant(rng):
    for _ in range(200):
        n = int(rng.integers(1, 5))
        lam = np.sort(rng.choice(np.linspace(0.1, 2.0, 20), size=n, replace=False))
        k = np.sort(rng.choice(8, size=n, replace=False))
        matrix = np.power.outer(lam, k)
        expected = determinant(RealMatrix(values=matrix))
        value = quasi_vandermonde(lam.tolist(), k.tolist())
        assert value > 0
        assert value == pytest.approx(expected, rel=1e-9)


def test_quasi_vandermonde_positivity_fuzz(rng):
    for _ in range(2000):
        n = int(rng.integers(1, 7))
        lam = np.sort(rng.uniform(0.01, 2.0, size=n))
        if np.any(np.diff(lam) <= 0):
            continue
        k = np.sort(rng.choice(3 * n, size=n, replace=False))
        assert quasi_vandermonde(lam.tolist(), k.tolist()) > 0


@pytest.mark.parametrize(
    "lambdas, exponents",
    [
        ([2.0, 1.0], [0, 1]),
        ([1.0, 2.0], [1, 0]),
        ([-1.0, 2.0], [0, 1]),
        ([1.0, 2.0], [0]),
        ([1.0, 1.0], [0, 1]),
        ([1.0, 2.0], [-1, 1]),
    ],
)
def test_quasi_vandermonde_contract(lambdas, exponents):
    with pytest.raises(ContractViolation):
        quasi_vandermonde(lambdas, exponents)


def test_vandermonde_product():
    assert vandermonde_product([1.0, 2.0, 4.0]) == pytest.approx(1.0 * 3.0 * 2.0)


# ---------- subset table ----------


def test_table_singletons_are_geometric_sums():
    lam = [0.4, 0.9, 1.0, 1.3]
    table = SpectralTable(lam)
    for _ in range(40):
        table.advance()
        assert table.singleton_residual() < 1e-12
    assert table.values.shape == (16,)
    assert np.all(np.isfinite(table.values))


def test_table_full_set_is_sum_of_quasi_vandermonde():
    lam = [0.5, 0.8, 1.1]
    N = 6
    table = SpectralTable(lam).advance_to(N)
    expected = sum(
        quasi_vandermonde(lam, [a, b, c])
        for a in range(N)
        for b in range(a + 1, N)
        for c in range(b + 1, N)
    )
    assert table.volume_factor == pytest.approx(expected, rel=1e-12)
    assert table.value([0, 2]) > 0


def test_table_counts_match_linear_slope():
    for n in (3, 4):
        lam = np.linspace(0.3, 0.9, n)
        counts = {N: SpectralTable(lam).advance_to(N).mult_count for N in (100, 200, 400, 800)}
        slope = n * (2 ** (n - 1) + 1)
        assert counts[200] - counts[100] == 100 * slope
        assert 1.8 <= counts[800] / counts[400] <= 2.2


def test_mult_count_model():
    # n(N-2) + sum_i C(n,i) i (N-n) + sum_i i(i-1)/2
    assert spectral_mult_model(3, 100) == 3 * 98 + (3 * 2 + 3) * 97 + (1 + 3)
    assert spectral_mult_model(4, 3) == 0
    assert 1.8 <= spectral_mult_model(4, 800) / spectral_mult_model(4, 400) <= 2.2


# ---------- finite horizon ----------


def test_spectral_single_state_geometric_sum():
    result = volume_spectral(model([[0.5]], [[1.0]]), 3)
    assert result.volume == pytest.approx(1.75)
    assert result.method is VolumeMethod.spectral


def test_spectral_diagonal_matches_exact():
    m = diagonal_model([0.5, 0.8])
    spectral = volume_spectral(m, 6).volume
    exact = volume_exact(controllability_matrix(m, 6)).volume
    assert spectral == pytest.approx(exact, rel=1e-8)


def test_spectral_matches_exact_on_random_models(rng):
    for n in (2, 3, 4):
        for _ in range(5):
            m = random_spectral_model(rng, n)
            N = int(rng.integers(n, 13))
            exact = volume_exact(controllability_matrix(m, N)).volume
            assert volume_spectral(m, N).volume == pytest.approx(exact, rel=1e-8)


def test_spectral_below_n_is_zero():
    result = volume_spectral(diagonal_model([0.5, 0.8, 0.9]), 2)
    assert result.volume == pytest.approx(0.0, abs=1e-12)
    assert result.notes["rank_deficient"] is True


def test_spectral_uncontrollable_mode():
    result = volume_spectral(diagonal_model([0.5, 0.8], B=[[1.0], [0.0]]), 5)
    assert result.volume == 0.0
    assert result.notes["uncontrollable_modes"] == [1]


def test_spectral_rejects_multi_input():
    with pytest.raises(ContractViolation):
        volume_spectral(model(np.diag([0.5, 0.8]), np.eye(2)), 4)


def test_spectral_rejects_complex_spectrum():
    with pytest.raises(SpectralUnsupported):
        volume_spectral(model([[0.0, -1.0], [1.0, 0.0]], [[1.0], [0.0]]), 4)


def test_spectral_ex1_counter(ex1):
    first = volume_spectral(ex1, 100)
    second = volume_spectral(ex1, 200)
    assert first.mult_count == 1479
    assert abs(first.mult_count - 1470) / 1470 < 0.01
    assert second.mult_count - first.mult_count == 1500


def test_spectral_ex2_counter(ex2):
    first = volume_spectral(ex2, 50)
    second = volume_spectral(ex2, 100)
    assert first.mult_count == 1740
    assert second.mult_count - first.mult_count == 1800


# ---------- infinite horizon ----------


def test_volume_infinite_spot_values():
    assert volume_infinite([0.5]) == 2.0
    assert volume_infinite([0.5, 0.8]) == pytest.approx(5.0, rel=1e-12)


def test_volume_infinite_is_limit_of_table():
    table = SpectralTable([0.5, 0.8]).advance_to(200)
    assert table.volume_factor == pytest.approx(5.0, rel=1e-6)
    assert table.volume_factor <= 5.0 + 1e-9


@pytest.mark.parametrize("lambdas", [[1.0], [0.0, 0.5], [0.5, 0.3], [0.5, 1.2], []])
def test_volume_infinite_domain(lambdas):
    with pytest.raises(DomainError):
        volume_infinite(lambdas)


def test_volume_analytic_counter():
    m = diagonal_model([0.2, 0.4, 0.6, 0.8])
    result = volume_analytic(m)
    assert result.horizon is None
    assert result.mult_count == analytic_mult_count(4) == 26
    assert result.volume == pytest.approx(volume_infinite([0.2, 0.4, 0.6, 0.8]), rel=1e-12)


def test_volume_analytic_is_limit_of_spectral(rng):
    m = random_spectral_model(rng, 3, lo=0.2, hi=0.8, gap=0.1)
    limit = volume_analytic(m).volume
    assert volume_spectral(m, 400).volume == pytest.approx(limit, rel=1e-6)
    assert math.isfinite(limit)

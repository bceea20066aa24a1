"""Published volumes and operation counts for the two bundled examples."""

import math

import pytest

from zonovol.services.region_service import (
    controllable_volume,
    controllable_volume_infinite,
    reachable_volume,
)

pytestmark = pytest.mark.integration

REL = 5e-4

EX1_REACHABLE = {
    100: 4.622e9,
    200: 1.162e11,
    300: 8.015e11,
    400: 3.553e12,
    500: 1.274e13,
    600: 4.057e13,
    700: 1.199e14,
    800: 3.373e14,
}

EX2_CONTROLLABLE = {
    50: 2.388e8,
    100: 7.495e8,
    150: 8.671e8,
    200: 8.846e8,
    250: 8.871e8,
    300: 8.874e8,
    350: 8.874e8,
    400: 8.874e8,
}

EX2_INFINITE = 8.874e8


@pytest.mark.parametrize("N, expected", sorted(EX1_REACHABLE.items()))
def test_ex1_reachable_spectral(ex1, N, expected):
    assert reachable_volume(ex1, N, "spectral").volume == pytest.approx(expected, rel=REL)


@pytest.mark.parametrize("N, expected", sorted(EX2_CONTROLLABLE.items()))
def test_ex2_controllable_spectral(ex2, N, expected):
    assert controllable_volume(ex2, N, "spectral").volume == pytest.approx(expected, rel=REL)


def test_ex2_controllable_infinite(ex2):
    result = controllable_volume_infinite(ex2)
    assert result.volume == pytest.approx(EX2_INFINITE, rel=REL)
    assert result.mult_count == 26


def test_ex2_finite_volumes_approach_limit(ex2):
    limit = controllable_volume_infinite(ex2).volume
    volumes = [controllable_volume(ex2, N, "spectral").volume for N in sorted(EX2_CONTROLLABLE)]
    assert all(b >= a * (1 - 1e-9) for a, b in zip(volumes, volumes[1:]))
    assert all(v <= limit * (1 + 1e-9) for v in volumes)


def test_exact_counts_small_horizons(ex1, ex2):
    first = reachable_volume(ex1, 100, "exact")
    assert first.det_count == math.comb(100, 3) == 161700
    assert first.volume == pytest.approx(EX1_REACHABLE[100], rel=REL)

    second = controllable_volume(ex2, 50, "exact")
    assert second.det_count == math.comb(50, 4)
    assert second.volume == pytest.approx(EX2_CONTROLLABLE[50], rel=REL)


def test_recursive_counts(ex1, ex2):
    assert reachable_volume(ex1, 100, "recursive").det_count == math.comb(99, 2) + 2
    result = controllable_volume(ex2, 50, "recursive")
    assert result.det_count == math.comb(49, 3) + 2 == 18426
    assert result.volume == pytest.approx(EX2_CONTROLLABLE[50], rel=REL)


def test_spectral_counts_grow_linearly(ex1, ex2):
    for model, region_volume in ((ex1, reachable_volume), (ex2, controllable_volume)):
        low = region_volume(model, 400, "spectral").mult_count
        high = region_volume(model, 800, "spectral").mult_count
        assert 1.8 <= high / low <= 2.2


@pytest.mark.slow
@pytest.mark.parametrize("N", [200, 400, 800])
def test_ex1_reachable_recursive(ex1, N):
    result = reachable_volume(ex1, N, "recursive")
    assert result.volume == pytest.approx(EX1_REACHABLE[N], rel=REL)
    assert result.det_count == math.comb(N - 1, 2) + 2


@pytest.mark.slow
def test_ex1_recursive_count_ratio(ex1):
    low = reachable_volume(ex1, 400, "recursive").det_count
    high = reachable_volume(ex1, 800, "recursive").det_count
    assert 3.6 <= high / low <= 4.4


@pytest.mark.parametrize(
    "N",
    [
        pytest.param(100, marks=pytest.mark.slow),
        pytest.param(200, marks=pytest.mark.slow),
        300,
        400,
    ],
)
def test_ex2_controllable_recursive(ex2, N):
    result = controllable_volume(ex2, N, "recursive")
    assert result.volume == pytest.approx(EX2_CONTROLLABLE[N], rel=REL)
    assert result.det_count == math.comb(N - 1, 3) + 2


@pytest.mark.slow
@pytest.mark.parametrize("N", [200, 300])
def test_ex1_reachable_exact(ex1, N):
    result = reachable_volume(ex1, N, "exact")
    assert result.volume == pytest.approx(EX1_REACHABLE[N], rel=REL)
    assert result.det_count == math.comb(N, 3)


@pytest.mark.slow
def test_ex2_controllable_exact(ex2):
    result = controllable_volume(ex2, 100, "exact")
    assert result.volume == pytest.approx(EX2_CONTROLLABLE[100], rel=REL)
    assert result.det_count == math.comb(100, 4)


@pytest.mark.slow
def test_ex2_reachable_recursive_matches_spectral(ex2):
    recursive = reachable_volume(ex2, 300, "recursive")
    spectral = reachable_volume(ex2, 300, "spectral")
    assert recursive.volume == pytest.approx(spectral.volume, rel=1e-6)

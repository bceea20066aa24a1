import json

import numpy as np
import pytest

from zonovol.core.exceptions import UsageError
from zonovol.services.verify_service import (
    COUNTERS,
    EQUIVALENCE,
    POSITIVITY,
    check_convergence,
    check_covariance,
    check_method_equivalence,
    check_positivity,
    render_verify,
    run_verify,
    sorted_spaced,
)


def test_sorted_spaced(rng):
    values = sorted_spaced(rng, 5, 0.1, 1.0, 0.1)
    assert np.all(np.diff(values) >= 0.1 - 1e-12)
    assert values[0] >= 0.1 and values[-1] <= 1.0 + 1e-12
    with pytest.raises(ValueError):
        sorted_spaced(rng, 5, 0.0, 0.3, 0.1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_single_checks_pass(rng, n):
    assert check_method_equivalence(rng, n) is None
    assert check_covariance(rng, n) is None
    assert check_convergence(rng, n) is None


def test_positivity_fuzz(rng):
    assert check_positivity(rng, 500) is None


def test_seeded_run_passes():
    report = run_verify(7, [2, 3], 2, fuzz=200)
    assert report.ok, report.failures
    assert report.properties[EQUIVALENCE].passed == 4
    assert report.properties[COUNTERS].total == 2
    assert report.properties[POSITIVITY].total == 200
    assert report.properties[POSITIVITY].passed == 200


def test_same_seed_same_report():
    first = run_verify(3, [2], 1, fuzz=50)
    second = run_verify(3, [2], 1, fuzz=50)
    assert first.model_dump() == second.model_dump()


def test_injected_ordering_violation_fails():
    report = run_verify(7, [2], 1, fuzz=10, inject_ordering_violation=True)
    assert not report.ok
    assert report.properties[POSITIVITY].failed == 1
    assert report.properties[POSITIVITY].total == 11
    assert report.failures[0].startswith(f"{POSITIVITY}: CONTRACT_VIOLATION")


@pytest.mark.parametrize("trials, dims", [(0, [2]), (1, []), (1, [6]), (1, [0, 2])])
def test_usage_errors(trials, dims):
    with pytest.raises(UsageError):
        run_verify(1, dims, trials)


def test_render_verify():
    report = run_verify(11, [2], 1, fuzz=20)
    text = render_verify(report)
    assert "method_equivalence: 1/1 passed" in text
    assert text.rstrip().endswith("result: pass")
    assert json.loads(render_verify(report, "json"))["seed"] == 11

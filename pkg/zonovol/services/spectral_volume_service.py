# zonovol/services/spectral_volume_service.py

"""
Fast path for single-input pairs whose A has real, distinct, positive
eigenvalues.

After diagonalization W A W^-1 = diag(lambda), Gamma = W B = beta, the
zonotope volume of P_N is

    |det W|^-1 * |prod beta_i| * V_N(lambda_1 .. lambda_n)

where V_N sums the quasi-Vandermonde determinants over every sorted exponent
tuple below N. V_N is advanced in O(N) through a table holding V^S_k for
every nonempty eigenvalue subset S; for lambda in (0, 1) its limit has a
closed form.
"""

import math
import time
from itertools import combinations
from typing import Sequence, Tuple

import numpy as np

from zonovol.core.config import settings
from zonovol.core.exceptions import ContractViolation, DomainError, EmptyHorizonError
from zonovol.core.logging import get_logger
from zonovol.core.metrics import record_computation
from zonovol.schemas.matrix import RealMatrix, Spectrum, SystemModel
from zonovol.schemas.volume import VolumeMethod, VolumeResult
from zonovol.services.linalg_service import determinant, diagonalize

logger = get_logger(__name__)


# ---------- quasi-Vandermonde determinants ----------


def _check_ordering(lambdas: Sequence[float], exponents: Sequence[int]) -> None:
    if len(lambdas) != len(exponents) or not lambdas:
        raise ContractViolation(
            "bases and exponents must be nonempty and of equal length",
            {"bases": len(lambdas), "exponents": len(exponents)},
        )
    if lambdas[0] <= 0 or any(b <= a for a, b in zip(lambdas, lambdas[1:])):
        raise ContractViolation(
            "bases must be positive and strictly ascending",
            {"bases": list(lambdas)},
        )
    if any(int(k) != k for k in exponents) or exponents[0] < 0 or any(
        b <= a for a, b in zip(exponents, exponents[1:])
    ):
        raise ContractViolation(
            "exponents must be nonnegative integers, strictly ascending",
            {"exponents": list(exponents)},
        )


def vandermonde_product(lambdas: Sequence[float]) -> float:
    """det[lambda_i^(j-1)] = prod_{i<j} (lambda_j - lambda_i)."""
    value = 1.0
    for i, j in combinations(range(len(lambdas)), 2):
        value *= lambdas[j] - lambdas[i]
    return value


def _complete_homogeneous(lambdas: Sequence[float], degree: int) -> np.ndarray:
    """h[i, d] = h_d(lambda_1 .. lambda_{i+1}), complete homogeneous polynomials."""
    n = len(lambdas)
    h = np.zeros((n, degree + 1))
    h[0] = np.power(lambdas[0], np.arange(degree + 1))
    for i in range(1, n):
        h[i, 0] = 1.0
        for d in range(1, degree + 1):
            h[i, d] = h[i - 1, d] + lambdas[i] * h[i, d - 1]
    return h


def quasi_vandermonde(lambdas: Sequence[float], exponents: Sequence[int]) -> float:
    """
    det[lambda_i^(k_j)] for 0 < lambda_1 < ... < lambda_n and 0 <= k_1 < ... < k_n.

    Factored as the plain Vandermonde product times the determinant of the
    divided differences of x^(k_j); the latter entries are complete
    homogeneous polynomials of the leading bases, so no entry cancels.
    The result is strictly positive.

    Raises:
        ContractViolation: ordering preconditions violated
    """
    lambdas = [float(x) for x in lambdas]
    _check_ordering(lambdas, exponents)
    n = len(lambdas)
    base = vandermonde_product(lambdas)
    if list(exponents) == list(range(n)):
        return base

    h = _complete_homogeneous(lambdas, int(exponents[-1]))
    divided = np.zeros((n, n))
    for i in range(n):
        for j, k in enumerate(exponents):
            degree = int(k) - i
            if degree >= 0:
                divided[i, j] = h[i, degree]
    return base * determinant(RealMatrix(values=divided))


# ---------- subset recursion ----------


class SpectralTable:
    """
    Running values V^S_k for every nonempty subset S of the eigenvalues.

    Subsets are bit masks over the ascending eigenvalues; index 0 holds the
    empty set with the constant value 1. A subset of size s is zero for k < s,
    seeded with its Vandermonde product at k = s, and afterwards advanced by

        V^S_k = V^S_{k-1} + sum_j (-1)^(s+j) lambda_j^(k-1) V^{S minus j}_{k-1}

    with j the 1-based position inside S.
    """

    def __init__(self, lambdas: Sequence[float]):
        self.lambdas = np.asarray(lambdas, dtype=float)
        self.n = len(self.lambdas)
        self.values = np.zeros(1 << self.n)
        self.values[0] = 1.0
        self.step = 0
        self.mult_count = 0
        self._powers = np.ones(self.n)
        self._members = [
            tuple(j for j in range(self.n) if mask >> j & 1)
            for mask in range(1 << self.n)
        ]
        # larger subsets first: each update then reads last step's smaller ones
        self._order = sorted(
            range(1, 1 << self.n), key=lambda m: (-len(self._members[m]), m)
        )

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def volume_factor(self) -> float:
        """V_k over all n eigenvalues."""
        return float(self.values[self.full_mask])

    def value(self, subset: Sequence[int]) -> float:
        mask = 0
        for j in subset:
            mask |= 1 << j
        return float(self.values[mask])

    def advance(self) -> None:
        k = self.step + 1
        if k == 2:
            self._powers = self.lambdas.copy()
        elif k >= 3:
            self._powers = self._powers * self.lambdas
            self.mult_count += self.n

        for mask in self._order:
            members = self._members[mask]
            s = len(members)
            if s > k:
                continue
            if s == k:
                self.values[mask] = quasi_vandermonde(
                    self.lambdas[list(members)], range(s)
                )
                self.mult_count += s * (s - 1) // 2
                continue
            increment = 0.0
            for pos, j in enumerate(members, start=1):
                term = self._powers[j] * self.values[mask & ~(1 << j)]
                increment += term if (s + pos) % 2 == 0 else -term
            self.values[mask] += increment
            self.mult_count += s
        self.step = k

    def advance_to(self, horizon: int) -> "SpectralTable":
        while self.step < horizon:
            self.advance()
        return self

    def singleton_residual(self) -> float:
        """Largest relative gap between singleton entries and their geometric sums."""
        worst = 0.0
        for j, lam in enumerate(self.lambdas):
            k = self.step
            expected = float(k) if lam == 1.0 else (1.0 - lam**k) / (1.0 - lam)
            got = self.values[1 << j]
            worst = max(worst, abs(got - expected) / max(abs(expected), 1e-300))
        return worst


def spectral_mult_model(n: int, N: int) -> int:
    """Multiplication-count model of the subset recursion at horizon N."""
    if N < n:
        return 0
    powers = n * max(N - 2, 0)
    updates = sum(math.comb(n, i) * i * (N - n) for i in range(2, n + 1))
    seeds = sum(i * (i - 1) // 2 for i in range(2, n + 1))
    return powers + updates + seeds


# ---------- spectral volume ----------


def _beta_notes(spectrum: Spectrum) -> dict:
    beta = np.abs(np.asarray(spectrum.beta))
    limit = settings.BETA_ZERO_TOL_REL * float(beta.max(initial=0.0))
    zero = np.flatnonzero(beta <= limit).tolist()
    if zero:
        return {"uncontrollable_modes": zero, "eigenvalues": list(spectrum.eigenvalues)}
    return {}


def _spectral_scale(spectrum: Spectrum) -> float:
    """|prod beta_i| / |det W|."""
    return abs(math.prod(spectrum.beta)) / spectrum.det_W_abs


def _spectrum_notes(spectrum: Spectrum) -> dict:
    notes = {
        "eigenvalues": list(spectrum.eigenvalues),
        "condition_W": spectrum.condition,
    }
    if spectrum.condition > settings.COND_WARN:
        notes["ill_conditioned"] = True
    return notes


def _require_single_input(model: SystemModel) -> None:
    if model.r != 1:
        raise ContractViolation(
            "spectral recursion is defined for single-input pairs only",
            {"r": model.r},
        )


def volume_spectral(model: SystemModel, N: int) -> VolumeResult:
    """
    Zonotope volume of P_N through the subset recursion on the spectrum of A.

    Raises:
        EmptyHorizonError: N < 1
        ContractViolation: B has more than one column
        SpectralUnsupported: complex, repeated or non-positive eigenvalues
    """
    if N < 1:
        raise EmptyHorizonError(N)
    _require_single_input(model)
    started = time.perf_counter()
    spectrum = diagonalize(model)
    n = spectrum.n

    uncontrollable = _beta_notes(spectrum)
    if uncontrollable:
        logger.warning("uncontrollable modes in %s: %s", model.name, uncontrollable)
        return VolumeResult(
            volume=0.0, method=VolumeMethod.spectral, horizon=N, notes=uncontrollable
        )

    table = SpectralTable(spectrum.eigenvalues).advance_to(N)
    volume = _spectral_scale(spectrum) * table.volume_factor
    mult_count = table.mult_count + n if N >= n else table.mult_count
    elapsed = time.perf_counter() - started

    record_computation(
        VolumeMethod.spectral.value, mult_count=mult_count, seconds=elapsed
    )
    logger.info(
        "spectral volume %s N=%d -> %.6e (n_p=%d, %.2f ms)",
        model.name, N, volume, mult_count, elapsed * 1e3,
    )
    notes = _spectrum_notes(spectrum)
    if N < n:
        notes.update({"rank_deficient": True, "rank": N, "n": n})
    return VolumeResult(
        volume=max(volume, 0.0),
        method=VolumeMethod.spectral,
        horizon=N,
        mult_count=mult_count,
        wall_ms=elapsed * 1e3,
        notes=notes,
    )


# ---------- infinite horizon ----------


def analytic_mult_count(n: int) -> int:
    """Multiplications of the closed form (3 per pair, 1 per single) plus n for the beta product."""
    return 3 * math.comb(n, 2) + 2 * n


def _phi(lambdas: Sequence[float]) -> Tuple[float, int]:
    lam = [float(x) for x in lambdas]
    if not lam:
        raise DomainError("at least one eigenvalue is required")
    margin = settings.INFINITE_MARGIN
    if lam[0] <= 0 or lam[-1] > 1.0 - margin:
        raise DomainError(
            f"eigenvalues must lie in (0, {1.0 - margin}]",
            {"eigenvalues": lam, "margin": margin},
        )
    if any(b <= a for a, b in zip(lam, lam[1:])):
        raise DomainError("eigenvalues must be strictly ascending", {"eigenvalues": lam})

    value = 1.0
    for a, b in combinations(lam, 2):
        value *= (b - a) / (1.0 - a * b)
    for x in lam:
        value *= 1.0 / (1.0 - x)
    return value, 3 * math.comb(len(lam), 2) + len(lam)


def volume_infinite(lambdas: Sequence[float]) -> float:
    """
    Limit of V_N as N grows, for 0 < lambda_1 < ... < lambda_n < 1:

        prod_{i<j} (lambda_j - lambda_i) / (1 - lambda_i lambda_j) * prod_i 1 / (1 - lambda_i)

    Raises:
        DomainError: some lambda <= 0, some lambda > 1 - INFINITE_MARGIN, or unsorted
    """
    return _phi(lambdas)[0]


def volume_analytic(model: SystemModel) -> VolumeResult:
    """
    Infinite-horizon zonotope volume of the pair, |det W|^-1 |prod beta| Phi(lambda).

    Raises:
        ContractViolation: B has more than one column
        SpectralUnsupported: complex, repeated or non-positive eigenvalues
        DomainError: an eigenvalue at or above 1 - INFINITE_MARGIN
    """
    _require_single_input(model)
    started = time.perf_counter()
    spectrum = diagonalize(model)

    uncontrollable = _beta_notes(spectrum)
    if uncontrollable:
        return VolumeResult(
            volume=0.0, method=VolumeMethod.analytic, horizon=None, notes=uncontrollable
        )

    phi, mults = _phi(spectrum.eigenvalues)
    volume = _spectral_scale(spectrum) * phi
    mult_count = mults + spectrum.n
    elapsed = time.perf_counter() - started

    record_computation(
        VolumeMethod.analytic.value, mult_count=mult_count, seconds=elapsed
    )
    logger.info(
        "analytic volume %s -> %.6e (n_inf=%d)", model.name, volume, mult_count
    )
    notes = _spectrum_notes(spectrum)
    notes["phi"] = phi
    return VolumeResult(
        volume=volume,
        method=VolumeMethod.analytic,
        horizon=None,
        mult_count=mult_count,
        wall_ms=elapsed * 1e3,
        notes=notes,
    )

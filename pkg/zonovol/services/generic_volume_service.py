# zonovol/services/generic_volume_service.py

"""
Eigenvalue-agnostic volume engines for the zonotope spanned by the columns of
a matrix with unit-interval coefficients: full determinant enumeration, and
the second-order recursion in the horizon for generator pairs {A, B}.
"""

import math
import time
from typing import Iterable, Optional, Tuple

import numpy as np

from zonovol.core.config import settings
from zonovol.core.exceptions import BudgetExceeded, EmptyHorizonError
from zonovol.core.logging import get_logger
from zonovol.core.metrics import record_computation
from zonovol.schemas.matrix import RealMatrix, SystemModel
from zonovol.schemas.tuples import IndexTuple, TupleSet
from zonovol.schemas.volume import VolumeMethod, VolumeResult
from zonovol.services.index_service import chunked, cross, enumerate_tuples
from zonovol.services.linalg_service import (
    controllability_matrix,
    controllable_rank,
    determinant,
    determinants,
    matrix_rank,
)

logger = get_logger(__name__)


def exact_det_count(m: int, n: int) -> int:
    """Determinant evaluations of the enumeration method: C(m, n)."""
    return math.comb(m, n) if 0 <= n <= m else 0


def recursive_step_bound(n: int, r: int, N: int) -> int:
    """Upper estimate of the determinants evaluated at recursion step N.

    (r * r^(r/2))^2 * (rN-2)! / ((rN-n)! (n-2)!) + 1, where the squared
    prefactor is exactly r^(r+2).
    """
    if n < 2 or r * N < n:
        return 1
    return r ** (r + 2) * math.comb(r * N - 2, n - 2) + 1


def _abs_det_sum(
    Z: np.ndarray, stream: Iterable[IndexTuple], arity: int
) -> Tuple[float, int]:
    """Compensated sum of |det| over a tuple stream, with the evaluation count."""
    partials = []
    count = 0
    for columns in chunked(stream, arity, settings.DET_CHUNK_SIZE):
        dets = determinants(Z, columns)
        partials.append(math.fsum(np.abs(dets).tolist()))
        count += len(columns)
    return math.fsum(partials), count


def _rank_deficient(rank: int, n: int, **fields) -> dict:
    return {"rank_deficient": True, "rank": rank, "n": n, **fields}


def _exact_sum(Z: RealMatrix, rank: Optional[int] = None) -> Tuple[float, int, dict]:
    n, m = Z.rows, Z.cols
    if rank is None:
        rank = matrix_rank(Z)
    if m < n or rank < n:
        return 0.0, 0, _rank_deficient(rank, n)
    total, count = _abs_det_sum(Z.values, enumerate_tuples(TupleSet.omega(m, n)), n)
    return total, count, {}


def volume_exact(
    Z: RealMatrix, *, det_budget: Optional[int] = None, rank: Optional[int] = None
) -> VolumeResult:
    """
    Volume of the zonotope {sum c_i z_i, c_i in [0, 1]} by summing |det| over
    every sorted n-subset of the m columns of Z.

    A rank-deficient Z returns volume 0 with a ``rank_deficient`` note; callers
    that know rank(Z) from structure pass it as ``rank``.

    Raises:
        BudgetExceeded: C(m, n) above ``det_budget``
    """
    needed = exact_det_count(Z.cols, Z.rows)
    if det_budget is not None and needed > det_budget:
        raise BudgetExceeded(needed, det_budget)

    started = time.perf_counter()
    volume, count, notes = _exact_sum(Z, rank)
    elapsed = time.perf_counter() - started
    if notes:
        logger.warning("rank-deficient generator matrix: %s", notes)

    record_computation(VolumeMethod.exact.value, det_count=count, seconds=elapsed)
    logger.info(
        "exact volume n=%d m=%d -> %.6e (n_d=%d, %.1f ms)",
        Z.rows, Z.cols, volume, count, elapsed * 1e3,
    )
    return VolumeResult(
        volume=volume,
        method=VolumeMethod.exact,
        det_count=count,
        wall_ms=elapsed * 1e3,
        notes=notes,
    )


def _cross_term(P: np.ndarray, n: int, r: int, N: int) -> Tuple[float, int]:
    """Sum over tuples touching both the first and the last block of P_N."""
    total = []
    count = 0
    for j in range(1, r + 1):
        for k in range(1, r + 1):
            parts = [
                TupleSet(lo_block=0, hi_block=0, arity=j, input_width=r),
                TupleSet(lo_block=1, hi_block=N - 2, arity=n - j - k, input_width=r),
                TupleSet(lo_block=N - 1, hi_block=N - 1, arity=k, input_width=r),
            ]
            value, evaluated = _abs_det_sum(P, cross(parts), n)
            total.append(value)
            count += evaluated
    return math.fsum(total), count


def volume_recursive(model: SystemModel, N: int) -> VolumeResult:
    """
    Zonotope volume of P_N through

        V(N) = (1 + |det A|) V(N-1) - |det A| V(N-2) + cross-term(N),

    seeded with the enumeration method at N0 = ceil(n/r) and N0 + 1.

    Raises:
        EmptyHorizonError: N < 1
    """
    if N < 1:
        raise EmptyHorizonError(N)
    n, r = model.n, model.r
    started = time.perf_counter()
    N0 = math.ceil(n / r)

    if N < N0:
        return VolumeResult(
            volume=0.0,
            method=VolumeMethod.recursive,
            horizon=N,
            notes=_rank_deficient(min(r * N, n), n, reason="rN < n"),
        )

    P = controllability_matrix(model, N).values
    rank = controllable_rank(model, N)
    if rank < n:
        logger.warning("uncontrollable pair %s: rank(P_N) = %d < %d", model.name, rank, n)
        return VolumeResult(
            volume=0.0,
            method=VolumeMethod.recursive,
            horizon=N,
            notes=_rank_deficient(rank, n),
        )

    det_a = abs(determinant(model.A))
    seeds = []
    det_count = 0
    for horizon in (N0, N0 + 1):
        if horizon > N:
            break
        value, evaluated, _ = _exact_sum(
            RealMatrix(values=P[:, : r * horizon]), controllable_rank(model, horizon)
        )
        seeds.append(value)
        det_count += evaluated

    prev2, prev1 = (0.0, seeds[0]) if len(seeds) == 1 else (seeds[0], seeds[1])
    step_count = 0
    for step in range(N0 + 2, N + 1):
        extra, step_count = _cross_term(P, n, r, step)
        det_count += step_count
        prev2, prev1 = prev1, (1.0 + det_a) * prev1 - det_a * prev2 + extra
        logger.debug("recursion step N=%d V=%.6e (+%d dets)", step, prev1, step_count)

    elapsed = time.perf_counter() - started
    record_computation(
        VolumeMethod.recursive.value, det_count=det_count, seconds=elapsed
    )
    logger.info(
        "recursive volume %s N=%d -> %.6e (n_d=%d, %.1f ms)",
        model.name, N, prev1, det_count, elapsed * 1e3,
    )
    return VolumeResult(
        volume=max(prev1, 0.0),
        method=VolumeMethod.recursive,
        horizon=N,
        det_count=det_count,
        wall_ms=elapsed * 1e3,
        notes={
            "abs_det_A": det_a,
            "seed_horizon": N0,
            "last_step_dets": step_count,
            "step_bound": recursive_step_bound(n, r, N),
        },
    )

# zonovol/services/region_service.py

"""
Reachable and controllable region volumes.

The engines compute volumes of unit-interval zonotopes; the factor 2^n that
turns them into |u| <= 1 region volumes is applied here and nowhere else.

State and input sequences (x_k, u_k, U_N) only define the regions: the
reachable region is P_N U_N and the controllable region A^-N P_N U_N over
||U_N||_inf <= 1, so both are zonotopes of column sets.
"""

import math
from typing import Optional

import numpy as np

from zonovol.core.config import settings
from zonovol.core.exceptions import (
    ContractViolation,
    DivergentRegionError,
    EmptyHorizonError,
    SingularMatrixError,
    SpectralUnsupported,
    ZonovolError,
)
from zonovol.core.logging import get_logger
from zonovol.schemas.matrix import RealMatrix, SystemModel
from zonovol.schemas.region import (
    ControllableRoute,
    MethodChoice,
    RegionKind,
    RegionQuery,
)
from zonovol.schemas.volume import VolumeMethod, VolumeResult
from zonovol.services.generic_volume_service import volume_exact, volume_recursive
from zonovol.services.linalg_service import (
    controllability_matrix,
    controllable_rank,
    determinant,
    diagonalize,
    invert,
)
from zonovol.services.spectral_volume_service import volume_analytic, volume_spectral

logger = get_logger(__name__)


def resolve_method(model: SystemModel, method: MethodChoice | str) -> VolumeMethod:
    """``auto`` is spectral for single-input pairs with a supported spectrum, else recursive."""
    method = MethodChoice(method)
    if method is not MethodChoice.auto:
        return VolumeMethod(method.value)
    if model.r != 1:
        return VolumeMethod.recursive
    try:
        diagonalize(model)
    except SpectralUnsupported as exc:
        logger.info("auto method: %s falls back to recursive (%s)", model.name, exc.reason)
        return VolumeMethod.recursive
    return VolumeMethod.spectral


def _recursive_oriented(model: SystemModel, N: int) -> VolumeResult:
    """
    Recursive volume of E(P_N), run on whichever of {A, B} and {A^-1, A^-1 B}
    has |det| <= 1.

    Growing columns A^k B turn nearly parallel and the cross-term determinants
    lose their relative accuracy. The columns of P_N(A^-1, A^-1 B) are those of
    A^-N P_N(A, B), so the volume is |det A|^N times the inverse-pair volume.
    """
    abs_det = abs(determinant(model.A))
    if abs_det <= 1.0:
        return volume_recursive(model, N)
    result = volume_recursive(inverse_pair(model), N)
    scaled = result.scaled(math.exp(N * math.log(abs_det)))
    scaled.notes["orientation"] = "inverse-pair"
    return scaled


def _zonotope_volume(
    model: SystemModel, N: int, method: VolumeMethod, det_budget: Optional[int]
) -> VolumeResult:
    if method is VolumeMethod.exact:
        result = volume_exact(
            controllability_matrix(model, N),
            det_budget=det_budget if det_budget is not None else settings.DET_BUDGET,
            rank=controllable_rank(model, N),
        )
        return result.model_copy(update={"horizon": N})
    if method is VolumeMethod.recursive:
        return _recursive_oriented(model, N)
    if method is VolumeMethod.spectral:
        return volume_spectral(model, N)
    raise ContractViolation(
        "the analytic method needs the infinite horizon", {"horizon": N}
    )


def _attach_method(exc: ZonovolError, method: VolumeMethod | MethodChoice | str) -> None:
    exc.with_details(method=getattr(method, "value", method))


def reachable_volume(
    model: SystemModel,
    N: int,
    method: MethodChoice | str = MethodChoice.auto,
    *,
    det_budget: Optional[int] = None,
) -> VolumeResult:
    """
    Volume of the N-step reachable region, 2^n V(E(P_N)).

    The exact method is capped at ``det_budget`` determinants, by default
    ``settings.DET_BUDGET``.

    Raises:
        EmptyHorizonError: N < 1
        ZonovolError: engine errors, with ``details["method"]`` set
    """
    if N < 1:
        raise EmptyHorizonError(N)
    engine = resolve_method(model, method)
    try:
        result = _zonotope_volume(model, N, engine, det_budget)
    except ZonovolError as exc:
        _attach_method(exc, engine)
        raise
    return result.scaled(
        float(2**model.n), region=RegionKind.reachable.value, horizon=N
    )


def inverse_pair(model: SystemModel) -> SystemModel:
    """{A^-1, A^-1 B}: its P_N columns are those of A^-N P_N in reverse block order."""
    A_inv = invert(model.A)
    return SystemModel(
        name=f"{model.name}^-1",
        A=A_inv,
        B=RealMatrix(values=A_inv.values @ model.B.values),
    )


def _abs_det_checked(model: SystemModel) -> float:
    det = determinant(model.A)
    if abs(det) <= settings.SINGULARITY_TOL:
        raise SingularMatrixError(det, settings.SINGULARITY_TOL)
    return abs(det)


def controllable_volume(
    model: SystemModel,
    N: int,
    method: MethodChoice | str = MethodChoice.auto,
    *,
    route: ControllableRoute | str = ControllableRoute.scale,
    det_budget: Optional[int] = None,
) -> VolumeResult:
    """
    Volume of the N-step controllable region, |det A|^-N times the reachable volume.

    With ``route="inverse-pair"`` the zonotope of {A^-1, A^-1 B} is measured
    directly; both routes agree.

    Raises:
        SingularMatrixError: A singular
        ZonovolError: engine errors, with ``details["method"]`` set
    """
    if N < 1:
        raise EmptyHorizonError(N)
    det_a = _abs_det_checked(model)
    route = ControllableRoute(route)

    if route is ControllableRoute.inverse_pair:
        result = reachable_volume(inverse_pair(model), N, method, det_budget=det_budget)
        return result.model_copy(
            update={"region": RegionKind.controllable.value, "notes": {
                **result.notes, "route": route.value,
            }}
        )

    result = reachable_volume(model, N, method, det_budget=det_budget)
    factor = math.exp(-N * math.log(det_a))
    scaled = result.scaled(factor, region=RegionKind.controllable.value)
    scaled.notes.update({"route": route.value, "abs_det_A": det_a})
    return scaled


def _infinite(model: SystemModel, region: RegionKind) -> VolumeResult:
    try:
        result = volume_analytic(model)
    except ZonovolError as exc:
        _attach_method(exc, VolumeMethod.analytic)
        raise
    return result.scaled(float(2**model.n), region=region.value, horizon=None)


def controllable_volume_infinite(model: SystemModel) -> VolumeResult:
    """
    Volume of the infinite-time controllable region, from the closed form on
    the inverse pair (whose eigenvalues 1/lambda_i lie in (0, 1)).

    Raises:
        SingularMatrixError: A singular
        DivergentRegionError: some |lambda_i| <= 1, the region is unbounded
        SpectralUnsupported: complex, repeated or non-positive eigenvalues
    """
    _abs_det_checked(model)
    magnitudes = np.abs(np.linalg.eigvals(model.A.values))
    if float(magnitudes.min()) <= 1.0:
        raise DivergentRegionError(
            "infinite-time controllable region is unbounded: some |eigenvalue| <= 1",
            {"min_abs_eigenvalue": float(magnitudes.min()), "method": "analytic"},
        )
    return _infinite(inverse_pair(model), RegionKind.controllable)


def reachable_volume_infinite(model: SystemModel) -> VolumeResult:
    """
    Volume of the infinite-time reachable region of a stable pair.

    Raises:
        DivergentRegionError: some |lambda_i| >= 1, the region is unbounded
        SpectralUnsupported: complex, repeated or non-positive eigenvalues
    """
    magnitudes = np.abs(np.linalg.eigvals(model.A.values))
    if float(magnitudes.max()) >= 1.0:
        raise DivergentRegionError(
            "infinite-time reachable region is unbounded: some |eigenvalue| >= 1",
            {"max_abs_eigenvalue": float(magnitudes.max()), "method": "analytic"},
        )
    return _infinite(model, RegionKind.reachable)


def evaluate(query: RegionQuery) -> VolumeResult:
    """Dispatch a validated query to the matching region operation."""
    if query.is_infinite:
        if query.region is RegionKind.controllable:
            return controllable_volume_infinite(query.model)
        return reachable_volume_infinite(query.model)
    if query.region is RegionKind.controllable:
        return controllable_volume(
            query.model,
            query.horizon,
            query.method,
            route=query.route,
            det_budget=query.det_budget,
        )
    return reachable_volume(
        query.model, query.horizon, query.method, det_budget=query.det_budget
    )

# zonovol/services/linalg_service.py

from typing import Optional

import numpy as np

from zonovol.core.config import settings
from zonovol.core.exceptions import (
    DimensionError,
    EmptyHorizonError,
    SingularMatrixError,
    SpectralUnsupported,
)
from zonovol.core.logging import get_logger
from zonovol.schemas.matrix import RealMatrix, Spectrum, SystemModel

logger = get_logger(__name__)


def _require_square(M: RealMatrix, what: str = "matrix") -> None:
    if not M.is_square:
        raise DimensionError(
            f"{what} must be square, got {M.rows}x{M.cols}",
            {"rows": M.rows, "cols": M.cols},
        )


def determinant(M: RealMatrix) -> float:
    """
    Determinant by LU factorization with partial pivoting.

    Raises:
        DimensionError: non-square input
    """
    _require_square(M)
    return float(np.linalg.det(M.values))


def determinants(Z: np.ndarray, columns: np.ndarray) -> np.ndarray:
    """Batched determinants of ``Z[:, columns[t]]`` for every row ``t``.

    ``columns`` holds 0-based column indices, shape (k, n); the k square
    submatrices are factorized in one vectorized call.
    """
    if columns.shape[0] == 0:
        return np.empty(0)
    stack = Z[:, columns].transpose(1, 0, 2)
    return np.linalg.det(stack)


def invert(M: RealMatrix) -> RealMatrix:
    """
    Inverse of a square matrix.

    Raises:
        DimensionError: non-square input
        SingularMatrixError: |det| <= SINGULARITY_TOL (names the determinant)
    """
    det = determinant(M)
    if abs(det) <= settings.SINGULARITY_TOL:
        raise SingularMatrixError(det, settings.SINGULARITY_TOL)
    try:
        inv = np.linalg.inv(M.values)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(det, settings.SINGULARITY_TOL) from exc
    return RealMatrix(values=inv)


def matrix_rank(M: RealMatrix | np.ndarray) -> int:
    """Numerical rank of the column-normalized matrix: singular values above
    RANK_TOL_REL * largest count. Zero columns stay zero."""
    values = M.values if isinstance(M, RealMatrix) else np.asarray(M, dtype=float)
    norms = np.linalg.norm(values, axis=0)
    values = values / np.where(norms > 0.0, norms, 1.0)
    sv = np.linalg.svd(values, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > settings.RANK_TOL_REL * sv[0]))


def _normalize_columns(V: np.ndarray) -> np.ndarray:
    """Unit 2-norm columns whose first nonzero component is positive."""
    V = V / np.linalg.norm(V, axis=0)
    for j in range(V.shape[1]):
        nonzero = np.flatnonzero(np.abs(V[:, j]) > 1e-12)
        if nonzero.size and V[nonzero[0], j] < 0:
            V[:, j] = -V[:, j]
    return V


def eig_real_distinct(
    A: RealMatrix,
    separation_tol: Optional[float] = None,
    B: Optional[RealMatrix] = None,
) -> Spectrum:
    """
    Diagonalize A when its eigenvalues are real, positive and pairwise separated.

    When ``B`` is given, ``gamma = W B`` and ``beta`` is its first column;
    otherwise ``gamma`` is W itself (the B = I case).

    Raises:
        SpectralUnsupported: complex, repeated/clustered or non-positive spectrum
    """
    _require_square(A, "A")
    w, V = np.linalg.eig(A.values)
    scale = float(np.max(np.abs(w)))
    if scale == 0.0:
        raise SpectralUnsupported(SpectralUnsupported.REPEATED, [0.0] * A.rows)

    if np.any(np.abs(w.imag) > settings.IMAG_TOL_REL * scale):
        raise SpectralUnsupported(
            SpectralUnsupported.COMPLEX, [str(complex(x)) for x in w]
        )

    order = np.argsort(w.real)
    lam = w.real[order]
    tol = (
        separation_tol
        if separation_tol is not None
        else settings.SEPARATION_TOL_REL * scale
    )
    if np.any(np.diff(lam) <= tol):
        raise SpectralUnsupported(SpectralUnsupported.REPEATED, lam.tolist())
    if lam[0] <= 0.0:
        raise SpectralUnsupported(SpectralUnsupported.NON_POSITIVE, lam.tolist())

    W_inv = RealMatrix(values=_normalize_columns(V.real[:, order]))
    W = invert(W_inv)

    residual = W.values @ A.values @ W_inv.values - np.diag(lam)
    limit = settings.RECONSTRUCTION_TOL_REL * float(np.max(np.abs(A.values)))
    if float(np.max(np.abs(residual))) >= limit:
        # a defective (Jordan) matrix passes the separation test only barely
        logger.warning("eigenvector basis does not diagonalize A, treating as repeated")
        raise SpectralUnsupported(SpectralUnsupported.REPEATED, lam.tolist())

    condition = float(np.linalg.cond(W.values))
    if condition > settings.COND_WARN:
        logger.warning("ill-conditioned eigenvector basis: cond(W) = %.3e", condition)

    gamma = RealMatrix(values=W.values @ B.values) if B is not None else W
    return Spectrum(
        eigenvalues=tuple(float(x) for x in lam),
        W=W,
        W_inv=W_inv,
        gamma=gamma,
        beta=tuple(float(x) for x in gamma.values[:, 0]),
        det_W_abs=abs(determinant(W)),
        condition=condition,
    )


def diagonalize(model: SystemModel) -> Spectrum:
    return eig_real_distinct(model.A, B=model.B)


def controllability_matrix(model: SystemModel, N: int) -> RealMatrix:
    """
    P_N = [B, AB, ..., A^(N-1) B] built by repeated multiplication.

    Raises:
        EmptyHorizonError: N < 1
    """
    if N < 1:
        raise EmptyHorizonError(N)
    n, r = model.n, model.r
    P = np.empty((n, r * N))
    block = model.B.values
    P[:, :r] = block
    for k in range(1, N):
        block = model.A.values @ block
        P[:, k * r : (k + 1) * r] = block
    return RealMatrix(values=P)


def controllable_rank(model: SystemModel, N: int) -> int:
    """
    rank(P_N), taken on the first min(N, n) blocks; later blocks add no rank
    (Cayley-Hamilton).
    """
    return matrix_rank(controllability_matrix(model, min(N, model.n)))

# zonovol/schemas/matrix.py

from typing import Any, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


# ===============================
# Dense real matrix
# ===============================
class RealMatrix(BaseModel):
    """
    Dense real matrix with double-precision entries:
    - at least one row and one column
    - every entry finite (NaN/Inf rejected at construction)
    - the wrapped array is read-only, so instances are safe to share
    """

    values: np.ndarray

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @field_validator("values", mode="before")
    @classmethod
    def _as_float_array(cls, v: Any) -> np.ndarray:
        try:
            arr = np.array(v, dtype=np.float64)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"entries must be real numbers: {exc}") from exc
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D matrix, got {arr.ndim} dimensions")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"matrix must be at least 1x1, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix entries must be finite")
        arr.setflags(write=False)
        return arr

    @classmethod
    def of(cls, data: Any) -> "RealMatrix":
        if isinstance(data, RealMatrix):
            return data
        return cls(values=data)

    @property
    def rows(self) -> int:
        return int(self.values.shape[0])

    @property
    def cols(self) -> int:
        return int(self.values.shape[1])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def tolist(self) -> list[list[float]]:
        return self.values.tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RealMatrix):
            return NotImplemented
        return np.array_equal(self.values, other.values)


# ===============================
# Generator pair {A, B}
# ===============================
class SystemModel(BaseModel):
    """
    The pair {A (n x n), B (n x r)} plus a name:
    - A square, B with the same row count as A
    """

    name: str = Field(min_length=1)
    A: RealMatrix
    B: RealMatrix

    model_config = ConfigDict(frozen=True)

    @field_validator("A", "B", mode="before")
    @classmethod
    def _wrap(cls, v: Any) -> RealMatrix:
        return RealMatrix.of(v)

    @model_validator(mode="after")
    def _check_shapes(self) -> "SystemModel":
        if not self.A.is_square:
            raise ValueError(f"A must be square, got {self.A.rows}x{self.A.cols}")
        if self.B.rows != self.A.rows:
            raise ValueError(
                f"B has {self.B.rows} rows but A has {self.A.rows}"
            )
        return self

    @property
    def n(self) -> int:
        return self.A.rows

    @property
    def r(self) -> int:
        return self.B.cols


# ===============================
# Real distinct spectrum
# ===============================
class Spectrum(BaseModel):
    """
    Diagonalization W A W^-1 = diag(lambda) for a real, distinct, positive spectrum.

    ``beta`` is the first column of ``gamma`` (the single-input coefficients);
    ``condition`` is the 2-norm condition number of W.
    """

    eigenvalues: Tuple[float, ...]
    W: RealMatrix
    W_inv: RealMatrix
    gamma: RealMatrix
    beta: Tuple[float, ...]
    det_W_abs: float = Field(gt=0)
    condition: float = Field(gt=0)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_ascending(self) -> "Spectrum":
        lam = self.eigenvalues
        if any(b <= a for a, b in zip(lam, lam[1:])):
            raise ValueError("eigenvalues must be strictly ascending")
        return self

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

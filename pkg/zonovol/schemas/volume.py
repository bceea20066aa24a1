# zonovol/schemas/volume.py

from enum import Enum
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field


class VolumeMethod(str, Enum):
    """
    Volume engines:
    - exact : determinant enumeration over every n-subset of generators
    - recursive : second-order recursion in the horizon
    - spectral : subset recursion on a real, distinct, positive spectrum
    - analytic : closed-form infinite-horizon product
    """

    exact = "exact"
    recursive = "recursive"
    spectral = "spectral"
    analytic = "analytic"


class VolumeResult(BaseModel):
    """
    Volume plus the hardware-independent counters:
    - det_count (n_d): n x n determinant evaluations
    - mult_count (n_p): multiplications of the spectral recursion / closed form
    - horizon: None stands for the infinite horizon
    """

    volume: float = Field(ge=0)
    method: VolumeMethod
    horizon: Optional[int] = None
    det_count: int = Field(default=0, ge=0)
    mult_count: int = Field(default=0, ge=0)
    wall_ms: float = Field(default=0.0, ge=0)
    region: Optional[str] = None
    notes: Dict[str, Any] = Field(default_factory=dict)

    model_config = ConfigDict(use_enum_values=False)

    @property
    def horizon_label(self) -> str:
        return "inf" if self.horizon is None else str(self.horizon)

    def scaled(self, factor: float, **changes: Any) -> "VolumeResult":
        """Copy with the volume multiplied by ``factor`` and fields overridden."""
        return self.model_copy(
            update={"volume": self.volume * factor, **changes}, deep=True
        )

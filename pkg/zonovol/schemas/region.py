# zonovol/schemas/region.py

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from zonovol.schemas.matrix import SystemModel


class RegionKind(str, Enum):
    """
    - reachable : states reached from the origin in N steps, |u_k| <= 1
    - controllable : initial states driven to the origin in N steps, |u_k| <= 1
    """

    reachable = "reachable"
    controllable = "controllable"


class MethodChoice(str, Enum):
    exact = "exact"
    recursive = "recursive"
    spectral = "spectral"
    analytic = "analytic"
    auto = "auto"


class ControllableRoute(str, Enum):
    """How finite controllable volumes are obtained."""

    scale = "scale"  # |det A|^-N times the reachable volume
    inverse_pair = "inverse-pair"  # zonotope of {A^-1, A^-1 B}


class RegionQuery(BaseModel):
    """
    One region-volume question; ``horizon=None`` is the infinite horizon.

    The analytic method goes with the infinite horizon only, and the infinite
    horizon with the analytic method (``auto`` resolves to it).
    """

    model: SystemModel
    region: RegionKind = RegionKind.reachable
    horizon: Optional[int] = Field(default=None, ge=1)
    method: MethodChoice = MethodChoice.auto
    route: ControllableRoute = ControllableRoute.scale
    det_budget: Optional[int] = Field(default=None, ge=1)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_method_horizon(self) -> "RegionQuery":
        infinite = self.horizon is None
        if self.method is MethodChoice.analytic and not infinite:
            raise ValueError("the analytic method needs the infinite horizon")
        if infinite and self.method not in (MethodChoice.analytic, MethodChoice.auto):
            raise ValueError(
                f"the infinite horizon needs the analytic method, got {self.method.value}"
            )
        return self

    @property
    def is_infinite(self) -> bool:
        return self.horizon is None

# zonovol/schemas/bench.py

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, StrictFloat, field_validator

from zonovol.schemas.region import RegionKind
from zonovol.schemas.volume import VolumeMethod


class ModelFile(BaseModel):
    """
    On-disk model document:
    - name: label used in logs and reports
    - A: n rows of n reals (JSON numbers; numeric strings and booleans are rejected)
    - B: n rows of r reals
    """

    name: str = Field(min_length=1)
    A: List[List[StrictFloat]] = Field(min_length=1)
    B: List[List[StrictFloat]] = Field(min_length=1)

    model_config = ConfigDict(extra="forbid")

    @field_validator("A", "B")
    @classmethod
    def _rectangular(cls, rows: List[List[float]]) -> List[List[float]]:
        width = len(rows[0])
        if width == 0:
            raise ValueError("rows must not be empty")
        for i, row in enumerate(rows):
            if len(row) != width:
                raise ValueError(
                    f"row {i} has {len(row)} entries, row 0 has {width}"
                )
        return rows


class BenchRow(BaseModel):
    """
    One (horizon, method) cell of a benchmark table:
    - v_r: region volume, None when the cell was skipped
    - annotation: why the cell was skipped (budget, inapplicable method), or a
      disagreement with another method on the same horizon
    """

    N: int = Field(ge=1)
    region: RegionKind
    method: VolumeMethod
    v_r: Optional[float] = None
    n_d: int = 0
    n_p: int = 0
    wall_ms: float = 0.0
    annotation: Optional[str] = None

    @property
    def skipped(self) -> bool:
        return self.v_r is None


class BenchReport(BaseModel):
    model: str
    region: RegionKind
    rows: List[BenchRow] = Field(default_factory=list)

    def for_horizon(self, N: int) -> List[BenchRow]:
        return [row for row in self.rows if row.N == N]


class PropertyOutcome(BaseModel):
    passed: int = 0
    failed: int = 0

    @property
    def total(self) -> int:
        return self.passed + self.failed


class VerifyReport(BaseModel):
    """
    Result of the seeded property suite:
    - properties: pass/fail counts per property name
    - failures: one line per failed check, naming property, dimension and cause
    """

    seed: int
    dims: List[int]
    trials: int
    properties: Dict[str, PropertyOutcome] = Field(default_factory=dict)
    failures: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, prop: str, passed: bool, failure: Optional[str] = None) -> None:
        outcome = self.properties.setdefault(prop, PropertyOutcome())
        if passed:
            outcome.passed += 1
        else:
            outcome.failed += 1
            self.failures.append(f"{prop}: {failure or 'failed'}")

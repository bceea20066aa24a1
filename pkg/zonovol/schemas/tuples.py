# zonovol/schemas/tuples.py

import math
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field

# Strictly increasing 1-based column labels of P_N.
IndexTuple = Tuple[int, ...]


class TupleSet(BaseModel):
    """
    Set of sorted ``arity``-tuples drawn from the labels of blocks
    ``lo_block..hi_block`` of width ``input_width``, i.e. the labels
    ``{r*lo + 1, ..., r*(hi + 1)}``.

    A negative arity, or an arity above the label count, denotes the empty set.
    """

    lo_block: int = Field(ge=0)
    hi_block: int
    arity: int
    input_width: int = Field(default=1, ge=1)

    model_config = ConfigDict(frozen=True)

    @classmethod
    def omega(cls, m: int, arity: int) -> "TupleSet":
        """All sorted ``arity``-tuples over the universe ``{1, ..., m}``."""
        return cls(lo_block=0, hi_block=m - 1, arity=arity, input_width=1)

    @property
    def first_label(self) -> int:
        return self.input_width * self.lo_block + 1

    @property
    def last_label(self) -> int:
        return self.input_width * (self.hi_block + 1)

    @property
    def size(self) -> int:
        return max(0, self.last_label - self.first_label + 1)

    @property
    def count(self) -> int:
        if self.arity < 0 or self.arity > self.size:
            return 0
        return math.comb(self.size, self.arity)

    @property
    def is_empty(self) -> bool:
        return self.count == 0

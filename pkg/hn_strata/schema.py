from fractions import Fraction
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class HNType(BaseModel):
    """Ranks and degrees ((n_1, d_1), ..., (n_r, d_r)) of a Harder-Narasimhan filtration"""
    model_config = ConfigDict(frozen=True)

    blocks: Tuple[Tuple[int, int], ...] = Field(..., min_length=1)

    @field_validator("blocks", mode="before")
    @classmethod
    def ensure_tuples(cls, v):
        return tuple(tuple(b) for b in v)

    @model_validator(mode="after")
    def slopes_decrease(self):
        for n_i, _ in self.blocks:
            if n_i < 1:
                raise ValueError(f"block ranks must be positive, got {self.blocks}")
        slopes = self.slopes
        for a, b in zip(slopes, slopes[1:]):
            if not a > b:
                raise ValueError(f"slopes must strictly decrease, got {self.blocks}")
        return self

    @property
    def n(self) -> int:
        return sum(n_i for n_i, _ in self.blocks)

    @property
    def d(self) -> int:
        return sum(d_i for _, d_i in self.blocks)

    @property
    def r(self) -> int:
        return len(self.blocks)

    @property
    def slopes(self) -> List[Fraction]:
        return [Fraction(d_i, n_i) for n_i, d_i in self.blocks]

    @property
    def mu_max(self) -> Fraction:
        return Fraction(self.blocks[0][1], self.blocks[0][0])

    @property
    def is_trivial(self) -> bool:
        return self.r == 1

    def __str__(self) -> str:
        return "(" + ",".join(f"({n_i},{d_i})" for n_i, d_i in self.blocks) + ")"


class HNRecord(BaseModel):
    """One line of the HN audit"""
    blocks: List[List[int]]
    codim: int
    h1_upper: int
    defect: int
    key_inequality_residual: int


class HNAuditReport(BaseModel):
    n: int
    d: int
    mu_max: str
    g: int
    types: int
    min_key_residual: Optional[int] = None
    min_codim: Optional[int] = None
    min_defect: Optional[int] = None
    defect_floor: Optional[int] = None
    records: List[HNRecord] = Field(default_factory=list)

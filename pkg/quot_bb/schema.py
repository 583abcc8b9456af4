from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator


class Composition(BaseModel):
    """Ordered n-tuple (m_1, ..., m_n) indexing a fixed component C^{(m_1)} x ... x C^{(m_n)}"""
    model_config = ConfigDict(frozen=True)

    parts: Tuple[int, ...] = Field(..., min_length=1)

    @field_validator("parts", mode="before")
    @classmethod
    def ensure_tuple(cls, v):
        if isinstance(v, list):
            return tuple(v)
        return v

    @field_validator("parts")
    @classmethod
    def non_negative(cls, v):
        if any(m < 0 for m in v):
            raise ValueError(f"composition parts must be non-negative, got {v}")
        return v

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def __str__(self) -> str:
        return "(" + ",".join(str(m) for m in self.parts) + ")"


class StratumInfo(BaseModel):
    comp: Composition
    codim_plus: int
    fixed_dim: int
    ambient_dim: int

    @property
    def fiber_dim(self) -> int:
        """Dimension of the attracting-cell fibre over the fixed component"""
        return self.ambient_dim - self.fixed_dim - self.codim_plus


class StratumRecord(BaseModel):
    """One line of the strata report"""
    comp: List[int]
    codim_plus: int
    fixed_dim: int
    sym_counts: List[int]
    cell_count: int


class QuotCountReport(BaseModel):
    n: int
    N: int
    curve: str
    count: int
    oracle: Optional[int] = None
    strata: int

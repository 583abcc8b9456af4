from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"


class Label(str, Enum):
    THEOREM = "THEOREM"
    CONJECTURAL = "CONJECTURAL"


class Grid(str, Enum):
    SMALL = "small"
    FULL = "full"


# ============================================================================
# Formula reports
# ============================================================================

class SeriesComparison(BaseModel):
    """Coefficient-wise comparison of two q^-1 series"""
    name: str
    equal: bool
    order: Optional[int] = None
    first_difference: Optional[int] = Field(default=None, description="Lowest exponent where the series differ")
    partial_sums_monotone: Optional[bool] = None


class ConvergenceRow(BaseModel):
    l: int
    N: int
    rank: int
    quot_count: int
    r_l: str = Field(..., description="quot_count / q^rank as num/den")
    delta: str = Field(..., description="|r_l - harder_count| as num/den")
    valuation: Optional[int] = Field(default=None, description="Smallest e with q^-e <= delta")


class ConvergenceReport(BaseModel):
    n: int
    d: int
    d0: int
    curve: str
    limit: str
    rows: List[ConvergenceRow] = Field(default_factory=list)
    delta_decreasing: bool
    valuation_increasing: bool


# ============================================================================
# Verification verdicts
# ============================================================================

class CheckResult(BaseModel):
    """One named check of the verification suite"""
    name: str
    status: Status
    label: Label = Label.THEOREM
    params: Dict[str, Any] = Field(default_factory=dict)
    witnesses: List[Any] = Field(default_factory=list, description="Failures, or sample evidence when passing")
    cases: int = 0

    @property
    def passed(self) -> bool:
        return self.status == Status.PASS


class Verdict(BaseModel):
    grid: Grid
    passed: bool
    checks: List[CheckResult] = Field(default_factory=list)

    class Summary(BaseModel):
        total: int
        failed: int

    summary: Optional[Summary] = None

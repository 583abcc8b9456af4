from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, StrictInt, field_validator


class CurveData(BaseModel):
    """Arithmetic profile of a curve over F_q, as read from a profile file.

    Z_C(t) = P(t) / ((1 - t)(1 - q t)) with P(t) = a_0 + a_1 t + ... + a_{2g} t^{2g}.
    """
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "name": "ell_f2",
                "genus": 1,
                "q": 2,
                "zeta_numerator": [1, 0, 2],
            }
        },
    )

    name: str = Field(default="curve", min_length=1)
    genus: StrictInt = Field(..., ge=0, description="Genus g")
    q: StrictInt = Field(..., ge=2, description="Size of the base field")
    zeta_numerator: Tuple[StrictInt, ...] = Field(..., min_length=1, description="[a_0, ..., a_2g]")

    @field_validator("zeta_numerator", mode="before")
    @classmethod
    def ensure_tuple(cls, v):
        if isinstance(v, list):
            return tuple(v)
        return v


class ValidatedCurve(CurveData):
    """Curve data that passed validate_curve; only that function builds these"""


class CurveReport(BaseModel):
    name: str
    genus: int
    q: int
    zeta_numerator: Tuple[int, ...]
    jac_count: int
    point_counts: Tuple[int, ...]
    hasse_weil_ok: bool

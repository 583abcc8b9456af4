from typing import List, Optional

from pydantic import BaseModel, Field

from .classes import Agreement, Interval, MotClass
from .text import render_class, render_term


class WindowModel(BaseModel):
    lo: Optional[int] = None
    hi: Optional[int] = None
    empty: bool = False

    @classmethod
    def from_interval(cls, w: Interval) -> "WindowModel":
        if w.is_empty:
            return cls(empty=True)
        return cls(lo=w.lo, hi=w.hi)


class TermRecord(BaseModel):
    term: str
    coeff: int
    vd: int
    twist: int


class ClassReport(BaseModel):
    """JSON view of a class"""
    text: str
    label: Optional[str] = Field(default=None, description="THEOREM or CONJECTURAL when the class comes from a formula")
    genus: Optional[int] = None
    vd_window: WindowModel
    twist_window: WindowModel
    terms: List[TermRecord] = Field(default_factory=list)

    @classmethod
    def from_class(cls, x: MotClass) -> "ClassReport":
        return cls(
            text=render_class(x),
            genus=x.genus,
            vd_window=WindowModel.from_interval(x.vd_window),
            twist_window=WindowModel.from_interval(x.twist_window),
            terms=[
                TermRecord(term=render_term(t, 1), coeff=c, vd=t.vd(x.genus), twist=t.twist)
                for t, c in x.sorted_terms()
            ],
        )


class ClassComparison(BaseModel):
    """Outcome of a term-wise identity between two classes"""
    name: str
    equal: bool
    compared: int
    mismatches: List[str] = Field(default_factory=list)

    @classmethod
    def from_agreement(cls, name: str, agreement: Agreement) -> "ClassComparison":
        """An identity holds only if at least one term was compared"""
        mismatches = list(agreement.mismatches[:20])
        if agreement.compared == 0 and not mismatches:
            mismatches.append("no terms compared")
        return cls(
            name=name,
            equal=agreement.equal and agreement.compared > 0,
            compared=agreement.compared,
            mismatches=mismatches,
        )

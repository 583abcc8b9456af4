"""
Canonical text form of classes: terms sorted by (vd, twist, atom), e.g.

    1{0} + 2·1{1} - 3·Jac·Sym^2{-4}
"""
import re
from typing import Dict, Optional

from shared_utils.errors import ExprSyntaxError
from .classes import UNIT, Atom, MotClass, Term

_SPLIT = re.compile(r"(?<=\})\s*([+-])\s*")
_TERM = re.compile(r"^(?:(\d+)·)?([^{}]+)\{(-?\d+)\}$")
_JAC = re.compile(r"^Jac(?:\^(\d+))?$")
_SYM = re.compile(r"^Sym\^(\d+)$")


def render_term(term: Term, coeff: int) -> str:
    magnitude = abs(coeff)
    prefix = f"{magnitude}·" if magnitude != 1 else ""
    return f"{prefix}{term}"


def render_class(x: MotClass) -> str:
    parts = []
    for term, coeff in x.sorted_terms():
        text = render_term(term, coeff)
        if not parts:
            parts.append(f"-{text}" if coeff < 0 else text)
        else:
            parts.append(f"- {text}" if coeff < 0 else f"+ {text}")
    return " ".join(parts) if parts else "0"


def _parse_atom(text: str, offset: int) -> Atom:
    if text == "1":
        return UNIT
    jac = 0
    syms = []
    for factor in text.split("·"):
        m = _JAC.match(factor)
        if m:
            jac += int(m.group(1) or 1)
            continue
        m = _SYM.match(factor)
        if m:
            syms.append(int(m.group(1)))
            continue
        raise ExprSyntaxError(f"unknown atom factor {factor!r}", offset, expected=["Jac", "Sym^j", "1"])
    return Atom(jac, tuple(syms))


def parse_class(text: str, genus: Optional[int] = None) -> MotClass:
    """Inverse of render_class; the result is a finite class with unbounded windows"""
    source = text.replace("−", "-").strip()
    if source == "0":
        return MotClass.finite({}, genus=genus)

    sign = 1
    offset = 0
    if source.startswith("-"):
        sign = -1
        source = source[1:].lstrip()
        offset = len(text) - len(source)

    pieces = _SPLIT.split(source)
    terms: Dict[Term, int] = {}
    # pieces alternate: term, sign, term, sign, ...
    for idx in range(0, len(pieces), 2):
        if idx > 0:
            sign = -1 if pieces[idx - 1] == "-" else 1
        chunk = pieces[idx].strip()
        m = _TERM.match(chunk)
        if not m:
            raise ExprSyntaxError(f"malformed term {chunk!r}", offset, expected=["coeff·atom{k}"])
        coeff = int(m.group(1) or 1) * sign
        term = Term(_parse_atom(m.group(2), offset), int(m.group(3)))
        terms[term] = terms.get(term, 0) + coeff
        offset += len(chunk) + 3
    return MotClass.finite(terms, genus=genus)

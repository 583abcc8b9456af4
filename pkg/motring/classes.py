"""
Formal classes of pure Tate-over-curve symbols.

A MotClass is the exact restriction of a possibly infinite class to a region
of terms: vd(term) in the vd window and twist(term) in the twist window.
Alongside the stored terms it carries the support of the true class in both
gradings, which is what lets products and sums decide where they are still
complete.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Tuple, Union

from shared_utils.errors import EmptyWindow, GenusMismatch, UnboundGenus

logger = logging.getLogger(__name__)


# ------------- Intervals -------------

@dataclass(frozen=True)
class Interval:
    """Integer interval; a None end is unbounded. lo > hi means empty."""

    lo: Optional[int] = None
    hi: Optional[int] = None

    @classmethod
    def empty(cls) -> "Interval":
        return cls(0, -1)

    @classmethod
    def point(cls, v: int) -> "Interval":
        return cls(v, v)

    @property
    def is_empty(self) -> bool:
        return self.lo is not None and self.hi is not None and self.lo > self.hi

    @property
    def is_bounded(self) -> bool:
        return self.lo is not None and self.hi is not None

    def contains(self, v: int) -> bool:
        if self.is_empty:
            return False
        return (self.lo is None or v >= self.lo) and (self.hi is None or v <= self.hi)

    def intersect(self, other: "Interval") -> "Interval":
        if self.is_empty or other.is_empty:
            return Interval.empty()
        lo = self.lo if other.lo is None else other.lo if self.lo is None else max(self.lo, other.lo)
        hi = self.hi if other.hi is None else other.hi if self.hi is None else min(self.hi, other.hi)
        return Interval(lo, hi)

    def hull(self, other: "Interval") -> "Interval":
        if self.is_empty:
            return other
        if other.is_empty:
            return self
        lo = None if self.lo is None or other.lo is None else min(self.lo, other.lo)
        hi = None if self.hi is None or other.hi is None else max(self.hi, other.hi)
        return Interval(lo, hi)

    def __add__(self, other: "Interval") -> "Interval":
        """Minkowski sum"""
        if self.is_empty or other.is_empty:
            return Interval.empty()
        lo = None if self.lo is None or other.lo is None else self.lo + other.lo
        hi = None if self.hi is None or other.hi is None else self.hi + other.hi
        return Interval(lo, hi)

    def shift(self, k: int) -> "Interval":
        if self.is_empty:
            return self
        return Interval(
            None if self.lo is None else self.lo + k,
            None if self.hi is None else self.hi + k,
        )

    def __neg__(self) -> "Interval":
        if self.is_empty:
            return self
        return Interval(
            None if self.hi is None else -self.hi,
            None if self.lo is None else -self.lo,
        )

    def __str__(self) -> str:
        if self.is_empty:
            return "[]"
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "+inf" if self.hi is None else str(self.hi)
        return f"[{lo}, {hi}]"


FULL = Interval()

WindowLike = Union[Interval, Tuple[Optional[int], Optional[int]], None]


def as_interval(window: WindowLike) -> Interval:
    if window is None:
        return FULL
    if isinstance(window, Interval):
        return window
    lo, hi = window
    return Interval(lo, hi)


# ------------- Atoms and terms -------------

@dataclass(frozen=True, order=True)
class Atom:
    """Jac^jac * prod Sym^{j} for j in syms; Sym^0 factors are never stored"""

    jac: int = 0
    syms: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.jac < 0:
            raise ValueError(f"negative Jacobian exponent {self.jac}")
        if any(j < 0 for j in self.syms):
            raise ValueError(f"negative symmetric power in {self.syms}")
        object.__setattr__(self, "syms", tuple(sorted(j for j in self.syms if j > 0)))

    @property
    def is_unit(self) -> bool:
        return self.jac == 0 and not self.syms

    def dim(self, g: Optional[int]) -> int:
        if self.jac:
            if g is None:
                raise UnboundGenus("dimension of a Jacobian factor needs a genus binding")
            return self.jac * g + sum(self.syms)
        return sum(self.syms)

    def __mul__(self, other: "Atom") -> "Atom":
        return Atom(self.jac + other.jac, self.syms + other.syms)

    def __str__(self) -> str:
        factors = []
        if self.jac == 1:
            factors.append("Jac")
        elif self.jac > 1:
            factors.append(f"Jac^{self.jac}")
        factors.extend(f"Sym^{j}" for j in self.syms)
        return "·".join(factors) if factors else "1"


UNIT = Atom()
JAC = Atom(jac=1)


def sym_atom(j: int) -> Atom:
    return Atom(syms=(j,))


@dataclass(frozen=True, order=True)
class Term:
    atom: Atom
    twist: int = 0

    def vd(self, g: Optional[int]) -> int:
        return self.atom.dim(g) + self.twist

    def __mul__(self, other: "Term") -> "Term":
        return Term(self.atom * other.atom, self.twist + other.twist)

    def __str__(self) -> str:
        return f"{self.atom}{{{self.twist}}}"


class Agreement(NamedTuple):
    equal: bool
    compared: int
    mismatches: Tuple[str, ...]


def _merge_genus(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise GenusMismatch(f"classes bound to different genera {a} and {b}", left=a, right=b)


def _normalise(window: Interval, support: Interval) -> Interval:
    """Drop window ends lying beyond the support on that side"""
    if support.is_empty:
        return FULL
    lo, hi = window.lo, window.hi
    if lo is not None and support.lo is not None and lo <= support.lo:
        lo = None
    if hi is not None and support.hi is not None and hi >= support.hi:
        hi = None
    return Interval(lo, hi)


# ------------- Classes -------------

class MotClass:
    """Immutable class; build through MotClass.build or the constructors module"""

    __slots__ = ("_terms", "_wv", "_wt", "_sv", "_st", "_genus")

    def __init__(self, terms, wv, wt, sv, st, genus):
        self._terms: Dict[Term, int] = terms
        self._wv: Interval = wv
        self._wt: Interval = wt
        self._sv: Interval = sv
        self._st: Interval = st
        self._genus: Optional[int] = genus

    @classmethod
    def build(
        cls,
        terms: Mapping[Term, int],
        *,
        vd_window: Interval = FULL,
        twist_window: Interval = FULL,
        vd_support: Optional[Interval] = None,
        twist_support: Optional[Interval] = None,
        genus: Optional[int] = None,
    ) -> "MotClass":
        """
        Restrict terms to the region and normalise windows against the support.

        Omitted supports mean the terms are the whole true class.
        """
        if vd_window.is_empty or twist_window.is_empty:
            raise EmptyWindow(
                f"empty window (vd {vd_window}, twist {twist_window})",
                vd_window=str(vd_window),
                twist_window=str(twist_window),
            )

        nonzero = {t: c for t, c in terms.items() if c}
        if vd_support is None:
            vd_support = Interval.empty()
            for t in nonzero:
                vd_support = vd_support.hull(Interval.point(t.vd(genus)))
        if twist_support is None:
            twist_support = Interval.empty()
            for t in nonzero:
                twist_support = twist_support.hull(Interval.point(t.twist))

        wv = _normalise(vd_window, vd_support)
        wt = _normalise(twist_window, twist_support)

        kept: Dict[Term, int] = {}
        for t, c in nonzero.items():
            if not wt.contains(t.twist):
                continue
            if (wv.lo is not None or wv.hi is not None) and not wv.contains(t.vd(genus)):
                continue
            kept[t] = c
        return cls(kept, wv, wt, vd_support, twist_support, genus)

    @classmethod
    def finite(cls, terms: Mapping[Term, int], genus: Optional[int] = None) -> "MotClass":
        return cls.build(terms, genus=genus)

    @classmethod
    def uncertified(cls, terms: Mapping[Term, int], genus: Optional[int] = None) -> "MotClass":
        """Terms with an empty region: no level of the class is claimed complete"""
        nonzero = {t: c for t, c in terms.items() if c}
        sv, st = Interval.empty(), Interval.empty()
        for t in nonzero:
            sv = sv.hull(Interval.point(t.vd(genus)))
            st = st.hull(Interval.point(t.twist))
        return cls(nonzero, Interval.empty(), Interval.empty(), sv, st, genus)

    # ------------- accessors -------------

    @property
    def terms(self) -> Mapping[Term, int]:
        return dict(self._terms)

    @property
    def vd_window(self) -> Interval:
        return self._wv

    @property
    def twist_window(self) -> Interval:
        return self._wt

    @property
    def vd_support(self) -> Interval:
        return self._sv

    @property
    def twist_support(self) -> Interval:
        return self._st

    @property
    def genus(self) -> Optional[int]:
        return self._genus

    @property
    def is_certified(self) -> bool:
        return not (self._wv.is_empty or self._wt.is_empty)

    @property
    def is_exact(self) -> bool:
        """True when the region covers the whole support"""
        return self._wv == FULL and self._wt == FULL

    def coefficient(self, term: Term) -> int:
        return self._terms.get(term, 0)

    def __iter__(self) -> Iterator[Tuple[Term, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def atoms(self) -> List[Atom]:
        return sorted({t.atom for t in self._terms})

    def in_region(self, term: Term) -> bool:
        if not self._wt.contains(term.twist):
            return False
        if self._wv == FULL:
            return True
        return self._wv.contains(term.vd(self._genus))

    def sorted_terms(self) -> List[Tuple[Term, int]]:
        g = self._genus
        return sorted(self._terms.items(), key=lambda tc: (tc[0].vd(g), tc[0].twist, tc[0].atom))

    # ------------- arithmetic -------------

    def __add__(self, other: "MotClass") -> "MotClass":
        return add(self, other)

    def __sub__(self, other: "MotClass") -> "MotClass":
        return add(self, scale(other, -1))

    def __neg__(self) -> "MotClass":
        return scale(self, -1)

    def __mul__(self, other) -> "MotClass":
        if isinstance(other, int):
            return scale(self, other)
        if isinstance(other, MotClass):
            return mul(self, other)
        return NotImplemented

    def __rmul__(self, other) -> "MotClass":
        if isinstance(other, int):
            return scale(self, other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, MotClass):
            return NotImplemented
        return (
            self._terms == other._terms
            and self._wv == other._wv
            and self._wt == other._wt
        )

    def __hash__(self) -> int:
        return hash((frozenset(self._terms.items()), self._wv, self._wt))

    def __repr__(self) -> str:
        from .text import render_class
        return f"MotClass({render_class(self)!r}, vd {self._wv}, twist {self._wt})"


def add(x: MotClass, y: MotClass) -> MotClass:
    """Coefficient-wise sum on the intersection of the two regions"""
    genus = _merge_genus(x.genus, y.genus)
    terms: Dict[Term, int] = dict(x._terms)
    for t, c in y._terms.items():
        terms[t] = terms.get(t, 0) + c
    return MotClass.build(
        terms,
        vd_window=x.vd_window.intersect(y.vd_window),
        twist_window=x.twist_window.intersect(y.twist_window),
        vd_support=x.vd_support.hull(y.vd_support),
        twist_support=x.twist_support.hull(y.twist_support),
        genus=genus,
    )


def scale(x: MotClass, n: int) -> MotClass:
    if n == 0:
        return MotClass.finite({}, genus=x.genus)
    return MotClass(
        {t: c * n for t, c in x._terms.items()},
        x.vd_window, x.twist_window, x.vd_support, x.twist_support, x.genus,
    )


def product_window(wx: Interval, sx: Interval, wy: Interval, sy: Interval) -> Interval:
    """
    Levels v of a product where every decomposition v = a + b over the
    supports has a and b inside the factor windows.

    Each factor window end that is not None cuts a half-line; an end facing an
    unbounded side of the other support leaves nothing certified.
    """
    if wx.is_empty or wy.is_empty:
        return Interval.empty()
    if sx.is_empty or sy.is_empty:
        return FULL
    lows: List[int] = []
    highs: List[int] = []
    for w, s_other in ((wx, sy), (wy, sx)):
        if w.lo is not None:
            if s_other.hi is None:
                return Interval.empty()
            lows.append(w.lo + s_other.hi)
        if w.hi is not None:
            if s_other.lo is None:
                return Interval.empty()
            highs.append(w.hi + s_other.lo)
    return Interval(max(lows) if lows else None, min(highs) if highs else None)


def mul(x: MotClass, y: MotClass) -> MotClass:
    """Bilinear product; atoms merge, twists add"""
    genus = _merge_genus(x.genus, y.genus)
    wv = product_window(x.vd_window, x.vd_support, y.vd_window, y.vd_support)
    wt = product_window(x.twist_window, x.twist_support, y.twist_window, y.twist_support)
    if wv.is_empty or wt.is_empty:
        raise EmptyWindow(
            "product of these windows certifies no level",
            left_vd=str(x.vd_window),
            right_vd=str(y.vd_window),
        )
    terms: Dict[Term, int] = {}
    for tx, cx in x._terms.items():
        for ty, cy in y._terms.items():
            t = tx * ty
            terms[t] = terms.get(t, 0) + cx * cy
    return MotClass.build(
        terms,
        vd_window=wv,
        twist_window=wt,
        vd_support=x.vd_support + y.vd_support,
        twist_support=x.twist_support + y.twist_support,
        genus=genus,
    )


def twist(x: MotClass, k: int) -> MotClass:
    return MotClass(
        {Term(t.atom, t.twist + k): c for t, c in x._terms.items()},
        x.vd_window.shift(k),
        x.twist_window.shift(k),
        x.vd_support.shift(k),
        x.twist_support.shift(k),
        x.genus,
    )


def dual(x: MotClass, g: Optional[int] = None) -> MotClass:
    """
    Term-wise dual (A{k})^v = A{-dim A - k}.

    vd of the dual term is -twist and its twist is -vd, so the two windows
    swap with a sign: vd window' = -twist window, twist window' = -vd window.
    """
    genus = _merge_genus(x.genus, g)
    terms = {Term(t.atom, -t.atom.dim(genus) - t.twist): c for t, c in x._terms.items()}
    return MotClass(terms, -x.twist_window, -x.vd_window, -x.twist_support, -x.vd_support, genus)


def restrict(x: MotClass, vd_window: WindowLike = None, twist_window: WindowLike = None) -> MotClass:
    return MotClass.build(
        x._terms,
        vd_window=x.vd_window.intersect(as_interval(vd_window)),
        twist_window=x.twist_window.intersect(as_interval(twist_window)),
        vd_support=x.vd_support,
        twist_support=x.twist_support,
        genus=x.genus,
    )


def with_genus(x: MotClass, g: Optional[int]) -> MotClass:
    genus = _merge_genus(x.genus, g)
    return MotClass(dict(x._terms), x.vd_window, x.twist_window, x.vd_support, x.twist_support, genus)


def agree_on(x: MotClass, y: MotClass, allow_empty: bool = False) -> Agreement:
    """
    Compare two classes term-wise on the intersection of their regions.

    Disjoint regions count as agreement only with allow_empty, as used by
    the soundness checks of cut classes.
    """
    genus = _merge_genus(x.genus, y.genus)
    wv = x.vd_window.intersect(y.vd_window)
    wt = x.twist_window.intersect(y.twist_window)
    if wv.is_empty or wt.is_empty:
        if allow_empty:
            return Agreement(True, 0, ())
        return Agreement(False, 0, ("regions do not overlap",))

    mismatches = []
    compared = 0
    for t in sorted(set(x._terms) | set(y._terms), key=lambda t: (t.vd(genus), t.twist, t.atom)):
        if not wt.contains(t.twist) or not wv.contains(t.vd(genus)):
            continue
        compared += 1
        cx, cy = x._terms.get(t, 0), y._terms.get(t, 0)
        if cx != cy:
            mismatches.append(f"{t}: {cx} != {cy}")
    if mismatches:
        logger.debug(f"Classes disagree on {len(mismatches)} of {compared} terms")
    return Agreement(not mismatches, compared, tuple(mismatches))


def total(classes: Iterable[MotClass]) -> MotClass:
    result: Optional[MotClass] = None
    for c in classes:
        result = c if result is None else add(result, c)
    return result if result is not None else MotClass.finite({})


def product(classes: Iterable[MotClass]) -> MotClass:
    result: Optional[MotClass] = None
    for c in classes:
        result = c if result is None else mul(result, c)
    return result if result is not None else MotClass.finite({Term(UNIT, 0): 1})

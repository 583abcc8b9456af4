"""
Series constructors and the windowed product used by every closed formula.

Infinite series are cut to a vd window; the side of the window towards which
the terms run off must be finite, the other side may stay open.
"""
import logging
from typing import Callable, List, NamedTuple, Optional, Sequence

from shared_utils.errors import InfiniteWindow, NegativeRank, NonConvergentDirection, UnboundGenus
from .classes import (
    FULL,
    JAC,
    UNIT,
    Interval,
    MotClass,
    Term,
    WindowLike,
    as_interval,
    mul,
    restrict,
    sym_atom,
)

logger = logging.getLogger(__name__)


def unit() -> MotClass:
    return MotClass.finite({Term(UNIT, 0): 1})


def lefschetz(k: int = 1) -> MotClass:
    """L^k = 1{k}"""
    return MotClass.finite({Term(UNIT, k): 1})


def jac(g: Optional[int]) -> MotClass:
    if g is None:
        raise UnboundGenus("Jac needs a genus binding")
    if g < 0:
        raise NegativeRank(f"genus must be non-negative, got {g}", g=g)
    return MotClass.finite({Term(JAC, 0): 1}, genus=g)


def sym(j: int) -> MotClass:
    if j < 0:
        raise NegativeRank(f"symmetric power index must be non-negative, got {j}", j=j)
    return MotClass.finite({Term(sym_atom(j), 0): 1})


def projective_space(n: int) -> MotClass:
    """P^n = 1{0} + 1{1} + ... + 1{n}"""
    if n < 0:
        raise NegativeRank(f"projective space dimension must be non-negative, got {n}", n=n)
    return MotClass.finite({Term(UNIT, i): 1 for i in range(n + 1)})


def zeta_support(i: int) -> Interval:
    """vd support of zeta_class(i): terms Sym^j{ij} have vd j(1+i)"""
    return Interval(0, None) if i >= 0 else Interval(None, 0)


def zeta_class(i: int, window: WindowLike, g: Optional[int] = None) -> MotClass:
    """
    Z(C, 1{i}) = sum_j Sym^j{ij}, cut to the vd window.

    Raises:
        NonConvergentDirection: i = -1 puts every term at vd 0; i = 0 has no
            convergent realisation
        InfiniteWindow: the window is open on the side the terms run off to
    """
    if i == -1:
        raise NonConvergentDirection(
            "zeta_class(-1) has infinitely many terms at vd 0", direction=i
        )
    if i == 0:
        raise NonConvergentDirection("zeta_class needs a nonzero direction", direction=i)

    w = as_interval(window)
    step = 1 + i
    terms = {}
    if i > 0:
        if w.hi is None:
            raise InfiniteWindow(f"zeta_class({i}) needs a finite upper vd bound", direction=i)
        j_max = w.hi // step if w.hi >= 0 else -1
    else:
        if w.lo is None:
            raise InfiniteWindow(f"zeta_class({i}) needs a finite lower vd bound", direction=i)
        j_max = w.lo // step if w.lo <= 0 else -1

    for j in range(j_max + 1):
        if w.contains(j * step):
            terms[Term(sym_atom(j), i * j)] = 1

    twist_support = Interval(0, None) if i > 0 else Interval(None, 0)
    return MotClass.build(
        terms,
        vd_window=w,
        vd_support=zeta_support(i),
        twist_support=twist_support,
        genus=g,
    )


def bgm_hom(window: WindowLike) -> MotClass:
    """M(BG_m) = sum_{j >= 0} 1{j}"""
    w = as_interval(window)
    if w.hi is None:
        raise InfiniteWindow("bgm_hom needs a finite upper vd bound")
    terms = {Term(UNIT, j): 1 for j in range(0, w.hi + 1) if w.contains(j)}
    support = Interval(0, None)
    return MotClass.build(terms, vd_window=w, vd_support=support, twist_support=support)


def bgm_k0(window: WindowLike) -> MotClass:
    """[BG_m] = 1/(L - 1) = sum_{j >= 1} 1{-j}"""
    w = as_interval(window)
    if w.lo is None:
        raise InfiniteWindow("bgm_k0 needs a finite lower vd bound")
    terms = {Term(UNIT, -j): 1 for j in range(1, -w.lo + 1) if w.contains(-j)}
    support = Interval(None, -1)
    return MotClass.build(terms, vd_window=w, vd_support=support, twist_support=support)


# ------------- Windowed products -------------

class Factor(NamedTuple):
    """A class constructor together with the vd support of what it builds"""

    build: Callable[[Interval], MotClass]
    vd_support: Interval


def fixed(x: MotClass) -> Factor:
    return Factor(lambda _w: x, x.vd_support)


def zeta_factor(i: int, g: Optional[int] = None) -> Factor:
    return Factor(lambda w: zeta_class(i, w, g=g), zeta_support(i))


def bgm_hom_factor() -> Factor:
    return Factor(bgm_hom, Interval(0, None))


def bgm_k0_factor() -> Factor:
    return Factor(bgm_k0, Interval(None, -1))


def _sum_ends(supports: Sequence[Interval], attr: str) -> Optional[int]:
    total = 0
    for s in supports:
        if s.is_empty:
            continue
        end = getattr(s, attr)
        if end is None:
            return None
        total += end
    return total


def product_in_window(factors: Sequence[Factor], window: WindowLike, genus: Optional[int] = None) -> MotClass:
    """
    Product of the factors, complete on the whole target vd window.

    Each factor is built on the target window widened by the support extremes
    of the other factors, so that every decomposition of a target level only
    meets known terms.
    """
    w = as_interval(window)
    built: List[MotClass] = []
    for k, factor in enumerate(factors):
        others = [f.vd_support for idx, f in enumerate(factors) if idx != k]
        lo = hi = None
        if w.lo is not None:
            ceiling = _sum_ends(others, "hi")
            lo = None if ceiling is None else w.lo - ceiling
        if w.hi is not None:
            floor = _sum_ends(others, "lo")
            hi = None if floor is None else w.hi - floor
        built.append(factor.build(Interval(lo, hi)))

    result = unit() if genus is None else MotClass.finite({Term(UNIT, 0): 1}, genus=genus)
    for x in built:
        result = mul(result, x)
    if w == FULL:
        return result
    return restrict(result, vd_window=w)

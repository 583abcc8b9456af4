"""
Closed formulas for Bun_{n,d} and its variants.

Point-count formulas take a validated curve; class formulas take the genus
and a vd window. None of them depends on the degree d: only the convergence
audit does, through N = n l d0 - d and the rank of V_l.
"""
import logging
from fractions import Fraction
from typing import List, Optional

from curve_arith.laurent import LaurentQ
from curve_arith.schema import ValidatedCurve
from curve_arith.zeta import jac_count, zeta_series, zeta_value
from motring.classes import Interval, MotClass, WindowLike, as_interval, twist
from motring.constructors import (
    Factor,
    bgm_hom_factor,
    bgm_k0,
    bgm_k0_factor,
    fixed,
    jac,
    product_in_window,
    zeta_factor,
)
from shared_utils.errors import NegativeRank

logger = logging.getLogger(__name__)


def _check_rank(n: int):
    if n < 1:
        raise NegativeRank(f"rank n must be at least 1, got {n}", n=n)


def bun_twist(n: int, g: int) -> int:
    """(n^2 - 1)(g - 1), the twist of the compactly supported formulas"""
    return (n * n - 1) * (g - 1)


def bun_dimension(n: int, g: int) -> int:
    """dim Bun_{n,d} = n^2 (g - 1)"""
    return n * n * (g - 1)


# ------------- Point counts -------------

def harder_count(n: int, c: ValidatedCurve) -> Fraction:
    """
    q^{(n^2-1)(g-1)} / (q - 1) * |Jac(C)(F_q)| * prod_{i=2}^{n} zeta_C(q^-i).

    The stacky count of Bun_{n,d}; it does not depend on d.
    """
    _check_rank(n)
    value = Fraction(c.q) ** bun_twist(n, c.genus) / (c.q - 1) * jac_count(c)
    for i in range(2, n + 1):
        value *= zeta_value(c, i)
    return value


def harder_series(n: int, c: ValidatedCurve, order: int) -> LaurentQ:
    """
    Harder's formula expanded formally in q^-1 up to q^-order:
    1/(q - 1) = sum_{j>=1} q^-j and zeta_C(q^-i) = sum_j |C^{(j)}| q^-ij.
    """
    _check_rank(n)
    s = bun_twist(n, c.genus)
    inner = order + s
    if inner < 1:
        # every term sits at q^-(1 - s) or beyond
        return LaurentQ.zero(order)
    series = LaurentQ.geometric(start=1, step=1, order=inner, coefficient=jac_count(c))
    for i in range(2, n + 1):
        counts = zeta_series(c, max(inner, 0) // i)
        factor = LaurentQ({i * j: s_j for j, s_j in enumerate(counts)}, inner)
        series = series * factor
    return series.truncate(inner).shift(s)


# ------------- Classes -------------

def bd_class(n: int, g: int, window: WindowLike) -> MotClass:
    """L^{(n^2-1)(g-1)} [BG_m] [Jac] prod_{i=2}^{n} Z(C, L^-i)"""
    _check_rank(n)
    s = bun_twist(n, g)
    w = as_interval(window).shift(-s)
    factors = [bgm_k0_factor(), fixed(jac(g))] + [zeta_factor(-i) for i in range(2, n + 1)]
    return twist(product_in_window(factors, w, genus=g), s)


def _twisted_bgm_k0(s: int) -> Factor:
    return Factor(lambda w: twist(bgm_k0(w.shift(-s)), s), Interval(None, s - 1))


def compact_motive(n: int, g: int, window: WindowLike) -> MotClass:
    """M^c(BG_m){(n^2-1)(g-1)} * M^c(Jac) * prod_{i=2}^{n} Z(C, 1{-i})"""
    _check_rank(n)
    factors = [_twisted_bgm_k0(bun_twist(n, g)), fixed(jac(g))]
    factors += [zeta_factor(-i) for i in range(2, n + 1)]
    return product_in_window(factors, window, genus=g)


def conj_motive(n: int, g: int, window: WindowLike) -> MotClass:
    """M(Jac) * M(BG_m) * prod_{i=1}^{n-1} Z(C, 1{i}); conjectural for n >= 2"""
    _check_rank(n)
    factors = [fixed(jac(g)), bgm_hom_factor()] + [zeta_factor(i) for i in range(1, n)]
    return product_in_window(factors, window, genus=g)


def fixed_det_motive(n: int, g: int, window: WindowLike) -> MotClass:
    """M(BG_m) * prod_{i=1}^{n-1} Z(C, 1{i})"""
    _check_rank(n)
    factors = [bgm_hom_factor()] + [zeta_factor(i) for i in range(1, n)]
    return product_in_window(factors, window, genus=g)


def sln_motive(n: int, window: WindowLike, g: Optional[int] = None) -> MotClass:
    """prod_{i=1}^{n-1} Z(C, 1{i})"""
    _check_rank(n)
    return product_in_window([zeta_factor(i) for i in range(1, n)], window, genus=g)


def fixed_det_compact(n: int, g: int, window: WindowLike) -> MotClass:
    """M^c(BG_m){(n^2-1)(g-1)} * prod_{i=2}^{n} Z(C, 1{-i})"""
    _check_rank(n)
    factors: List[Factor] = [_twisted_bgm_k0(bun_twist(n, g))]
    factors += [zeta_factor(-i) for i in range(2, n + 1)]
    return product_in_window(factors, window, genus=g)


def sln_compact(n: int, g: int, window: WindowLike) -> MotClass:
    """prod_{i=2}^{n} Z(C, 1{-i}), twisted by (n^2-1)(g-1)"""
    _check_rank(n)
    s = bun_twist(n, g)
    w = as_interval(window).shift(-s)
    inner = product_in_window([zeta_factor(-i) for i in range(2, n + 1)], w, genus=g)
    return twist(inner, s)

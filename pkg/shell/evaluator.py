"""
Evaluation of expressions into classes and their point-count realisations.

Every node compiles to a piece: a builder for a vd window together with the
supports of the true class, so products go through the same windowed product
as the closed formulas and the result is complete on the requested window.
"""
import logging
from typing import Callable, NamedTuple, Optional, Union

from curve_arith.laurent import LaurentQ
from curve_arith.schema import ValidatedCurve
from motring.classes import Interval, MotClass, WindowLike, as_interval, dual, restrict, scale, twist
from motring.constructors import (
    Factor,
    bgm_hom,
    bgm_k0,
    jac,
    lefschetz,
    product_in_window,
    projective_space,
    sym,
    unit,
    zeta_class,
    zeta_support,
)
from motring.realize import count_realize
from shared_utils.errors import WindowUnboundedMismatch
from .expr import Add, Dual, Expr, Leaf, Mul, Num, Twist, render
from .parser import parse

logger = logging.getLogger(__name__)


class Piece(NamedTuple):
    build: Callable[[Interval], MotClass]
    vd_support: Interval
    twist_support: Interval

    def factor(self) -> Factor:
        return Factor(self.build, self.vd_support)


def _fixed(x: MotClass) -> Piece:
    return Piece(lambda _w: x, x.vd_support, x.twist_support)


def _leaf(e: Leaf, g: Optional[int]) -> Piece:
    if e.name == "L":
        return _fixed(lefschetz(1))
    if e.name == "Jac":
        return _fixed(jac(g))
    if e.name == "BGm":
        return Piece(bgm_hom, Interval(0, None), Interval(0, None))
    if e.name == "BGmC":
        return Piece(bgm_k0, Interval(None, -1), Interval(None, -1))
    if e.name == "P":
        return _fixed(projective_space(e.arg))
    if e.name == "Sym":
        return _fixed(sym(e.arg))
    if e.name == "Z":
        i = e.arg
        return Piece(lambda w: zeta_class(i, w, g=g), zeta_support(i), zeta_support(i))
    raise ValueError(f"unknown atom {e.name}")


def _dual_source_window(w: Interval, g: Optional[int]) -> Interval:
    """
    vd window on which to build the argument of dual so that its twists cover -w.

    Terms have vd >= twist, which fixes the lower end. The upper end reaches
    vd = 2 twist + 2g + 2; levels beyond it are left out of the region of
    the dual rather than reported incomplete.
    """
    lo = None if w.hi is None else -w.hi
    if w.lo is None:
        return Interval(lo, None)
    top = -w.lo
    return Interval(lo, top + max(0, top) + 2 * (g or 0) + 2)


def compile_expr(e: Expr, g: Optional[int] = None) -> Piece:
    if isinstance(e, Num):
        return _fixed(scale(unit(), e.value))
    if isinstance(e, Leaf):
        return _leaf(e, g)
    if isinstance(e, Add):
        a, b = compile_expr(e.left, g), compile_expr(e.right, g)
        return Piece(
            lambda w: a.build(w) + b.build(w),
            a.vd_support.hull(b.vd_support),
            a.twist_support.hull(b.twist_support),
        )
    if isinstance(e, Mul):
        a, b = compile_expr(e.left, g), compile_expr(e.right, g)
        return Piece(
            lambda w: product_in_window([a.factor(), b.factor()], w, genus=g),
            a.vd_support + b.vd_support,
            a.twist_support + b.twist_support,
        )
    if isinstance(e, Twist):
        a, k = compile_expr(e.inner, g), e.k
        return Piece(
            lambda w: twist(a.build(w.shift(-k)), k),
            a.vd_support.shift(k),
            a.twist_support.shift(k),
        )
    if isinstance(e, Dual):
        a = compile_expr(e.inner, g)
        return Piece(
            lambda w: restrict(dual(a.build(_dual_source_window(w, g)), g), vd_window=w),
            -a.twist_support,
            -a.vd_support,
        )
    raise TypeError(f"not an expression node: {e!r}")


def _as_expr(e: Union[str, Expr]) -> Expr:
    return parse(e) if isinstance(e, str) else e


def evaluate(e: Union[str, Expr], g: Optional[int] = None, window: WindowLike = None) -> MotClass:
    """
    The class of e, complete on the vd window.

    Raises:
        UnboundGenus: e mentions Jac, or dualises a Jac term, and g is None
    """
    expr = _as_expr(e)
    w = as_interval(window)
    x = restrict(compile_expr(expr, g).build(w), vd_window=w)
    logger.debug(f"Evaluated {expr!r} on {w}: {len(x)} terms")
    return x


def realize(e: Union[str, Expr], curve: ValidatedCurve, order: int) -> LaurentQ:
    """
    Point count of e over the curve as a q^-1 series to the given order.

    Raises:
        WindowUnboundedMismatch: e is unbounded above in vd (a homological
            class such as Z(1)), checked before any class is built
    """
    expr = _as_expr(e)
    piece = compile_expr(expr, curve.genus)
    if piece.vd_support.hi is None and not piece.vd_support.is_empty:
        raise WindowUnboundedMismatch(
            f"{render(expr)} is unbounded above in vd; only compact-support classes realise to counts",
            vd_support=str(piece.vd_support),
        )
    w = Interval(-order, None)
    x = restrict(piece.build(w), vd_window=w)
    logger.debug(f"Realising {expr!r} over {curve.name} to order {order}")
    return count_realize(x, curve)

"""
Identities between the formula systems: duality, Harder against
Behrend-Dhillon, the torsor relation and the convergence audit.
"""
import logging
from fractions import Fraction
from typing import Optional

from curve_arith.laurent import LaurentQ, format_fraction
from curve_arith.schema import ValidatedCurve
from motring.classes import Interval, WindowLike, agree_on, as_interval, dual, twist
from motring.constructors import zeta_class
from motring.realize import count_realize
from motring.schema import ClassComparison
from hn_strata.bounds import rank_Vl
from quot_bb.strata import quot_count
from shared_utils.errors import InfiniteWindow, NegativeN, NegativeRank
from .formulas import (
    bd_class,
    bun_dimension,
    compact_motive,
    conj_motive,
    fixed_det_compact,
    harder_count,
    harder_series,
    sln_compact,
)
from .schema import ConvergenceReport, ConvergenceRow, SeriesComparison

logger = logging.getLogger(__name__)


def duality_window(n: int, g: int, lo: int) -> Interval:
    """
    Homological vd window whose dual covers every compact term with vd >= lo.

    Compact terms at vd >= lo have twist >= 2 lo - 2g - (n^2 - 1)(g - 1), so
    cutting the homological side at 2(s + g - lo) + 2 with s = n^2 (g - 1)
    leaves room on both sides.
    """
    s = bun_dimension(n, g)
    return Interval(None, 2 * (s + g - lo) + 2)


def duality_check(n: int, g: int, window: WindowLike) -> ClassComparison:
    """dual(conj_motive(n)){n^2 (g - 1)} = compact_motive(n, g), term-wise"""
    w = as_interval(window)
    if w.lo is None:
        raise InfiniteWindow("duality_check needs a finite lower vd bound for the compact side")
    compact = compact_motive(n, g, w)
    homological = conj_motive(n, g, duality_window(n, g, w.lo))
    dualised = twist(dual(homological, g), bun_dimension(n, g))
    result = ClassComparison.from_agreement(f"duality(n={n}, g={g})", agree_on(dualised, compact))
    if result.compared < len(compact):
        # every stored compact term must have been compared
        result.equal = False
        result.mismatches.append(f"only {result.compared} of {len(compact)} compact terms compared")
    logger.info(f"Duality n={n}, g={g}: {'holds' if result.equal else 'FAILS'} on {result.compared} terms")
    return result


def zeta_dual_check(i: int, width: int) -> ClassComparison:
    """dual(zeta_class(i)) = zeta_class(-(i+1)), term-wise"""
    if i < 1:
        raise NegativeN(f"zeta_dual_check needs i >= 1, got {i}", i=i)
    homological = zeta_class(i, (None, width))
    compact = zeta_class(-(i + 1), (-width, None))
    return ClassComparison.from_agreement(f"zeta_dual(i={i})", agree_on(dual(homological), compact))


def compact_vs_bd(n: int, g: int, width: int) -> ClassComparison:
    """compact_motive and bd_class are the same class"""
    s = (n * n - 1) * (g - 1)
    window = Interval(s - width, None)
    return ClassComparison.from_agreement(
        f"compact_vs_bd(n={n}, g={g})",
        agree_on(compact_motive(n, g, window), bd_class(n, g, window)),
    )


def harder_vs_bd(n: int, c: ValidatedCurve, order: int) -> SeriesComparison:
    """
    Harder's count expanded in q^-1 against the realised Behrend-Dhillon class.

    Also checks that partial sums of the expansion increase towards the
    closed form.
    """
    if order < 1:
        raise NegativeN(f"truncation order must be positive, got {order}", order=order)
    series = harder_series(n, c, order)
    realised = count_realize(bd_class(n, c.genus, Interval(-order, None)), c)
    equal = series.agrees_with(realised, order)

    closed = harder_count(n, c)
    previous = Fraction(0)
    monotone = True
    for k in range(series.valuation or 0, order + 1):
        partial = series.truncate(k).evaluate(c.q)
        if partial < previous or partial > closed:
            monotone = False
            break
        previous = partial

    return SeriesComparison(
        name=f"harder_vs_bd(n={n}, curve={c.name})",
        equal=equal,
        order=order,
        first_difference=None if equal else series.first_difference(realised),
        partial_sums_monotone=monotone,
    )


def torsor_check(n: int, c: ValidatedCurve, order: int) -> SeriesComparison:
    """(q - 1) * [compact fixed-det] = [compact SL_n] after realisation"""
    window = Interval(-order, None)
    fixed_det = count_realize(fixed_det_compact(n, c.genus, window), c)
    sln = count_realize(sln_compact(n, c.genus, window), c)
    q_minus_one = LaurentQ({-1: 1, 0: -1})
    lhs = q_minus_one * fixed_det
    equal = lhs.agrees_with(sln)
    return SeriesComparison(
        name=f"torsor(n={n}, curve={c.name})",
        equal=equal,
        order=lhs.order,
        first_difference=None if equal else lhs.first_difference(sln),
    )


# ------------- Convergence -------------

def q_valuation(delta: Fraction, q: int) -> Optional[int]:
    """Smallest integer e with q^-e <= delta; None when delta = 0"""
    if delta == 0:
        return None
    delta = abs(delta)
    e = 0
    if Fraction(1) <= delta:
        while Fraction(q) ** (-(e - 1)) <= delta:
            e -= 1
        return e
    while Fraction(1, q ** e) > delta:
        e += 1
    return e


def convergence_audit(n: int, d: int, d0: int, c: ValidatedCurve, l_max: int) -> ConvergenceReport:
    """
    r_l = |Div_{n,d}(l D_0)(F_q)| / q^{rank V_l} against Harder's count.

    Raises:
        NegativeN: n l d0 - d < 0 for some l in 1..l_max
    """
    if n < 1 or d0 < 1:
        raise NegativeRank(f"need n >= 1 and d0 >= 1, got n={n}, d0={d0}", n=n, d0=d0)
    limit = harder_count(n, c)
    rows = []
    for l in range(1, l_max + 1):
        N = n * l * d0 - d
        if N < 0:
            raise NegativeN(f"n l d0 - d = {N} is negative at l={l}", l=l, N=N)
        rank = rank_Vl(n, d, c.genus, l, d0)
        count = quot_count(n, N, c)
        r_l = Fraction(count, c.q ** rank)
        delta = abs(r_l - limit)
        rows.append(
            ConvergenceRow(
                l=l,
                N=N,
                rank=rank,
                quot_count=count,
                r_l=format_fraction(r_l),
                delta=format_fraction(delta),
                valuation=q_valuation(delta, c.q),
            )
        )
        logger.debug(f"Convergence l={l}: r_l={format_fraction(r_l)}, delta={format_fraction(delta)}")

    deltas = [Fraction(row.delta) for row in rows]
    valuations = [row.valuation for row in rows[1:]]
    delta_decreasing = all(a > b for a, b in zip(deltas, deltas[1:]))
    valuation_increasing = all(
        a is not None and b is not None and a < b for a, b in zip(valuations, valuations[1:])
    )
    return ConvergenceReport(
        n=n,
        d=d,
        d0=d0,
        curve=c.name,
        limit=format_fraction(limit),
        rows=rows,
        delta_decreasing=delta_decreasing,
        valuation_increasing=valuation_increasing,
    )

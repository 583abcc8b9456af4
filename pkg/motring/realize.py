"""
Counting realisation and the projective-bundle reduction of symmetric powers.
"""
import logging
from typing import Dict, Optional

from curve_arith.laurent import LaurentQ
from curve_arith.schema import ValidatedCurve
from curve_arith.zeta import jac_count, sym_count
from shared_utils.errors import GenusMismatch, UnboundGenus, UsageError, WindowUnboundedMismatch
from .classes import Atom, Interval, MotClass, Term, _merge_genus

logger = logging.getLogger(__name__)


def atom_count(atom: Atom, c: ValidatedCurve) -> int:
    """|Jac(F_q)|^a * prod |C^{(j)}(F_q)|"""
    value = jac_count(c) ** atom.jac
    for j in atom.syms:
        value *= sym_count(c, j)
    return value


def realization_order(x: MotClass) -> Optional[int]:
    """
    Highest exponent of q^-1 whose coefficient is complete, None if exact.

    A twist level k is complete once k lies in the twist window and k is at
    least the lower vd bound (atoms have non-negative dimension, so vd >= twist).
    """
    bounds = [b for b in (x.vd_window.lo, x.twist_window.lo) if b is not None]
    if not bounds:
        return None
    return -max(bounds)


def count_realize(x: MotClass, c: ValidatedCurve) -> LaurentQ:
    """
    Replace every atom by its point count and {k} by q^k.

    Raises:
        GenusMismatch: the class is bound to a different genus than the curve
        WindowUnboundedMismatch: the class is not bounded above in vd, or its
            region is cut from above, so no coefficient could be certified
    """
    if x.genus is not None and x.genus != c.genus:
        raise GenusMismatch(
            f"class is bound to genus {x.genus}, curve {c.name} has genus {c.genus}",
            class_genus=x.genus,
            curve_genus=c.genus,
        )
    if not x.is_certified:
        raise WindowUnboundedMismatch("class carries no certified region to realise")
    if x.vd_support.hi is None and not x.vd_support.is_empty:
        raise WindowUnboundedMismatch(
            "class is unbounded above in vd; only compact-support classes realise to counts",
            vd_support=str(x.vd_support),
        )
    if x.vd_window.hi is not None or x.twist_window.hi is not None:
        raise WindowUnboundedMismatch(
            "class window is cut from above; realisation needs every high level",
            vd_window=str(x.vd_window),
            twist_window=str(x.twist_window),
        )

    order = realization_order(x)
    coeffs: Dict[int, int] = {}
    for term, coeff in x:
        e = -term.twist
        coeffs[e] = coeffs.get(e, 0) + coeff * atom_count(term.atom, c)
    return LaurentQ(coeffs, order)


def _reduce_atom(atom: Atom, twist: int, g: int) -> Dict[Term, int]:
    """Rewrite large Sym^j as Jac * P^{j-g}, expanded into twisted Jac atoms"""
    threshold = max(1, 2 * g - 1)
    kept = tuple(j for j in atom.syms if j < threshold)
    jac_exp = 0 if g == 0 else atom.jac
    result: Dict[Term, int] = {Term(Atom(jac_exp, kept), twist): 1}
    for j in atom.syms:
        if j < threshold:
            continue
        expanded: Dict[Term, int] = {}
        jac_factor = 0 if g == 0 else 1
        for term, coeff in result.items():
            for i in range(j - g + 1):
                t = Term(term.atom * Atom(jac_factor), term.twist + i)
                expanded[t] = expanded.get(t, 0) + coeff
        result = expanded
    return result


def reduce_large_sym(x: MotClass, g: Optional[int] = None, assume_rational_point: bool = True) -> MotClass:
    """
    Canonical form with every surviving Sym^j below 2g - 1 (Jac dropped at g = 0).

    Valid only for curves with a rational point, which callers acknowledge
    through assume_rational_point. The rewrite lowers vd and raises twists, so
    the region survives only when it is open towards high vd and low twist;
    otherwise the reduced terms come back uncertified.
    """
    if not assume_rational_point:
        raise UsageError("reduce_large_sym needs a rational point on the curve")
    if all(t.atom.is_unit for t, _ in x):
        return x
    genus = _merge_genus(x.genus, g)
    if genus is None:
        raise UnboundGenus("reduce_large_sym needs a genus binding")

    terms: Dict[Term, int] = {}
    for term, coeff in x:
        for t, c in _reduce_atom(term.atom, term.twist, genus).items():
            terms[t] = terms.get(t, 0) + coeff * c

    if x.is_exact:
        return MotClass.finite(terms, genus=genus)
    if not (x.is_certified and x.vd_window.hi is None and x.twist_window.lo is None):
        logger.debug("reduce_large_sym: region not preserved, returning uncertified terms")
        return MotClass.uncertified(terms, genus=genus)

    # twists only grow and stay below the old vd ceiling; vd stays above the old twist floor
    sv, st = x.vd_support, x.twist_support
    twist_hi = None if st.hi is None or sv.hi is None else max(st.hi, sv.hi)
    vd_lo = None if st.lo is None or sv.lo is None else min(st.lo, sv.lo)
    return MotClass.build(
        terms,
        vd_window=x.vd_window,
        twist_window=x.twist_window,
        vd_support=Interval(vd_lo, sv.hi),
        twist_support=Interval(st.lo, twist_hi),
        genus=genus,
    )

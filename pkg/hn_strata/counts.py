"""
Point counts of Harder-Narasimhan strata.

|Bun^tau| = q^{-sum_{i<j} chi(E_j, E_i)} prod |Bun^ss_{n_i,d_i}|, and the
semistable count is Harder's count minus the unstable strata. Strata are
summed up to a slope depth above d/n; the omitted tail converges to zero.
"""
import logging
from fractions import Fraction
from functools import lru_cache

from bun_formulas.formulas import harder_count
from curve_arith.schema import ValidatedCurve
from curve_arith.zeta import euler_chi, jac_count
from shared_utils.errors import NegativeN, NegativeRank
from .bounds import enumerate_hn
from .schema import HNType

logger = logging.getLogger(__name__)


def extension_exponent(tau: HNType, g: int) -> int:
    """-sum_{i<j} chi(E_j, E_i): rank of the extension data over the graded pieces"""
    b = tau.blocks
    return -sum(
        euler_chi(b[j][0], b[j][1], b[i][0], b[i][1], g)
        for i in range(tau.r)
        for j in range(i + 1, tau.r)
    )


def stratum_count(tau: HNType, c: ValidatedCurve, depth: int = 4) -> Fraction:
    value = Fraction(c.q) ** extension_exponent(tau, c.genus)
    for n_i, d_i in tau.blocks:
        value *= semistable_count(n_i, d_i, c, depth)
    return value


def semistable_count(n: int, d: int, c: ValidatedCurve, depth: int = 4) -> Fraction:
    """|Bun^ss_{n,d}| with unstable strata summed for mu_1 <= d/n + depth"""
    if n < 1:
        raise NegativeRank(f"rank n must be at least 1, got {n}", n=n)
    if depth < 0:
        raise NegativeN(f"depth must be non-negative, got {depth}", depth=depth)
    if n == 1:
        return Fraction(jac_count(c), c.q - 1)
    # twisting by a degree-one line bundle shifts d by n
    return _semistable(n, d % n, c, depth)


@lru_cache(maxsize=512)
def _semistable(n: int, d: int, c: ValidatedCurve, depth: int) -> Fraction:
    value = harder_count(n, c)
    bound = Fraction(d, n) + depth
    for tau in enumerate_hn(n, d, bound):
        if tau.is_trivial:
            continue
        value -= stratum_count(tau, c, depth)
    logger.debug(f"Semistable count n={n}, d={d} mod n, depth {depth} on {c.name}: {value}")
    return value

"""
Harder-Narasimhan type combinatorics: enumeration under a slope bound, the
codimension formula, the Clifford-type h^1 bound and the exhaustive-sequence
bookkeeping.
"""
import logging
from fractions import Fraction
from math import floor
from typing import Iterator, List, Tuple, Union

from shared_utils.errors import NegativeN, NegativeRank
from .schema import HNAuditReport, HNRecord, HNType

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


def _types(n: int, d: int, upper: Fraction, strict: bool) -> Iterator[Tuple[Tuple[int, int], ...]]:
    """Block tuples of total (n, d) whose first slope is <= upper (< upper when strict)"""
    whole = Fraction(d, n)
    if whole < upper or (whole == upper and not strict):
        yield ((n, d),)
    for n1 in range(1, n):
        d1_max = floor(upper * n1)
        if strict and Fraction(d1_max, n1) == upper:
            d1_max -= 1
        # a proper first block is steeper than the whole bundle
        d1_min = floor(whole * n1) + 1
        for d1 in range(d1_max, d1_min - 1, -1):
            for rest in _types(n - n1, d - d1, Fraction(d1, n1), strict=True):
                yield ((n1, d1),) + rest


def enumerate_hn(n: int, d: int, mu_max_bound: Rational) -> List[HNType]:
    """All HN types of rank n, degree d with mu_1 <= mu_max_bound; ordered by r then blocks"""
    if n < 1:
        raise NegativeRank(f"rank n must be at least 1, got {n}", n=n)
    bound = Fraction(mu_max_bound)
    found = set(_types(n, d, bound, strict=False))
    types = [HNType(blocks=b) for b in sorted(found, key=lambda b: (len(b), b))]
    logger.debug(f"enumerate_hn(n={n}, d={d}, bound={bound}): {len(types)} types")
    return types


def codim_hn(tau: HNType, g: int) -> int:
    """(n^2 - sum_{i<=j} n_i n_j)(g - 1) + sum_{i<j} (n_j d_i - n_i d_j)"""
    ranks = [n_i for n_i, _ in tau.blocks]
    n = tau.n
    diagonal_and_above = sum(ranks[i] * ranks[j] for i in range(tau.r) for j in range(i, tau.r))
    return (n * n - diagonal_and_above) * (g - 1) + cross_degree(tau)


def cross_degree(tau: HNType) -> int:
    """sum_{i<j} (n_j d_i - n_i d_j)"""
    b = tau.blocks
    return sum(b[j][0] * b[i][1] - b[i][0] * b[j][1] for i in range(tau.r) for j in range(i + 1, tau.r))


def key_inequality(tau: HNType) -> int:
    """
    Residual cross_degree - n * (degree of the positive-degree blocks) + n * max(d, 0).

    Non-negative for every HN type; for d >= 0 it is the bound "LHS >= -n d".
    """
    n, d = tau.n, tau.d
    positive = sum(d_i for _, d_i in tau.blocks if d_i > 0)
    return cross_degree(tau) - n * positive + n * max(d, 0)


def _ceil_half(d: int) -> int:
    return -((-d) // 2)


def h1_upper(tau: HNType, g: int) -> int:
    """Blockwise bound on h^0(E tensor omega) = h^1(E^v) from Riemann-Roch and Clifford"""
    total = 0
    for n_i, d_i in tau.blocks:
        if d_i > 0:
            total += max(0, n_i * (g - 1) + d_i)
        elif -(2 * g - 2) * n_i <= d_i:
            total += max(0, n_i + _ceil_half(d_i) + g - 1)
    return total


def defect(tau: HNType, g: int) -> int:
    return codim_hn(tau, g) - tau.n * h1_upper(tau, g)


def defect_constant(n: int, g: int) -> int:
    """
    B(n, g) with defect(tau, g) >= -n|d| - B(n, g) for every HN type of rank n.

    Follows from key_inequality >= 0: for g >= 1 the non-positive blocks add at
    most n * g to h^1 and the positive blocks at most n(g - 1) beyond their
    degrees, giving n^2 (2g - 1); for g = 0 only sum_{i<j} n_i n_j <= n(n-1)/2
    is lost.
    """
    if n < 1:
        raise NegativeRank(f"rank n must be at least 1, got {n}", n=n)
    if g == 0:
        return n * (n - 1) // 2
    return n * n * (2 * g - 1)


def defect_floor(n: int, d: int, g: int) -> int:
    return -n * abs(d) - defect_constant(n, g)


def mu_l(l: int, d0: int, g: int, n: int) -> Fraction:
    """l deg D - 2g + 1 - 1/n^2"""
    if l < 0:
        raise NegativeN(f"l must be non-negative, got {l}", l=l)
    if d0 < 1 or n < 1:
        raise NegativeRank(f"need deg D >= 1 and n >= 1, got d0={d0}, n={n}", d0=d0, n=n)
    return l * d0 - 2 * g + 1 - Fraction(1, n * n)


def rank_Vl(n: int, d: int, g: int, l: int, d0: int) -> int:
    """rank of V_l = chi(E, O(lD)^n) = n (n l d0 - d) + n^2 (1 - g)"""
    rank = n * (n * l * d0 - d) + n * n * (1 - g)
    if rank < 0:
        raise NegativeRank(
            f"rank of V_l is negative ({rank}) for n={n}, d={d}, g={g}, l={l}, d0={d0}",
            rank=rank,
        )
    return rank


def hn_audit(n: int, d: int, mu_max: Rational, g: int) -> HNAuditReport:
    records = []
    for tau in enumerate_hn(n, d, mu_max):
        records.append(
            HNRecord(
                blocks=[list(b) for b in tau.blocks],
                codim=codim_hn(tau, g),
                h1_upper=h1_upper(tau, g),
                defect=defect(tau, g),
                key_inequality_residual=key_inequality(tau),
            )
        )
    bound = Fraction(mu_max)
    return HNAuditReport(
        n=n,
        d=d,
        mu_max=str(bound),
        g=g,
        types=len(records),
        min_key_residual=min((r.key_inequality_residual for r in records), default=None),
        min_codim=min((r.codim for r in records), default=None),
        min_defect=min((r.defect for r in records), default=None),
        defect_floor=defect_floor(n, d, g),
        records=records,
    )

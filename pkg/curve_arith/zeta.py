"""
Exact arithmetic of curve zeta functions.

Profiles are input data: nothing here counts points on equations. Every
value is an int or a Fraction; floats never appear.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Optional, Tuple

from shared_utils.errors import (
    BadFieldSize,
    BadLeadingCoefficient,
    BadLength,
    FunctionalEquationViolated,
    NegativeCount,
    NegativeRank,
    NonPositiveJacCount,
    PoleAtArgument,
)
from .schema import CurveData, ValidatedCurve

logger = logging.getLogger(__name__)


def _is_prime_power(q: int) -> bool:
    p = 2
    while p * p <= q:
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
        p += 1
    return q > 1


def hasse_weil_ok(c: CurveData) -> bool:
    """Integer-safe necessary condition |a_1| <= 2g * ceil(sqrt(q))"""
    if c.genus == 0:
        return True
    ceil_sqrt = isqrt(c.q - 1) + 1
    return abs(c.zeta_numerator[1]) <= 2 * c.genus * ceil_sqrt


def validate_curve(raw: CurveData) -> ValidatedCurve:
    """
    Certify Weil data of a curve profile.

    Raises:
        BadLength: numerator does not have 2g+1 coefficients
        BadLeadingCoefficient: a_0 != 1
        FunctionalEquationViolated: a_{2g-i} != q^{g-i} a_i for some i
        NegativeCount: |C(F_{q^r})| < 0 for some 1 <= r <= 2g
        BadFieldSize: q is not a prime power
    """
    g, q, a = raw.genus, raw.q, raw.zeta_numerator

    if not _is_prime_power(q):
        raise BadFieldSize(f"q={q} is not a prime power", q=q)

    if len(a) != 2 * g + 1:
        raise BadLength(
            f"zeta numerator of a genus {g} curve needs {2 * g + 1} coefficients, got {len(a)}",
            expected=2 * g + 1,
            actual=len(a),
        )

    if a[0] != 1:
        raise BadLeadingCoefficient(f"a_0 must be 1, got {a[0]}", a_0=a[0])

    for i in range(g + 1):
        if a[2 * g - i] != q ** (g - i) * a[i]:
            raise FunctionalEquationViolated(
                f"a_{2 * g - i} = {a[2 * g - i]} but q^{g - i} * a_{i} = {q ** (g - i) * a[i]}",
                index=2 * g - i,
                actual=a[2 * g - i],
                expected=q ** (g - i) * a[i],
            )

    for r in range(1, 2 * g + 1):
        count = point_count(raw, r)
        if count < 0:
            raise NegativeCount(
                f"Curve {raw.name}: derived count |C(F_{{q^{r}}})| = {count} is negative",
                r=r,
                value=count,
            )

    if not hasse_weil_ok(raw):
        logger.warning(
            f"Curve {raw.name}: |a_1| = {abs(a[1])} exceeds the Hasse-Weil bound 2g*ceil(sqrt(q))"
        )

    logger.debug(f"Curve {raw.name} validated (g={g}, q={q})")
    return ValidatedCurve(**raw.model_dump())


@lru_cache(maxsize=256)
def _series(q: int, numerator: Tuple[int, ...], order: int) -> Tuple[int, ...]:
    # 1/((1-t)(1-qt)) has t^k coefficient (q^{k+1} - 1)/(q - 1)
    base = [(q ** (k + 1) - 1) // (q - 1) for k in range(order + 1)]
    out = []
    for k in range(order + 1):
        total = 0
        for i, a_i in enumerate(numerator[: k + 1]):
            total += a_i * base[k - i]
        out.append(total)
    return tuple(out)


def zeta_series(c: ValidatedCurve, order: int) -> Tuple[int, ...]:
    """Coefficients of Z_C(t) = P(t)/((1-t)(1-qt)) up to t^order inclusive"""
    if order < 0:
        return ()
    return _series(c.q, c.zeta_numerator, order)


def sym_count(c: ValidatedCurve, j: int) -> int:
    """|C^{(j)}(F_q)|, the t^j coefficient of Z_C(t)"""
    if j < 0:
        raise NegativeRank(f"symmetric power index must be non-negative, got {j}", j=j)
    value = zeta_series(c, j)[j]
    if value < 0:
        raise NegativeCount(
            f"Curve {c.name}: derived count |C^({j})(F_q)| = {value} is negative",
            j=j,
            value=value,
        )
    return value


def jac_count(c: ValidatedCurve) -> int:
    """|Jac(C)(F_q)| = P(1)"""
    value = sum(c.zeta_numerator)
    if value <= 0:
        raise NonPositiveJacCount(f"Curve {c.name}: P(1) = {value} is not positive", value=value)
    return value


def point_count(c: CurveData, r: int = 1) -> int:
    """|C(F_{q^r})| = q^r + 1 - s_r, with s_r the r-th power sum of reciprocal roots of P"""
    if r < 1:
        raise NegativeRank(f"extension degree must be positive, got {r}", r=r)
    a = list(c.zeta_numerator) + [0] * r
    # Newton's identities for P(t) = prod (1 - alpha_i t)
    s = [0] * (r + 1)
    for k in range(1, r + 1):
        s[k] = -k * a[k] - sum(a[i] * s[k - i] for i in range(1, k))
    return c.q ** r + 1 - s[r]


def zeta_value(c: ValidatedCurve, k: int) -> Fraction:
    """zeta_C(q^{-k}) = P(q^{-k}) / ((1 - q^{-k})(1 - q^{1-k})) for k >= 2"""
    if k <= 1:
        raise PoleAtArgument(f"zeta_C has a pole at q^-{k}; need k >= 2", k=k)
    x = Fraction(1, c.q ** k)
    numerator = sum(Fraction(a_i) * x ** i for i, a_i in enumerate(c.zeta_numerator))
    return numerator / ((1 - x) * (1 - c.q * x))


def zeta_partial_sum(c: ValidatedCurve, k: int, order: int) -> Fraction:
    """sum_{j <= order} sym_count(j) q^{-kj}"""
    coefficients = zeta_series(c, order)
    return sum((Fraction(s_j, c.q ** (k * j)) for j, s_j in enumerate(coefficients)), Fraction(0))


def zeta_tail_bound(c: ValidatedCurve, k: int, order: int) -> Fraction:
    """
    Strict bound |Jac| (q/(q-1))^2 q^{(1-k)(T+1)} on zeta_value - zeta_partial_sum, k >= 2.

    Each fibre of C^(j) -> Pic^j is a projective space of dimension at most j,
    so |C^(j)(F_q)| < |Jac| q^{j+1}/(q-1); the tail is then geometric.
    """
    if k <= 1:
        raise PoleAtArgument(f"zeta_C has a pole at q^-{k}; need k >= 2", k=k)
    q = Fraction(c.q)
    return jac_count(c) * (q / (q - 1)) ** 2 * q ** ((1 - k) * (order + 1))


def euler_chi(nE: int, dE: int, nF: int, dF: int, g: int) -> int:
    """chi(E, F) = nE nF (1 - g) + (nE dF - nF dE), by Riemann-Roch"""
    if nE < 1 or nF < 1:
        raise NegativeRank(f"ranks must be positive, got nE={nE}, nF={nF}", nE=nE, nF=nF)
    return nE * nF * (1 - g) + (nE * dF - nF * dE)


def coconut_audit(nE: int, dE: int, n: int, dF: int, degD: int, g: int, nF: Optional[int] = None) -> int:
    """
    Residual of dim Hom(E, O_D^n) - dim Hom(E, F(D)) + chi(E, F).

    With Ext^1(E, F(D)) = 0 the middle term is chi(E, F(D)). The residual is
    nE * degD * (n - nF), so it vanishes exactly when rank F = n.
    """
    if degD < 0:
        raise NegativeRank(f"D must be effective, got deg D = {degD}", degD=degD)
    nF = n if nF is None else nF
    hom_torsion = n * nE * degD
    hom_twisted = euler_chi(nE, dE, nF, dF + nF * degD, g)
    return hom_torsion - hom_twisted + euler_chi(nE, dE, nF, dF, g)

"""
Bialynicki-Birula strata of the Quot schemes Div_{n,d}(D).

Fixed components are products C^{(m_1)} x ... x C^{(m_n)} with
N = sum m_i = n deg D - d; the stratum over m has codimension
c_m^+ = sum (i - 1) m_i.
"""
import logging
from itertools import product as cartesian
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from curve_arith.schema import ValidatedCurve
from curve_arith.zeta import sym_count, zeta_series
from motring.classes import UNIT, Atom, Interval, MotClass, Term, WindowLike, agree_on, as_interval, restrict
from motring.constructors import bgm_hom_factor, fixed, jac, product_in_window, zeta_factor
from motring.schema import ClassComparison
from shared_utils.errors import InfiniteWindow, NegativeN, NegativeRank, UnstableRegime
from .schema import Composition, StratumInfo, StratumRecord

logger = logging.getLogger(__name__)


def _check_args(n: int, N: int):
    if n < 1:
        raise NegativeRank(f"rank n must be at least 1, got {n}", n=n)
    if N < 0:
        raise NegativeN(f"N must be non-negative, got {N}", N=N)


def _descending(N: int, n: int) -> Iterator[Tuple[int, ...]]:
    if n == 1:
        yield (N,)
        return
    for first in range(N, -1, -1):
        for rest in _descending(N - first, n - 1):
            yield (first,) + rest


def compositions(N: int, n: int) -> List[Composition]:
    """All n-part compositions of N, descending lexicographic"""
    _check_args(n, N)
    return [Composition(parts=parts) for parts in _descending(N, n)]


def codim_plus(parts: Sequence[int], reversed_weights: bool = False) -> int:
    n = len(parts)
    if reversed_weights:
        return sum((n - i) * m for i, m in enumerate(parts, start=1))
    return sum((i - 1) * m for i, m in enumerate(parts, start=1))


def stratum(comp: Composition) -> StratumInfo:
    info = StratumInfo(
        comp=comp,
        codim_plus=codim_plus(comp.parts),
        fixed_dim=comp.total,
        ambient_dim=comp.n * comp.total,
    )
    if info.fiber_dim < 0:
        raise AssertionError(f"stratum {comp} exceeds the ambient dimension")
    return info


def div_dimension(n: int, d: int, deg_d: int) -> int:
    """dim Div_{n,d}(D) = n^2 deg D - n d"""
    if n < 1:
        raise NegativeRank(f"rank n must be at least 1, got {n}", n=n)
    return n * n * deg_d - n * d


def _fixed_atom(parts: Sequence[int]) -> Atom:
    return Atom(syms=tuple(parts))


def quot_class(n: int, N: int, window: WindowLike = None) -> MotClass:
    """sum over compositions m of (prod Sym^{m_t}){c_m^+}"""
    terms: Dict[Term, int] = {}
    for comp in compositions(N, n):
        t = Term(_fixed_atom(comp.parts), codim_plus(comp.parts))
        terms[t] = terms.get(t, 0) + 1
    x = MotClass.finite(terms)
    if window is None:
        return x
    return restrict(x, vd_window=as_interval(window))


def _fixed_count(parts: Sequence[int], c: ValidatedCurve) -> int:
    value = 1
    for m in parts:
        value *= sym_count(c, m)
    return value


def quot_count(n: int, N: int, c: ValidatedCurve) -> int:
    """sum_m q^{c_m^+} prod |C^{(m_t)}(F_q)|"""
    _check_args(n, N)
    return sum(c.q ** codim_plus(m.parts) * _fixed_count(m.parts, c) for m in compositions(N, n))


def reversed_count(n: int, N: int, c: ValidatedCurve) -> int:
    """The same BB sum with weights (n - i): the opposite torus action"""
    _check_args(n, N)
    return sum(
        c.q ** codim_plus(m.parts, reversed_weights=True) * _fixed_count(m.parts, c)
        for m in compositions(N, n)
    )


def quot_count_oracle(n: int, N: int, c: ValidatedCurve) -> int:
    """t^N coefficient of prod_{i<n} Z_C(q^i t), the zeta function of C x P^{n-1}"""
    _check_args(n, N)
    base = zeta_series(c, N)
    series = [1] + [0] * N
    for i in range(n):
        factor = [s_k * c.q ** (i * k) for k, s_k in enumerate(base)]
        series = [sum(series[a] * factor[k - a] for a in range(k + 1)) for k in range(N + 1)]
    return series[N]


def strata_report(n: int, N: int, c: ValidatedCurve) -> List[StratumRecord]:
    records = []
    for comp in compositions(N, n):
        info = stratum(comp)
        counts = [sym_count(c, m) for m in comp.parts]
        cell = c.q ** info.codim_plus
        for s in counts:
            cell *= s
        records.append(
            StratumRecord(
                comp=list(comp.parts),
                codim_plus=info.codim_plus,
                fixed_dim=info.fixed_dim,
                sym_counts=counts,
                cell_count=cell,
            )
        )
        logger.debug(f"Stratum {comp}: codim {info.codim_plus}, cell count {cell}")
    return records


def transition_target(comp: Composition, delta: int, n: Optional[int] = None) -> Composition:
    """m -> m + (n delta, 0, ..., 0); part one has weight zero so c_m^+ is unchanged"""
    n = comp.n if n is None else n
    if comp.n != n:
        raise NegativeRank(f"composition {comp} does not have {n} parts", n=n, parts=list(comp.parts))
    if delta < 1:
        raise NegativeN(f"delta must be positive, got {delta}", delta=delta)
    target = Composition(parts=(comp.parts[0] + n * delta,) + comp.parts[1:])
    assert codim_plus(target.parts) == codim_plus(comp.parts)
    return target


# ------------- Stabilised pieces -------------

def flat_twist(m_flat: Sequence[int]) -> int:
    """c_{m_flat}: entries of m_flat sit at indices 2..n, i.e. weights 1..n-1"""
    return sum(i * m for i, m in enumerate(m_flat, start=1))


def stabilized_piece(m_flat: Sequence[int], window: WindowLike, g: int) -> MotClass:
    """bgm_hom * Jac * (prod Sym^{m_flat_i}){c_{m_flat}}"""
    if any(m < 0 for m in m_flat):
        raise NegativeN(f"m_flat entries must be non-negative, got {list(m_flat)}")
    piece = MotClass.finite({Term(_fixed_atom(m_flat), flat_twist(m_flat)): 1})
    return product_in_window([bgm_hom_factor(), fixed(jac(g)), fixed(piece)], window, genus=g)


def stabilized_sum(n: int, window: WindowLike) -> MotClass:
    """sum over m_flat in N^{n-1} of prod Sym^{m_i}{i m_i}, cut to a window bounded above"""
    if n < 1:
        raise NegativeRank(f"rank n must be at least 1, got {n}", n=n)
    w = as_interval(window)
    if n == 1:
        return restrict(MotClass.finite({Term(UNIT, 0): 1}), vd_window=w)
    if w.hi is None:
        raise InfiniteWindow("stabilized_sum needs a finite upper vd bound")

    terms: Dict[Term, int] = {}
    # vd of Sym^m{i m} is m (1 + i)
    ranges = [range(w.hi // (1 + i) + 1) for i in range(1, n)] if w.hi >= 0 else [range(0)]
    for m_flat in cartesian(*ranges):
        vd = sum(m * (1 + i) for i, m in enumerate(m_flat, start=1))
        if w.contains(vd):
            t = Term(_fixed_atom(m_flat), flat_twist(m_flat))
            terms[t] = terms.get(t, 0) + 1
    support = Interval(0, None)
    return MotClass.build(terms, vd_window=w, vd_support=support, twist_support=support)


def stabilized_sum_identity(n: int, window: WindowLike) -> ClassComparison:
    """sum_{m_flat} prod Sym^{m_i}{(i) m_i} = prod_{i=1}^{n-1} zeta_class(i), term-wise"""
    lhs = stabilized_sum(n, window)
    rhs = product_in_window([zeta_factor(i) for i in range(1, n)], window)
    result = ClassComparison.from_agreement(f"stabilized_sum(n={n})", agree_on(lhs, rhs))
    logger.info(f"Stabilised sum identity n={n}: {'holds' if result.equal else 'FAILS'} on {result.compared} terms")
    return result


# ------------- Fixed determinant -------------

def unstable_compositions(n: int, N: int, g: int) -> List[Composition]:
    """Compositions with m_1 <= 2g - 2, where the fibre is not a projective bundle"""
    return [m for m in compositions(N, n) if m.parts[0] <= 2 * g - 2]


def quot_class_fixed_det(n: int, N: int, g: int, window: WindowLike = None, strict: bool = True) -> MotClass:
    """
    sum over m with m_1 > 2g - 2 of P^{m_1 - g} * prod_{i >= 2} Sym^{m_i}{c_m^+}.

    Raises:
        UnstableRegime: strict and some composition has m_1 <= 2g - 2. With
            strict=False those strata are left out (see unstable_compositions).
    """
    excluded = unstable_compositions(n, N, g)
    if excluded and strict:
        raise UnstableRegime(
            f"{len(excluded)} strata lie below the projective-bundle threshold m_1 > {2 * g - 2}",
            excluded=[list(m.parts) for m in excluded],
        )
    if excluded:
        logger.warning(f"quot_class_fixed_det(n={n}, N={N}, g={g}): leaving out {len(excluded)} unstable strata")

    terms: Dict[Term, int] = {}
    for comp in compositions(N, n):
        m1 = comp.parts[0]
        if m1 <= 2 * g - 2:
            continue
        atom = _fixed_atom(comp.parts[1:])
        c = codim_plus(comp.parts)
        for i in range(m1 - g + 1):
            t = Term(atom, c + i)
            terms[t] = terms.get(t, 0) + 1
    x = MotClass.finite(terms, genus=g)
    if window is None:
        return x
    return restrict(x, vd_window=as_interval(window))


def quot_count_fixed_det(n: int, N: int, c: ValidatedCurve, strict: bool = True) -> int:
    """Point count of quot_class_fixed_det with P^k realised as (q^{k+1} - 1)/(q - 1)"""
    g, q = c.genus, c.q
    excluded = unstable_compositions(n, N, g)
    if excluded and strict:
        raise UnstableRegime(
            f"{len(excluded)} strata lie below the projective-bundle threshold m_1 > {2 * g - 2}",
            excluded=[list(m.parts) for m in excluded],
        )
    if excluded:
        logger.warning(f"quot_count_fixed_det(n={n}, N={N}) on {c.name}: leaving out {len(excluded)} unstable strata")
    total = 0
    for comp in compositions(N, n):
        m1 = comp.parts[0]
        if m1 <= 2 * g - 2:
            continue
        projective = (q ** (m1 - g + 1) - 1) // (q - 1)
        total += projective * q ** codim_plus(comp.parts) * _fixed_count(comp.parts[1:], c)
    return total

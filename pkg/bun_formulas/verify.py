"""
Verification suite: every decidable identity of the formula system as a
named check with a pass/fail status and a THEOREM/CONJECTURAL label.

Checks are independent pure jobs; they run on the shared worker pool and
the verdict lists them in registration order whatever the worker count.
"""
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from config.logging_config import log_context
from config.settings import CURVE_DIR
from curve_arith.profiles import load_profile
from curve_arith.schema import ValidatedCurve
from curve_arith.zeta import jac_count, sym_count, zeta_partial_sum, zeta_tail_bound, zeta_value
from hn_strata.bounds import codim_hn, cross_degree, defect, defect_floor, enumerate_hn, key_inequality
from hn_strata.counts import semistable_count
from hn_strata.schema import HNType
from motring.classes import Atom, Interval, MotClass, Term, agree_on, dual, mul, restrict
from motring.constructors import Factor, bgm_hom, bgm_hom_factor, fixed, jac, product_in_window
from motring.realize import count_realize, reduce_large_sym
from quot_bb.schema import Composition
from quot_bb.strata import (
    codim_plus,
    compositions,
    quot_count,
    quot_count_fixed_det,
    quot_count_oracle,
    reversed_count,
    stabilized_piece,
    stabilized_sum_identity,
    transition_target,
)
from shared_utils.pool import ThreadPoolManager
from .checks import compact_vs_bd, convergence_audit, duality_check, harder_vs_bd, torsor_check, zeta_dual_check
from .formulas import conj_motive, fixed_det_motive, sln_motive
from .schema import CheckResult, Grid, Label, Status, Verdict

logger = logging.getLogger(__name__)

MAX_WITNESSES = 10


@dataclass(frozen=True)
class GridParams:
    oracle_N: int
    order: int
    class_width: int
    duality_width: int
    zeta_i: int
    hn_n: int
    hn_d: int
    hn_mu: int
    algebra_samples: int
    compact_n: int
    compact_g: int


GRIDS: Dict[Grid, GridParams] = {
    Grid.SMALL: GridParams(
        oracle_N=10, order=15, class_width=20, duality_width=30, zeta_i=4,
        hn_n=3, hn_d=3, hn_mu=3, algebra_samples=100, compact_n=3, compact_g=2,
    ),
    Grid.FULL: GridParams(
        oracle_N=10, order=25, class_width=40, duality_width=40, zeta_i=6,
        hn_n=4, hn_d=4, hn_mu=5, algebra_samples=500, compact_n=4, compact_g=3,
    ),
}


def load_fixture_curves(directory: Optional[Path] = None) -> List[ValidatedCurve]:
    directory = Path(directory or CURVE_DIR)
    return [load_profile(path) for path in sorted(directory.glob("*.json"))]


class _Collector:
    """Counts cases and keeps the first few failures as witnesses"""

    def __init__(self):
        self.cases = 0
        self.failed = 0
        self.witnesses: List[dict] = []

    def expect(self, ok: bool, **witness):
        self.cases += 1
        if ok:
            return
        self.failed += 1
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(witness)

    def result(self, name: str, label: Label, params: dict) -> CheckResult:
        return CheckResult(
            name=name,
            status=Status.FAIL if self.failed else Status.PASS,
            label=label,
            params=params,
            witnesses=self.witnesses,
            cases=self.cases,
        )


# ------------- Checks -------------

def check_oracle(p: GridParams, curves: Sequence[ValidatedCurve]) -> CheckResult:
    col = _Collector()
    for c in curves:
        for n in range(1, 4):
            for N in range(p.oracle_N + 1):
                bb, oracle = quot_count(n, N, c), quot_count_oracle(n, N, c)
                col.expect(bb == oracle, curve=c.name, n=n, N=N, bb=bb, oracle=oracle)
    by_name = {c.name: c for c in curves}
    if "p1_f2" in by_name:
        p1 = by_name["p1_f2"]
        col.expect(quot_count(2, 1, p1) == 9, curve="p1_f2", n=2, N=1, expected=9)
        col.expect(quot_count(2, 2, p1) == 53, curve="p1_f2", n=2, N=2, expected=53)
    return col.result("oracle_equivalence", Label.THEOREM, {"n": [1, 3], "N": [0, p.oracle_N]})


def check_reversal(p: GridParams, curves: Sequence[ValidatedCurve]) -> CheckResult:
    col = _Collector()
    for c in curves:
        for n in range(1, 4):
            for N in range(p.oracle_N + 1):
                a, b = quot_count(n, N, c), reversed_count(n, N, c)
                col.expect(a == b, curve=c.name, n=n, N=N, forward=a, reversed=b)
    return col.result("reversal_symmetry", Label.THEOREM, {"n": [1, 3], "N": [0, p.oracle_N]})


def check_curve_identities(p: GridParams, curves: Sequence[ValidatedCurve]) -> CheckResult:
    """Projective-bundle relation and zeta tail bounds"""
    col = _Collector()
    for c in curves:
        J, q, g = jac_count(c), c.q, c.genus
        for j in range(max(0, 2 * g - 1), 2 * g + 12):
            expected = J * (q ** (j - g + 1) - 1) // (q - 1)
            col.expect(sym_count(c, j) == expected, curve=c.name, j=j, relation="projective_bundle")
        for k in (2, 3):
            gap = abs(zeta_value(c, k) - zeta_partial_sum(c, k, p.order))
            col.expect(gap < zeta_tail_bound(c, k, p.order), curve=c.name, k=k, relation="zeta_tail")
    return col.result("curve_identities", Label.THEOREM, {"order": p.order})


def check_harder_vs_bd(p: GridParams, curves: Sequence[ValidatedCurve]) -> CheckResult:
    col = _Collector()
    for c in curves:
        for n in range(1, 4):
            report = harder_vs_bd(n, c, p.order)
            col.expect(
                report.equal and bool(report.partial_sums_monotone),
                curve=c.name,
                n=n,
                first_difference=report.first_difference,
            )
    return col.result("harder_equals_bd", Label.THEOREM, {"n": [1, 3], "order": p.order})


def check_compact_vs_bd(p: GridParams, curves: Sequence[ValidatedCurve]) -> CheckResult:
    col = _Collector()
    for n in range(1, p.compact_n + 1):
        for g in range(0, p.compact_g + 1):
            report = compact_vs_bd(n, g, p.class_width)
            col.expect(report.equal and report.compared > 0, n=n, g=g, mismatches=report.mismatches[:3])
    return col.result("compact_equals_bd", Label.CONJECTURAL, {"n": [1, p.compact_n], "g": [0, p.compact_g], "width": p.class_width})


def check_convergence(p: GridParams, curves: Sequence[ValidatedCurve]) -> CheckResult:
    col = _Collector()
    p1 = next((c for c in curves if c.genus == 0 and c.q == 2), None)
    if p1 is None:
        col.expect(False, reason="no genus-0 curve over F_2 among the fixtures")
        return col.result("convergence", Label.THEOREM, {})
    report = convergence_audit(2, 0, 1, p1, 6)
    expected = {1: Fraction(53, 256), 2: Fraction(1173, 4096), 3: Fraction(20821, 65536)}
    for row in report.rows:
        if row.l in expected:
            col.expect(Fraction(row.r_l) == expected[row.l], l=row.l, r_l=row.r_l)
    col.expect(report.delta_decreasing, property="delta_decreasing")
    col.expect(report.valuation_increasing, property="valuation_increasing",
               valuations=[row.valuation for row in report.rows])
    for c in curves:
        report = convergence_audit(1, 0, 1, c, 6)
        col.expect(report.delta_decreasing, curve=c.name, n=1, property="delta_decreasing")
    return col.result("convergence", Label.THEOREM, {"n": 2, "d": 0, "d0": 1, "l_max": 6})


def check_duality(p: GridParams, curves: Sequence[ValidatedCurve]) -> CheckResult:
    col = _Collector()
    for n in range(1, 4):
        for g in range(0, 3):
            s = (n * n - 1) * (g - 1)
            report = duality_check(n, g, (s - p.duality_width, None))
            col.expect(report.equal and report.compared > 0, n=n, g=g, mismatches=report.mismatches[:3])
    for i in range(1, p.zeta_i + 1):
        report = zeta_dual_check(i, p.duality_width)
        col.expect(report.equal and report.compared > 0, i=i, mismatches=report.mismatches[:3])
    return col.result("duality", Label.CONJECTURAL, {"n": [1, 3], "g": [0, 2], "i": [1, p.zeta_i], "width": p.duality_width})


HAND_CODIMS = (
    (((1, 1), (1, -1)), 2, 3),
    (((2, 0),), 2, 0),
    (((1, 1), (1, 0)), 3, 3),
)


def check_hn(p: GridParams, curves: Sequence[ValidatedCurve]) -> CheckResult:
    col = _Collector()
    for n in range(1, p.hn_n + 1):
        for d in range(-p.hn_d, p.hn_d + 1):
            for tau in enumerate_hn(n, d, p.hn_mu):
                blocks = [list(b) for b in tau.blocks]
                residual = key_inequality(tau)
                col.expect(residual >= 0, blocks=blocks, residual=residual)
                col.expect(codim_hn(tau, 0) >= cross_degree(tau) - n * n, blocks=blocks, g=0)
                for g in (1, 2, 3):
                    codim = codim_hn(tau, g)
                    col.expect(codim >= 0, blocks=blocks, g=g)
                    if g >= 2:
                        col.expect((codim == 0) == (tau.r == 1), blocks=blocks, g=g, codim=codim)
                for g in (0, 1, 2):
                    value = defect(tau, g)
                    col.expect(value >= defect_floor(n, d, g), blocks=blocks, g=g, defect=value)
    for blocks, g, expected in HAND_CODIMS:
        value = codim_hn(HNType(blocks=blocks), g)
        col.expect(value == expected, blocks=[list(b) for b in blocks], g=g, codim=value, expected=expected)
    p1 = next((c for c in curves if c.genus == 0 and c.q == 2), None)
    if p1 is not None:
        for depth in (1, 2, 3):
            gap = semistable_count(2, 0, p1, depth) - Fraction(1, 6)
            col.expect(gap == Fraction(1, 3 * 2 ** (1 + 2 * depth)), depth=depth, gap=str(gap))
    return col.result("hn_audit", Label.THEOREM, {"n": [1, p.hn_n], "d": [-p.hn_d, p.hn_d], "mu_max": p.hn_mu})


def check_stabilized(p: GridParams, curves: Sequence[ValidatedCurve]) -> CheckResult:
    col = _Collector()
    for n, hi in ((1, 20), (2, 20), (3, 15)):
        report = stabilized_sum_identity(n, (0, hi))
        col.expect(report.equal and report.compared > 0, n=n, mismatches=report.mismatches[:3])
    for g in range(0, 3):
        window = (None, 20)
        lhs = conj_motive(1, g, window)
        for rhs in (stabilized_piece((), window, g), mul(jac(g), bgm_hom((None, 20 - g)))):
            agreement = agree_on(lhs, rhs)
            col.expect(agreement.equal and agreement.compared > 0, g=g, relation="bun_1")
    return col.result("stabilized_sum", Label.CONJECTURAL, {"n": [1, 3]})


def check_fixed_det(p: GridParams, curves: Sequence[ValidatedCurve]) -> CheckResult:
    col = _Collector()
    for n in range(1, 4):
        for g in range(0, 3):
            window = (None, p.class_width)
            conj = conj_motive(n, g, window)
            via_fixed = product_in_window(
                [fixed(jac(g)), _fixed_det_factor(n, g)], window, genus=g
            )
            a = agree_on(conj, via_fixed)
            col.expect(a.equal and a.compared > 0, n=n, g=g, relation="conj = Jac * fixed_det")
            fd = fixed_det_motive(n, g, window)
            via_sln = product_in_window([bgm_hom_factor(), _sln_factor(n, g)], window, genus=g)
            b = agree_on(fd, via_sln)
            col.expect(b.equal and b.compared > 0, n=n, g=g, relation="fixed_det = BGm * SL_n")
    for c in curves:
        for n in range(1, 4):
            report = torsor_check(n, c, p.order)
            col.expect(report.equal, curve=c.name, n=n, first_difference=report.first_difference)
        # Div_{n,d} fibres over Pic with fibre the fixed-determinant locus
        for n in (1, 2):
            for N in range(2 * c.genus * n, 2 * c.genus * n + 4):
                if any(m.parts[0] <= 2 * c.genus - 2 for m in compositions(N, n)):
                    continue
                col.expect(
                    quot_count(n, N, c) == jac_count(c) * quot_count_fixed_det(n, N, c),
                    curve=c.name, n=n, N=N, relation="det fibration",
                )
    return col.result("fixed_det_and_sln", Label.CONJECTURAL, {"n": [1, 3], "order": p.order})


def _fixed_det_factor(n: int, g: int) -> Factor:
    return Factor(lambda w: fixed_det_motive(n, g, w), Interval(0, None))


def _sln_factor(n: int, g: int) -> Factor:
    return Factor(lambda w: sln_motive(n, w, g), Interval(0, None))


def check_transition(p: GridParams, curves: Sequence[ValidatedCurve]) -> CheckResult:
    col = _Collector()
    rng = random.Random(1729)
    for _ in range(1000):
        n = rng.randint(1, 5)
        comp = Composition(parts=tuple(rng.randint(0, 9) for _ in range(n)))
        delta = rng.randint(1, 5)
        target = transition_target(comp, delta, n)
        col.expect(
            codim_plus(target.parts) == codim_plus(comp.parts) and target.parts[0] == comp.parts[0] + n * delta,
            comp=list(comp.parts), delta=delta,
        )
    return col.result("transition_matching", Label.CONJECTURAL, {"cases": 1000})


def check_tate_purity(p: GridParams, curves: Sequence[ValidatedCurve]) -> CheckResult:
    col = _Collector()
    for n in range(1, 4):
        reduced = reduce_large_sym(conj_motive(n, 0, (0, 25)), 0)
        for term, coeff in reduced:
            col.expect(term.atom.is_unit and coeff >= 0, n=n, term=str(term), coeff=coeff)
        col.expect(len(reduced) > 0, n=n, reason="empty reduction")
    return col.result("tate_purity", Label.THEOREM, {"n": [1, 3], "window": [0, 25]})


# ------------- Randomised algebra -------------

def random_class(rng: random.Random, genus: int, terms: int = 3) -> MotClass:
    coeffs: Dict[Term, int] = {}
    for _ in range(rng.randint(0, terms)):
        atom = Atom(rng.randint(0, 1), tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 2))))
        t = Term(atom, rng.randint(-3, 3))
        coeffs[t] = coeffs.get(t, 0) + rng.choice([-3, -2, -1, 1, 2, 3])
    return MotClass.finite(coeffs, genus=genus)


def check_algebra(p: GridParams, curves: Sequence[ValidatedCurve]) -> CheckResult:
    col = _Collector()
    rng = random.Random(20240611)
    for k in range(p.algebra_samples):
        c = curves[k % len(curves)]
        g = c.genus
        x, y, z = (random_class(rng, g) for _ in range(3))
        col.expect((x + y) + z == x + (y + z), sample=k, law="add_assoc")
        col.expect(x * y == y * x, sample=k, law="mul_comm")
        col.expect((x * y) * z == x * (y * z), sample=k, law="mul_assoc")
        col.expect(x * (y + z) == x * y + x * z, sample=k, law="distributive")
        col.expect(dual(dual(x, g), g) == x, sample=k, law="dual_involution")
        col.expect(dual(x * y, g) == dual(x, g) * dual(y, g), sample=k, law="dual_multiplicative")
        rx, ry = count_realize(x, c), count_realize(y, c)
        col.expect(count_realize(x * y, c) == rx * ry, sample=k, law="realize_mul")
        col.expect(count_realize(x + y, c) == rx + ry, sample=k, law="realize_add")
        reduced = reduce_large_sym(x, g)
        col.expect(count_realize(reduced, c).evaluate(c.q) == rx.evaluate(c.q), sample=k, law="reduce_invariance")
        lo = rng.randint(-4, 4)
        cut = restrict(x, vd_window=(lo, None)) * restrict(y, vd_window=(lo, None))
        agreement = agree_on(cut, x * y, allow_empty=True)
        col.expect(agreement.equal, sample=k, law="window_soundness")
    return col.result("algebra_properties", Label.THEOREM, {"samples": p.algebra_samples})


CHECKS: List[Callable[[GridParams, Sequence[ValidatedCurve]], CheckResult]] = [
    check_oracle,
    check_reversal,
    check_curve_identities,
    check_harder_vs_bd,
    check_compact_vs_bd,
    check_convergence,
    check_duality,
    check_hn,
    check_stabilized,
    check_tate_purity,
    check_fixed_det,
    check_transition,
    check_algebra,
]


def _run_check(job) -> CheckResult:
    check, params, curves = job
    name = check.__name__.replace("check_", "")
    with log_context(check=name):
        return _run_logged(check, params, curves, name)


def _run_logged(check, params, curves, name: str) -> CheckResult:
    logger.info("Running")
    try:
        result = check(params, curves)
    except Exception as e:
        logger.exception("Check raised")
        return CheckResult(
            name=name,
            status=Status.FAIL,
            params={},
            witnesses=[{"error": type(e).__name__, "message": str(e)}],
        )
    if result.passed:
        logger.info(f"{result.name}: pass ({result.cases} cases)")
    else:
        logger.error(f"{result.name}: FAIL, first witnesses {result.witnesses[:3]}")
    return result


def run_suite(grid: Grid = Grid.SMALL, curves: Optional[Sequence[ValidatedCurve]] = None,
              workers: Optional[int] = None) -> Verdict:
    grid = Grid(grid)
    params = GRIDS[grid]
    curves = list(curves) if curves is not None else load_fixture_curves()
    logger.info(f"Verification suite starting: grid={grid.value}, {len(curves)} curves, {len(CHECKS)} checks")

    with ThreadPoolManager(max_workers=workers) as pool:
        results = pool.map_ordered(_run_check, [(check, params, curves) for check in CHECKS])

    failed = sum(1 for r in results if not r.passed)
    verdict = Verdict(
        grid=grid,
        passed=failed == 0,
        checks=results,
        summary=Verdict.Summary(total=len(results), failed=failed),
    )
    logger.info(f"Verification suite finished: {len(results) - failed}/{len(results)} checks pass")
    return verdict

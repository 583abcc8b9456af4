"""
Tests for the verification suite runner.
"""
import pytest

from bun_formulas import verify
from bun_formulas.schema import CheckResult, Grid, Label, Status
from bun_formulas.verify import CHECKS, GRIDS, load_fixture_curves, run_suite

CHECK_NAMES = [
    "oracle_equivalence",
    "reversal_symmetry",
    "curve_identities",
    "harder_equals_bd",
    "compact_equals_bd",
    "convergence",
    "duality",
    "hn_audit",
    "stabilized_sum",
    "tate_purity",
    "fixed_det_and_sln",
    "transition_matching",
    "algebra_properties",
]


@pytest.fixture(scope="module")
def small_verdict():
    return run_suite(Grid.SMALL)


@pytest.mark.slow
class TestSmallGrid:
    def test_passes(self, small_verdict):
        failed = [(c.name, c.witnesses[:2]) for c in small_verdict.checks if not c.passed]
        assert small_verdict.passed, failed
        assert small_verdict.summary.failed == 0

    def test_checks_in_registration_order(self, small_verdict):
        assert [c.name for c in small_verdict.checks] == CHECK_NAMES
        assert small_verdict.summary.total == len(CHECKS)

    def test_labels(self, small_verdict):
        labels = {c.name: c.label for c in small_verdict.checks}
        assert labels["oracle_equivalence"] == Label.THEOREM
        assert labels["duality"] == Label.CONJECTURAL
        assert labels["transition_matching"] == Label.CONJECTURAL

    def test_every_check_ran_cases(self, small_verdict):
        assert all(c.cases > 0 for c in small_verdict.checks)


class TestRunner:
    def test_fixture_curves(self):
        assert len(load_fixture_curves()) == 5

    def test_grids(self):
        assert GRIDS[Grid.FULL].algebra_samples > GRIDS[Grid.SMALL].algebra_samples

    def test_raising_check_becomes_failure(self, monkeypatch, p1_f2):
        def check_boom(p, curves):
            raise ZeroDivisionError("boom")

        monkeypatch.setattr(verify, "CHECKS", [check_boom])
        verdict = run_suite(Grid.SMALL, curves=[p1_f2], workers=1)
        assert not verdict.passed
        [result] = verdict.checks
        assert result.name == "boom"
        assert result.status == Status.FAIL
        assert result.witnesses == [{"error": "ZeroDivisionError", "message": "boom"}]

    def test_failed_check_fails_verdict(self, monkeypatch, p1_f2):
        def check_ok(p, curves):
            return CheckResult(name="ok", status=Status.PASS, cases=1)

        def check_bad(p, curves):
            return CheckResult(name="bad", status=Status.FAIL, cases=1, witnesses=[{"n": 2}])

        monkeypatch.setattr(verify, "CHECKS", [check_ok, check_bad])
        verdict = run_suite("small", curves=[p1_f2], workers=2)
        assert [c.name for c in verdict.checks] == ["ok", "bad"]
        assert verdict.summary.failed == 1
        assert not verdict.passed


@pytest.mark.slow
class TestFullGrid:
    def test_every_check_passes(self):
        """Acceptance grids: n <= 4, |d| <= 4, mu <= 5, order 25, class width 40"""
        verdict = run_suite(Grid.FULL)
        failed = [(c.name, c.witnesses[:2]) for c in verdict.checks if not c.passed]
        assert verdict.passed, failed
        assert [c.name for c in verdict.checks] == CHECK_NAMES
        assert all(c.cases > 0 for c in verdict.checks)

    def test_grid_parameters(self):
        full = GRIDS[Grid.FULL]
        assert (full.hn_n, full.hn_d, full.hn_mu) == (4, 4, 5)
        assert full.order == 25
        assert (full.class_width, full.compact_n, full.compact_g) == (40, 4, 3)
        assert full.zeta_i == 6 and full.duality_width >= 40

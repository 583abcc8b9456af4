"""
Tests for curve profiles and zeta-function arithmetic.
"""
import json
import logging
from fractions import Fraction

import pytest

from curve_arith.profiles import load_profile, parse_profile
from curve_arith.schema import CurveData
from curve_arith.zeta import (
    coconut_audit,
    euler_chi,
    jac_count,
    point_count,
    sym_count,
    validate_curve,
    zeta_partial_sum,
    zeta_series,
    zeta_tail_bound,
    zeta_value,
)
from shared_utils.errors import (
    BadFieldSize,
    BadLeadingCoefficient,
    BadLength,
    FunctionalEquationViolated,
    NegativeCount,
    NegativeRank,
    PoleAtArgument,
    ProfileLoadError,
)


def _raw(genus, q, numerator, name="curve"):
    return CurveData(name=name, genus=genus, q=q, zeta_numerator=numerator)


class TestValidateCurve:
    def test_fixtures_validate(self, all_curves):
        """Every bundled profile passes validation"""
        assert [c.name for c in all_curves] == ["p1_f2", "p1_f3", "ell_f2", "ell_f3", "g2_f2"]

    def test_functional_equation_violated(self):
        """a_2 must equal q * a_0 for an elliptic curve"""
        with pytest.raises(FunctionalEquationViolated) as exc:
            validate_curve(_raw(1, 2, [1, 0, 3]))
        assert exc.value.detail["expected"] == 2
        assert exc.value.exit_code == 3

    def test_bad_length(self):
        """A genus-1 numerator has three coefficients"""
        with pytest.raises(BadLength):
            validate_curve(_raw(1, 2, [1, 0]))

    def test_bad_leading_coefficient(self):
        with pytest.raises(BadLeadingCoefficient):
            validate_curve(_raw(1, 2, [2, 0, 4]))

    def test_q_not_prime_power(self):
        with pytest.raises(BadFieldSize):
            validate_curve(_raw(0, 6, [1]))

    def test_prime_power_accepted(self):
        """q = 4 is a valid field size"""
        assert validate_curve(_raw(0, 4, [1])).q == 4

    def test_hasse_weil_warning(self, caplog):
        """Out-of-bound a_1 is logged, not rejected; point counts 17 and 51 stay non-negative"""
        with caplog.at_level(logging.WARNING, logger="curve_arith.zeta"):
            curve = validate_curve(_raw(1, 9, [1, 7, 9], name="wild"))
        assert curve.name == "wild"
        assert any("Hasse-Weil" in r.getMessage() for r in caplog.records)

    def test_negative_point_count_rejected(self):
        """Functional equation holds but |C(F_2)| = 2 + 1 - 5 = -2"""
        with pytest.raises(NegativeCount) as exc:
            validate_curve(_raw(2, 2, [1, -5, 12, -10, 4]))
        assert exc.value.detail == {"r": 1, "value": -2}
        assert exc.value.exit_code == 3

    def test_negative_count_over_extension(self):
        """|C(F_2)| = 8 but |C(F_4)| = 4 + 1 - (25 - 4) = -16"""
        with pytest.raises(NegativeCount) as exc:
            validate_curve(_raw(1, 2, [1, 5, 2]))
        assert exc.value.detail["r"] == 2
        assert exc.value.detail["value"] == -16


class TestCounts:
    def test_sym_count_p1(self, p1_f2):
        """|P^2(F_2)| = 7"""
        assert sym_count(p1_f2, 2) == 7

    def test_sym_count_elliptic(self, ell_f2):
        assert sym_count(ell_f2, 2) == 9

    def test_sym_counts_genus_two(self, g2_f2):
        """Coefficients of (1 + 4t^4)/((1-t)(1-2t))"""
        assert list(zeta_series(g2_f2, 5)) == [1, 3, 7, 15, 35, 75]
        assert jac_count(g2_f2) == 5

    def test_sym_count_negative_index(self, p1_f2):
        with pytest.raises(NegativeRank):
            sym_count(p1_f2, -1)

    def test_jac_count(self, ell_f3, p1_f3):
        assert jac_count(ell_f3) == 5
        assert jac_count(p1_f3) == 1

    def test_point_count(self, ell_f2):
        """Supersingular curve: 3 points over F_2, 9 over F_4"""
        assert point_count(ell_f2, 1) == 3
        assert point_count(ell_f2, 2) == 9

    def test_point_count_matches_sym_one(self, all_curves):
        """|C(F_q)| is the t coefficient of the zeta function"""
        for c in all_curves:
            assert point_count(c, 1) == sym_count(c, 1)

    def test_projective_bundle_range(self, all_curves):
        """|C^(j)| = |Jac| (q^{j-g+1} - 1)/(q - 1) for j >= 2g - 1"""
        for c in all_curves:
            for j in range(max(0, 2 * c.genus - 1), 2 * c.genus + 6):
                assert sym_count(c, j) == jac_count(c) * (c.q ** (j - c.genus + 1) - 1) // (c.q - 1)


class TestZetaValues:
    def test_zeta_value_p1(self, p1_f2):
        assert zeta_value(p1_f2, 2) == Fraction(8, 3)

    def test_zeta_value_elliptic(self, ell_f2):
        assert zeta_value(ell_f2, 2) == 3

    def test_pole(self, p1_f2):
        with pytest.raises(PoleAtArgument):
            zeta_value(p1_f2, 1)

    def test_pole_is_value_error(self, p1_f2):
        """Usage errors double as ValueError for library callers"""
        with pytest.raises(ValueError):
            zeta_value(p1_f2, 0)

    def test_partial_sums_within_tail_bound(self, all_curves):
        for c in all_curves:
            for k in (2, 3, 4):
                for order in (2, 5, 10):
                    gap = zeta_value(c, k) - zeta_partial_sum(c, k, order)
                    assert 0 <= gap < zeta_tail_bound(c, k, order)


class TestRiemannRoch:
    def test_euler_chi(self):
        assert euler_chi(2, 1, 3, -2, 2) == -13

    def test_euler_chi_rank_zero(self):
        with pytest.raises(NegativeRank):
            euler_chi(0, 1, 1, 0, 1)

    def test_coconut_vanishes_at_full_rank(self):
        """The residual is zero whenever rank F = n"""
        for g in range(3):
            for dF in (-2, 0, 3):
                assert coconut_audit(2, 1, 3, dF, 2, g) == 0

    def test_coconut_forced_rank(self):
        """nE * deg D * (n - nF)"""
        assert coconut_audit(1, 0, 2, 5, 2, 1, nF=1) == 2
        assert coconut_audit(2, 3, 4, 0, 3, 2, nF=1) == 2 * 3 * 3


class TestProfiles:
    def test_float_rejected(self):
        """StrictInt fields refuse 2.0"""
        with pytest.raises(ProfileLoadError) as exc:
            parse_profile(json.dumps({"genus": 0, "q": 2.0, "zeta_numerator": [1]}))
        assert exc.value.detail["errors"]

    def test_not_json(self):
        with pytest.raises(ProfileLoadError):
            parse_profile("{genus: 0")

    def test_not_an_object(self):
        with pytest.raises(ProfileLoadError):
            parse_profile("[1, 2]")

    def test_name_from_file_stem(self, tmp_path):
        path = tmp_path / "my_curve.json"
        path.write_text(json.dumps({"genus": 1, "q": 3, "zeta_numerator": [1, 1, 3]}))
        curve = load_profile(path)
        assert curve.name == "my_curve"
        assert jac_count(curve) == 5

    def test_missing_file(self, tmp_path):
        with pytest.raises(ProfileLoadError):
            load_profile(tmp_path / "absent.json")

    def test_validation_runs_on_load(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"genus": 1, "q": 2, "zeta_numerator": [1, 0, 3]}))
        with pytest.raises(FunctionalEquationViolated):
            load_profile(path)

"""
Tests for Harder-Narasimhan types, their codimensions and stratum counts.
"""
from fractions import Fraction
from itertools import product

import pytest
from pydantic import ValidationError

from hn_strata.bounds import (
    codim_hn,
    cross_degree,
    defect,
    defect_constant,
    defect_floor,
    enumerate_hn,
    h1_upper,
    hn_audit,
    key_inequality,
    mu_l,
    rank_Vl,
)
from hn_strata.counts import extension_exponent, semistable_count, stratum_count
from hn_strata.schema import HNType
from shared_utils.errors import NegativeN, NegativeRank


def hn(*blocks):
    return HNType(blocks=blocks)


@pytest.fixture(scope="module")
def acceptance_types():
    """Every HN type with n <= 4, |d| <= 4 and mu_1 <= 5"""
    return [tau for n, d in product(range(1, 5), range(-4, 5)) for tau in enumerate_hn(n, d, 5)]


class TestHNType:
    def test_slopes_must_decrease(self):
        with pytest.raises(ValidationError):
            hn((1, 0), (1, 1))
        with pytest.raises(ValidationError):
            hn((1, 0), (1, 0))

    def test_positive_ranks(self):
        with pytest.raises(ValidationError):
            hn((0, 1))

    def test_totals(self):
        tau = hn((1, 2), (2, 1))
        assert (tau.n, tau.d, tau.r) == (3, 3, 2)
        assert tau.mu_max == 2
        assert str(tau) == "((1,2),(2,1))"


class TestEnumerate:
    def test_rank_two(self):
        types = enumerate_hn(2, 0, 1)
        assert [t.blocks for t in types] == [((2, 0),), ((1, 1), (1, -1))]

    def test_bound_below_slope(self):
        """Nothing has mu_1 below d/n"""
        assert enumerate_hn(2, 1, 0) == []

    def test_fractional_bound(self):
        types = enumerate_hn(3, 0, Fraction(1, 2))
        assert all(t.mu_max <= Fraction(1, 2) for t in types)
        assert ((2, 1), (1, -1)) in [t.blocks for t in types]

    def test_bad_rank(self):
        with pytest.raises(NegativeRank):
            enumerate_hn(0, 0, 1)

    def test_types_are_distinct(self):
        types = enumerate_hn(4, 1, 3)
        assert len({t.blocks for t in types}) == len(types)


class TestCodimension:
    def test_hand_value(self):
        assert codim_hn(hn((1, 1), (1, -1)), 2) == 3

    def test_minimal_gap(self):
        """((1,1),(1,0)) has codimension g"""
        for g in range(5):
            assert codim_hn(hn((1, 1), (1, 0)), g) == g

    def test_semistable_type(self):
        assert codim_hn(hn((3, 1)), 4) == 0

    def test_non_negative(self):
        for g in (1, 2, 3):
            for n in range(1, 5):
                for d in range(n):
                    for tau in enumerate_hn(n, d, Fraction(d, n) + 3):
                        assert codim_hn(tau, g) >= 0

    def test_negative_on_the_projective_line(self):
        """Below genus one a stratum can exceed the stack dimension"""
        assert codim_hn(hn((2, 1), (1, 0)), 0) == -1

    def test_cross_degree(self):
        assert cross_degree(hn((1, 2), (1, -1))) == 3

    def test_genus_zero_sanity_bound(self, acceptance_types):
        for tau in acceptance_types:
            assert codim_hn(tau, 0) >= cross_degree(tau) - tau.n ** 2, tau

    def test_only_trivial_type_is_open(self, acceptance_types):
        """From genus two on, codimension 0 singles out the semistable stratum"""
        for g in (2, 3):
            open_types = [tau for tau in acceptance_types if codim_hn(tau, g) == 0]
            assert all(tau.r == 1 for tau in open_types)
            assert len(open_types) == sum(1 for tau in acceptance_types if tau.r == 1)


class TestKeyInequality:
    def test_hand_value(self):
        assert key_inequality(hn((1, 2), (1, -1))) == 1

    def test_grid(self, acceptance_types):
        assert len(acceptance_types) > 1000
        for tau in acceptance_types:
            assert key_inequality(tau) >= 0, tau

    def test_audit(self):
        report = hn_audit(2, 0, 3, 1)
        assert report.types == len(report.records) == len(enumerate_hn(2, 0, 3))
        assert report.min_key_residual >= 0
        assert report.mu_max == "3"


class TestDefect:
    def test_projective_line(self):
        """(n, d, g) = (2, 0, 0): codim 1, h^1 bound 0"""
        assert defect(hn((1, 1), (1, -1)), 0) == 1
        assert defect(hn((2, 0)), 0) == 0

    def test_elliptic(self):
        """(n, d, g) = (2, 1, 1): codim 1, h^1 bound 1 + 1"""
        assert defect(hn((1, 1), (1, 0)), 1) == -3

    def test_genus_two(self):
        """(n, d, g) = (3, 0, 2): codim 2 + 3, h^1 bound 2 + 3"""
        assert defect(hn((1, 1), (2, -1)), 2) == -10
        assert defect(hn((3, 0)), 2) == -12

    def test_constant(self):
        assert defect_constant(2, 0) == 1
        assert defect_constant(2, 1) == 4
        assert defect_constant(3, 2) == 27
        with pytest.raises(NegativeRank):
            defect_constant(0, 1)

    def test_floor(self, acceptance_types):
        for g in (0, 1, 2, 3):
            for tau in acceptance_types:
                assert defect(tau, g) >= defect_floor(tau.n, tau.d, g), (tau, g)

    def test_min_defect_settles(self):
        """Minimum defect over mu_1 <= M only falls, and is constant once M >= 9"""
        for n in (2, 3):
            for d in range(-3, 4):
                types = enumerate_hn(n, d, 14)
                for g in (0, 1, 2):
                    minima = []
                    for M in range(1, 15):
                        values = [defect(tau, g) for tau in types if tau.mu_max <= M]
                        if values:
                            minima.append((M, min(values)))
                    assert all(a[1] >= b[1] for a, b in zip(minima, minima[1:])), (n, d, g)
                    tail = {value for M, value in minima if M >= 9}
                    assert len(tail) == 1, (n, d, g, minima)

    def test_audit_reports_floor(self):
        report = hn_audit(3, 1, Fraction(5, 2), 2)
        assert report.defect_floor == -3 - 27
        assert report.min_defect >= report.defect_floor


class TestBounds:
    def test_h1_upper(self):
        assert h1_upper(hn((1, 1), (1, -1)), 2) == 4
        assert h1_upper(hn((1, 1), (1, -1)), 0) == 0

    def test_mu_l(self):
        assert mu_l(1, 1, 0, 2) == Fraction(7, 4)
        assert mu_l(2, 3, 1, 3) == Fraction(44, 9)

    def test_mu_l_arguments(self):
        with pytest.raises(NegativeN):
            mu_l(-1, 1, 0, 2)
        with pytest.raises(NegativeRank):
            mu_l(1, 0, 0, 2)

    def test_rank_Vl(self):
        """rank grows by n^2 d0 per step"""
        assert rank_Vl(2, 0, 0, 1, 1) == 8
        assert rank_Vl(2, 0, 0, 2, 1) == 12

    def test_rank_Vl_negative(self):
        with pytest.raises(NegativeRank):
            rank_Vl(1, 0, 5, 1, 1)


class TestCounts:
    def test_extension_exponent(self):
        assert extension_exponent(hn((1, 1), (1, -1)), 0) == -3

    def test_stratum_count(self, p1_f2):
        assert stratum_count(hn((1, 1), (1, -1)), p1_f2) == Fraction(1, 8)

    def test_line_bundles(self, ell_f2):
        """Every line bundle is semistable: |Pic^d| / (q - 1)"""
        assert semistable_count(1, 5, ell_f2) == 3

    def test_rank_two_p1(self, p1_f2):
        """1/6 + 1/(3 * 2^{1+2D}) at slope depth D"""
        assert semistable_count(2, 0, p1_f2, depth=1) == Fraction(5, 24)
        assert semistable_count(2, 0, p1_f2, depth=3) == Fraction(1, 6) + Fraction(1, 384)

    def test_degree_taken_mod_rank(self, ell_f2):
        assert semistable_count(2, 3, ell_f2, depth=2) == semistable_count(2, 1, ell_f2, depth=2)

    def test_negative_depth(self, p1_f2):
        with pytest.raises(NegativeN):
            semistable_count(2, 0, p1_f2, depth=-1)

"""
Tests for the torus-fixed strata of Div_{n,d}(D) and their counts.
"""
import logging

import pytest
from pydantic import ValidationError

from motring.classes import UNIT, Term, sym_atom
from motring.realize import count_realize
from quot_bb.schema import Composition
from quot_bb.strata import (
    codim_plus,
    compositions,
    div_dimension,
    quot_class,
    quot_class_fixed_det,
    quot_count,
    quot_count_fixed_det,
    quot_count_oracle,
    reversed_count,
    stabilized_piece,
    stabilized_sum,
    stabilized_sum_identity,
    stratum,
    strata_report,
    transition_target,
)
from shared_utils.errors import InfiniteWindow, NegativeN, NegativeRank, UnstableRegime


class TestCompositions:
    def test_descending_order(self):
        assert [c.parts for c in compositions(2, 2)] == [(2, 0), (1, 1), (0, 2)]

    def test_count(self):
        """C(N + n - 1, n - 1) compositions"""
        assert len(compositions(4, 3)) == 15
        assert compositions(0, 3)[0].parts == (0, 0, 0)

    def test_bad_arguments(self):
        with pytest.raises(NegativeRank):
            compositions(2, 0)
        with pytest.raises(NegativeN):
            compositions(-1, 2)

    def test_parts_validated(self):
        with pytest.raises(ValidationError):
            Composition(parts=(1, -1))

    def test_list_parts_accepted(self):
        assert Composition(parts=[2, 1]).parts == (2, 1)


class TestStrata:
    def test_codim_plus(self):
        assert codim_plus((1, 1)) == 1
        assert codim_plus((0, 0, 2)) == 4
        assert codim_plus((0, 0, 2), reversed_weights=True) == 0

    def test_fiber_dimension(self):
        info = stratum(Composition(parts=(1, 1)))
        assert info.fixed_dim == 2
        assert info.ambient_dim == 4
        assert info.fiber_dim == 1

    def test_div_dimension(self):
        assert div_dimension(2, 0, 1) == 4
        assert div_dimension(2, 1, 3) == 10

    def test_transition_keeps_codimension(self):
        target = transition_target(Composition(parts=(1, 2)), 1)
        assert target.parts == (3, 2)
        assert codim_plus(target.parts) == codim_plus((1, 2))

    def test_transition_needs_positive_delta(self):
        with pytest.raises(NegativeN):
            transition_target(Composition(parts=(1, 2)), 0)

    def test_report_sums_to_count(self, p1_f2):
        records = strata_report(2, 2, p1_f2)
        assert [r.comp for r in records] == [[2, 0], [1, 1], [0, 2]]
        assert sum(r.cell_count for r in records) == 53


class TestCounts:
    def test_p1_small(self, p1_f2):
        assert quot_count(2, 1, p1_f2) == 9
        assert quot_count(2, 2, p1_f2) == 53

    def test_p1_larger(self, p1_f2):
        """2^{2N+2}/3 - ((N+2) 2^{N+1} + 1/3) at N = 4, 8"""
        assert quot_count(2, 4, p1_f2) == 1173
        assert quot_count(2, 8, p1_f2) == 344405

    def test_elliptic(self, ell_f2):
        assert quot_count(2, 2, ell_f2) == 63

    def test_matches_oracle(self, all_curves):
        for c in all_curves:
            for n in range(1, 4):
                for N in range(7):
                    assert quot_count(n, N, c) == quot_count_oracle(n, N, c), (c.name, n, N)

    def test_opposite_action_agrees(self, all_curves):
        for c in all_curves:
            for n in range(1, 4):
                for N in range(6):
                    assert reversed_count(n, N, c) == quot_count(n, N, c)

    def test_class_realises_to_count(self, p1_f2, ell_f2):
        x = quot_class(2, 2)
        assert x.coefficient(Term(sym_atom(1) * sym_atom(1), 1)) == 1
        assert count_realize(x, p1_f2).evaluate(2) == 53
        assert count_realize(x, ell_f2).evaluate(2) == 63


class TestStabilised:
    def test_identity(self):
        for n in range(1, 5):
            result = stabilized_sum_identity(n, (0, 20))
            assert result.equal
            assert result.compared > 0

    def test_rank_one(self):
        assert stabilized_sum(1, (None, 5)).terms == {Term(UNIT, 0): 1}

    def test_needs_upper_bound(self):
        with pytest.raises(InfiniteWindow):
            stabilized_sum(2, (0, None))

    def test_piece_rejects_negative(self):
        with pytest.raises(NegativeN):
            stabilized_piece((1, -1), (None, 10), 1)


class TestFixedDeterminant:
    def test_projective_bundle_factor(self, ell_f2, g2_f2):
        """|C^{(N)}| = |Jac| * |P^{N-g}| once N > 2g - 2"""
        assert quot_count_fixed_det(1, 3, ell_f2) == 7
        assert quot_count(1, 3, ell_f2) == 21
        assert quot_count(1, 3, g2_f2) == 5 * quot_count_fixed_det(1, 3, g2_f2)

    def test_unstable_strict(self, ell_f2):
        with pytest.raises(UnstableRegime) as exc:
            quot_count_fixed_det(2, 2, ell_f2)
        assert exc.value.detail["excluded"] == [[0, 2]]

    def test_unstable_lenient_leaves_strata_out(self, caplog):
        with caplog.at_level(logging.WARNING, logger="quot_bb.strata"):
            x = quot_class_fixed_det(2, 2, 1, strict=False)
        assert x.terms == {
            Term(UNIT, 0): 1,
            Term(UNIT, 1): 1,
            Term(sym_atom(1), 1): 1,
        }
        assert any("unstable" in r.getMessage() for r in caplog.records)

    def test_class_matches_count(self, ell_f2):
        x = quot_class_fixed_det(1, 4, 1)
        assert count_realize(x, ell_f2).evaluate(2) == quot_count_fixed_det(1, 4, ell_f2)

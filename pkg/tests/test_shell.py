"""
Tests for the expression shell: parsing, canonical text and evaluation.
"""
import pytest
from hypothesis import given, settings, strategies as st

from bun_formulas.formulas import conj_motive
from curve_arith.laurent import LaurentQ
from motring.classes import UNIT, Term, agree_on, sym_atom
from motring.constructors import lefschetz, product_in_window, projective_space, zeta_factor, zeta_support
from shell.evaluator import evaluate, realize
from shell.expr import PLAIN_ATOMS, Add, Dual, Leaf, Mul, Num, Twist, render
from shell.parser import parse
from shared_utils.errors import ExprSyntaxError, UnboundGenus, WindowUnboundedMismatch

leaves = st.one_of(
    st.builds(Num, st.integers(min_value=-20, max_value=20)),
    st.sampled_from([Leaf(name) for name in PLAIN_ATOMS]),
    st.builds(Leaf, st.sampled_from(["P", "Sym"]), st.integers(min_value=0, max_value=9)),
    st.builds(Leaf, st.just("Z"), st.integers(min_value=-5, max_value=5)),
)
expressions = st.recursive(
    leaves,
    lambda kids: st.one_of(
        st.builds(Add, kids, kids),
        st.builds(Mul, kids, kids),
        st.builds(Twist, kids, st.integers(min_value=-9, max_value=9)),
        st.builds(Dual, kids),
    ),
    max_leaves=12,
)


class TestParser:
    def test_precedence(self):
        """'+' binds loosest, then '*', then the postfix twist"""
        assert parse("1 + 2 * L{3}") == Add(Num(1), Mul(Num(2), Twist(Leaf("L"), 3)))

    def test_parentheses(self):
        assert parse("(1 + L) * Z(-2)") == Mul(Add(Num(1), Leaf("L")), Leaf("Z", -2))

    def test_left_associative(self):
        assert parse("L * Jac * BGm") == Mul(Mul(Leaf("L"), Leaf("Jac")), Leaf("BGm"))
        assert parse("L{1}{2}") == Twist(Twist(Leaf("L"), 1), 2)

    def test_dual(self):
        assert parse("dual(Sym(2)){-1}") == Twist(Dual(Leaf("Sym", 2)), -1)

    def test_negative_literal(self):
        assert parse("-3 * BGmC") == Mul(Num(-3), Leaf("BGmC"))

    def test_whitespace_ignored(self):
        assert parse("  P( 2 )*L ") == parse("P(2) * L")


class TestParseErrors:
    def test_missing_index(self):
        with pytest.raises(ExprSyntaxError) as exc:
            parse("Z()")
        assert exc.value.offset == 2
        assert exc.value.expected == ["-", "int"]

    def test_dangling_operator(self):
        with pytest.raises(ExprSyntaxError) as exc:
            parse("Jac *")
        assert exc.value.offset == 5

    def test_unknown_name(self):
        with pytest.raises(ExprSyntaxError) as exc:
            parse("Foo")
        assert exc.value.offset == 0
        assert "Jac" in exc.value.expected

    def test_unclosed_parenthesis(self):
        with pytest.raises(ExprSyntaxError) as exc:
            parse("(L")
        assert exc.value.offset == 2
        assert exc.value.expected == [")"]

    def test_natural_index(self):
        """P and Sym take non-negative indices"""
        with pytest.raises(ExprSyntaxError) as exc:
            parse("P(-1)")
        assert exc.value.offset == 2

    def test_bad_character(self):
        with pytest.raises(ExprSyntaxError) as exc:
            parse("L $")
        assert exc.value.offset == 2

    def test_offsets_are_bytes(self):
        """A no-break space is two bytes in UTF-8"""
        with pytest.raises(ExprSyntaxError) as exc:
            parse("L +\u00a0Foo")
        assert exc.value.offset == 5

    def test_trailing_input(self):
        with pytest.raises(ExprSyntaxError) as exc:
            parse("L L")
        assert exc.value.offset == 2

    def test_message(self):
        with pytest.raises(ExprSyntaxError) as exc:
            parse("Z()")
        assert "offset 2" in str(exc.value)


class TestRender:
    def test_canonical_spacing(self):
        assert render(parse("(1+L)*Z(-2){3}")) == "(1 + L) * Z(-2){3}"

    def test_twist_of_product(self):
        assert render(Twist(Mul(Leaf("L"), Leaf("Jac")), 2)) == "(L * Jac){2}"

    @settings(max_examples=500, deadline=None)
    @given(expressions)
    def test_round_trip(self, e):
        assert parse(render(e)) == e


class TestEvaluate:
    def test_projective_space(self):
        assert evaluate("P(2)") == projective_space(2)

    def test_twist(self):
        assert evaluate("L{2}") == lefschetz(3)

    def test_linear_combination(self):
        x = evaluate("Sym(2){-4} + 3*P(1)", g=0)
        assert x.terms == {Term(sym_atom(2), -4): 1, Term(UNIT, 0): 3, Term(UNIT, 1): 3}

    def test_cancellation(self):
        assert not evaluate("2*L + -2*L")

    def test_jac_needs_genus(self):
        with pytest.raises(UnboundGenus):
            evaluate("Jac * BGm", window=(0, 10))

    def test_product_matches_windowed_product(self):
        expected = product_in_window([zeta_factor(1), zeta_factor(2)], (0, 12))
        assert evaluate("Z(1) * Z(2)", window=(0, 12)) == expected

    def test_matches_conjectural_motive(self):
        assert evaluate("Jac*BGm", g=1, window=(0, 10)) == conj_motive(1, 1, (0, 10))

    def test_dual_of_zeta(self):
        """dual(Z(1)) = Z(-2) on a window open above"""
        agreement = agree_on(
            evaluate("dual(Z(1))", window=(-10, None)),
            evaluate("Z(-2)", window=(-10, None)),
        )
        assert agreement.equal
        assert agreement.compared == 11


class TestRealize:
    def test_compact_bgm(self, p1_f2):
        series = realize("BGmC", p1_f2, 5)
        assert series == LaurentQ.geometric(start=1, step=1, order=5)
        assert series.order == 5

    def test_compact_zeta(self, p1_f2):
        """Z(C, 1{-2}) realises to sum |C^{(j)}| q^-2j"""
        series = realize("Z(-2)", p1_f2, 10)
        assert series.coefficient(4) == 7
        assert series.coefficient(10) == 63
        assert series.coefficient(3) == 0

    def test_rank_one_bun(self, ell_f2):
        """[Jac][BG_m] realises to |Jac| / (q - 1)"""
        series = realize("Jac * BGmC", ell_f2, 6)
        assert dict(series.items()) == {e: 3 for e in range(1, 7)}

    def test_homological_class_refused(self, p1_f2):
        """Z(C, 1{1}) has terms of unbounded vd and no point count"""
        with pytest.raises(WindowUnboundedMismatch) as exc:
            realize("Z(1)", p1_f2, 5)
        assert exc.value.detail["vd_support"] == str(zeta_support(1))

    def test_homological_factor_refused(self, ell_f2):
        with pytest.raises(WindowUnboundedMismatch):
            realize("Jac * BGm", ell_f2, 5)

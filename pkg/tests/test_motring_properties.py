"""
Property tests for the class ring over random finite classes.
"""
from hypothesis import given, settings, strategies as st

from config.settings import CURVE_DIR
from curve_arith.profiles import load_profile
from motring.classes import Atom, MotClass, Term, agree_on, dual, restrict, twist
from motring.realize import count_realize, reduce_large_sym
from motring.text import parse_class, render_class

# one curve with a rational point per genus
CURVES = {c.genus: c for c in (load_profile(CURVE_DIR / f"{n}.json") for n in ("p1_f2", "ell_f2", "g2_f2"))}

PROPERTY_SETTINGS = settings(max_examples=500, deadline=None)

atoms = st.builds(
    Atom,
    st.integers(min_value=0, max_value=2),
    st.lists(st.integers(min_value=0, max_value=4), max_size=2).map(tuple),
)
terms = st.builds(Term, atoms, st.integers(min_value=-4, max_value=4))
genera = st.sampled_from(sorted(CURVES))


def classes(g: int):
    coefficients = st.integers(min_value=-5, max_value=5)
    return st.dictionaries(terms, coefficients, max_size=4).map(lambda d: MotClass.finite(d, genus=g))


@st.composite
def class_triples(draw):
    g = draw(genera)
    return g, draw(classes(g)), draw(classes(g)), draw(classes(g))


class TestRingLaws:
    @PROPERTY_SETTINGS
    @given(class_triples())
    def test_commutative(self, triple):
        _, x, y, _ = triple
        assert x * y == y * x
        assert x + y == y + x

    @PROPERTY_SETTINGS
    @given(class_triples())
    def test_associative(self, triple):
        _, x, y, z = triple
        assert (x * y) * z == x * (y * z)

    @PROPERTY_SETTINGS
    @given(class_triples())
    def test_distributive(self, triple):
        _, x, y, z = triple
        assert x * (y + z) == x * y + x * z

    @PROPERTY_SETTINGS
    @given(class_triples())
    def test_additive_inverse(self, triple):
        _, x, _, _ = triple
        assert not (x - x)


class TestDuality:
    @PROPERTY_SETTINGS
    @given(class_triples())
    def test_involution(self, triple):
        _, x, _, _ = triple
        assert dual(dual(x)) == x

    @PROPERTY_SETTINGS
    @given(class_triples())
    def test_multiplicative(self, triple):
        _, x, y, _ = triple
        assert dual(x * y) == dual(x) * dual(y)


class TestRealisation:
    @PROPERTY_SETTINGS
    @given(class_triples())
    def test_ring_morphism(self, triple):
        """Counting is additive and multiplicative on finite classes"""
        g, x, y, _ = triple
        c = CURVES[g]
        assert count_realize(x * y, c) == count_realize(x, c) * count_realize(y, c)
        assert count_realize(x + y, c) == count_realize(x, c) + count_realize(y, c)

    @PROPERTY_SETTINGS
    @given(class_triples(), st.integers(min_value=-5, max_value=5))
    def test_twist_is_q_power(self, triple, k):
        g, x, _, _ = triple
        c = CURVES[g]
        assert count_realize(twist(x, k), c) == count_realize(x, c).shift(k)

    @PROPERTY_SETTINGS
    @given(class_triples())
    def test_reduction_preserves_counts(self, triple):
        """Coefficients move between powers of q; the value at q is kept"""
        g, x, _, _ = triple
        c = CURVES[g]
        reduced = reduce_large_sym(x)
        assert count_realize(reduced, c).evaluate(c.q) == count_realize(x, c).evaluate(c.q)
        threshold = max(1, 2 * g - 1)
        assert all(j < threshold for t, _ in reduced for j in t.atom.syms)


class TestWindows:
    @PROPERTY_SETTINGS
    @given(class_triples(), st.integers(min_value=-12, max_value=12), st.integers(min_value=-12, max_value=12))
    def test_lower_cut_product_is_sound(self, triple, a, b):
        """Every certified level of a cut product matches the full product"""
        _, x, y, _ = triple
        cut = restrict(x, vd_window=(a, None)) * restrict(y, vd_window=(b, None))
        assert agree_on(cut, x * y, allow_empty=True).equal

    @PROPERTY_SETTINGS
    @given(class_triples(), st.integers(min_value=-12, max_value=12), st.integers(min_value=-12, max_value=12))
    def test_upper_cut_product_is_sound(self, triple, a, b):
        _, x, y, _ = triple
        cut = restrict(x, vd_window=(None, a)) * restrict(y, vd_window=(None, b))
        assert agree_on(cut, x * y, allow_empty=True).equal

    @PROPERTY_SETTINGS
    @given(class_triples(), st.integers(min_value=-12, max_value=12))
    def test_cut_sum_is_sound(self, triple, a):
        _, x, y, _ = triple
        cut = restrict(x, twist_window=(a, None)) + y
        assert agree_on(cut, x + y, allow_empty=True).equal


class TestText:
    @PROPERTY_SETTINGS
    @given(class_triples())
    def test_render_parse_round_trip(self, triple):
        g, x, _, _ = triple
        assert parse_class(render_class(x), genus=g) == x

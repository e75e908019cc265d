"""
Unit tests for the symmetric algebra and Weyl-type star products.
"""
from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given
from hypothesis import strategies as st

from quantization.domain.errors import DimensionMismatch
from quantization.domain.multiindex import MultiIndex, multiindices_up_to
from quantization.domain.scalars import PARAMETER, RationalFunction, gaussian
from quantization.domain.symmetric import (
    SymElement,
    evaluate_character,
    expand_orders,
    reassemble_orders,
    sym_mul,
)
from quantization.domain.weyl import (
    BilinearForm,
    first_order_difference,
    laplacian,
    leibniz_check,
    mu_left,
    order_chain_check,
    ordering_transform,
    p12,
    p13,
    p23,
    p_lambda,
    poisson_bracket_const,
    star_commutator,
    tensor_of,
    triple_tensor_of,
    weyl_order,
    weyl_star,
)

X = SymElement.generator(2, 0)
Y = SymElement.generator(2, 1)
ONE = SymElement.one(2)
Z = RationalFunction.parameter()


@st.composite
def sym_elements(draw, dim=2, max_degree=2):
    indices = list(multiindices_up_to(dim, max_degree))
    picked = draw(st.lists(st.sampled_from(indices), min_size=1, max_size=3))
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(picked), max_size=len(picked)))
    return SymElement(dim, list(zip(picked, coeffs)))


gaussian_rationals = st.builds(
    gaussian,
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
)


@st.composite
def weyl_triples(draw, max_dim=4, max_degree=6):
    """A random form with Gaussian-rational entries and three elements of the same dimension."""
    dim = draw(st.integers(1, max_dim))
    matrix = draw(st.lists(st.lists(gaussian_rationals, min_size=dim, max_size=dim), min_size=dim, max_size=dim))
    elements = [draw(sym_elements(dim=dim, max_degree=max_degree)) for _ in range(3)]
    return BilinearForm(matrix), *elements


class SymElementTest(SimpleTestCase):
    """Tests for the commutative product on Sym(V)."""

    def test_monomial_product(self):
        """Test that e^P e^Q = e^{P+Q}."""
        product = sym_mul(SymElement.monomial((1, 2)), SymElement.monomial((3, 0)))
        self.assertEqual(product, SymElement.monomial((4, 2)))

    def test_unit(self):
        """Test that 1 is the unit."""
        self.assertEqual(sym_mul(ONE, X + Y), X + Y)

    def test_difference_of_squares(self):
        """Test (x + y)(x - y) = x^2 - y^2."""
        self.assertEqual((X + Y) * (X - Y), SymElement.monomial((2, 0)) - SymElement.monomial((0, 2)))

    def test_dimension_mismatch(self):
        """Test that elements of different dimensions do not combine."""
        with self.assertRaises(DimensionMismatch):
            X + SymElement.generator(3, 0)

    def test_character(self):
        """Test evaluation of characters."""
        phi = [Fraction(2), Fraction(3)]
        self.assertEqual(evaluate_character(phi, ONE), RationalFunction.constant(1))
        self.assertEqual(evaluate_character(phi, Y), RationalFunction.constant(3))
        self.assertEqual(evaluate_character(phi, X * Y + X), RationalFunction.constant(8))

    @given(sym_elements(max_degree=3), sym_elements(max_degree=3), st.lists(gaussian_rationals, min_size=2, max_size=2))
    def test_character_is_multiplicative(self, a, b, phi):
        """Test that delta_phi(ab) = delta_phi(a) delta_phi(b)."""
        self.assertEqual(
            evaluate_character(phi, sym_mul(a, b)),
            evaluate_character(phi, a) * evaluate_character(phi, b),
        )


class PLambdaTest(SimpleTestCase):
    """Tests for the pairing operator."""

    def setUp(self):
        self.form = BilinearForm([[1, 2], [3, 4]])

    def test_unit_is_annihilated(self):
        """Test that P_Lambda(1 (x) w) = 0."""
        self.assertEqual(p_lambda(self.form, ONE, X * Y), {})

    def test_degree_one(self):
        """Test that P_Lambda(e_i (x) e_j) = Lambda_ij 1 (x) 1."""
        zero = MultiIndex.zero(2)
        self.assertEqual(p_lambda(self.form, X, Y), {(zero, zero): RationalFunction.constant(2)})

    def test_leibniz_factor(self):
        """Test that P_Lambda(x^2 (x) y) = 2 Lambda(x, y) x (x) 1."""
        tensor = p_lambda(self.form, X * X, Y)
        self.assertEqual(tensor, {(MultiIndex((1, 0)), MultiIndex((0, 0))): RationalFunction.constant(4)})

    def test_tensor_of(self):
        """Test the tensor product of two elements."""
        self.assertEqual(len(tensor_of(X + Y, X)), 2)


class WeylStarTest(SimpleTestCase):
    """Tests for the star product mu o exp(z P_Lambda)."""

    def setUp(self):
        self.form = BilinearForm.symplectic(2)

    def test_degree_one_product(self):
        """Test that x * y = xy + z."""
        expected = X * Y + SymElement.constant(2, Z)
        self.assertEqual(weyl_star(self.form, X, Y), expected)

    def test_unit(self):
        """Test that 1 * f = f = f * 1."""
        f = X * X * Y + Y
        self.assertEqual(weyl_star(self.form, ONE, f), f)
        self.assertEqual(weyl_star(self.form, f, ONE), f)

    def test_commutator(self):
        """Test that x * y - y * x = 2z."""
        self.assertEqual(star_commutator(self.form, X, Y), SymElement.constant(2, Z * 2))

    def test_orders_of_squares(self):
        """Test that x^2 * y^2 has orders 0..2 with total degree 4 - 2r."""
        orders = expand_orders(weyl_star(self.form, X * X, Y * Y))
        self.assertEqual(len(orders), 3)
        for r, part in enumerate(orders):
            self.assertEqual(part.grades(), [4 - 2 * r])
        self.assertEqual(orders[2], SymElement.constant(2, 2))

    def test_orders_match_bidifferential_operators(self):
        """Test that C_r(a, b) = mu(P_Lambda^r (a (x) b)) / r! reproduces the z-expansion."""
        a, b = X * X * Y, X * Y * Y
        orders = expand_orders(weyl_star(self.form, a, b))
        for r, part in enumerate(orders):
            self.assertEqual(weyl_order(self.form, r, a, b), part)
        self.assertFalse(weyl_order(self.form, len(orders), a, b).terms)

    def test_expand_orders_read_off(self):
        """Test that xy + z splits into [xy, 1]."""
        orders = expand_orders(X * Y + SymElement.constant(2, Z))
        self.assertEqual(orders, [X * Y, ONE])

    def test_expand_orders_parameter_free(self):
        """Test that a parameter-free element is its own order zero."""
        self.assertEqual(expand_orders(X + Y), [X + Y])

    def test_reassemble_orders(self):
        """Test that orders reassemble into the product."""
        product = weyl_star(self.form, X * X * Y, X * Y * Y)
        self.assertEqual(reassemble_orders(expand_orders(product)), product)

    def test_form_dimension_mismatch(self):
        """Test that the form must match the element dimension."""
        with self.assertRaises(DimensionMismatch):
            weyl_star(BilinearForm.symplectic(4), X, Y)

    def test_odd_symplectic_dimension_fails(self):
        """Test that the standard symplectic form needs even dimension."""
        with self.assertRaises(ValueError):
            BilinearForm.symplectic(3)

    @given(weyl_triples())
    def test_associativity(self, triple):
        """Test associativity for random Gaussian-rational forms in dimension <= 4 and degree <= 6."""
        form, a, b, c = triple
        self.assertEqual(
            weyl_star(form, weyl_star(form, a, b), c),
            weyl_star(form, a, weyl_star(form, b, c)),
        )

    @given(sym_elements(), sym_elements(), sym_elements())
    def test_order_chain(self, a, b, c):
        """Test order-by-order associativity of the bidifferential operators."""
        rows = order_chain_check(self.form, a, b, c, 4)
        self.assertTrue(all(ok for _, ok in rows))

    def test_symmetric_part_is_equivalent(self):
        """Test that symmetric forms give commutative products."""
        form = BilinearForm([[1, 2], [2, 5]])
        self.assertEqual(weyl_star(form, X * Y, X), weyl_star(form, X, X * Y))


class PoissonBracketTest(SimpleTestCase):
    """Tests for the constant Poisson bracket."""

    def setUp(self):
        self.form = BilinearForm([[1, 2], [3, 4]])

    def test_degree_one(self):
        """Test that {e_i, e_j} = Lambda_ij - Lambda_ji."""
        self.assertEqual(poisson_bracket_const(self.form, X, Y), SymElement.constant(2, -1))

    def test_unit(self):
        """Test that {f, 1} = 0."""
        self.assertTrue(poisson_bracket_const(self.form, X * Y, ONE).is_zero())

    def test_leibniz(self):
        """Test that {x^2, y} = 2x {x, y}."""
        bracket = poisson_bracket_const(self.form, X * X, Y)
        self.assertEqual(bracket, X.scale(-2))

    def test_first_order_of_commutator(self):
        """Test that the first order of the star commutator is the bracket."""
        a, b = X * X * Y, Y * Y + X
        self.assertEqual(first_order_difference(self.form, a, b), poisson_bracket_const(self.form, a, b))


class TripleOperatorTest(SimpleTestCase):
    """Tests for P12, P13, P23 on Sym(V) (x) Sym(V) (x) Sym(V)."""

    def setUp(self):
        self.form = BilinearForm.symplectic(2)
        self.zero = MultiIndex.zero(2)

    def test_factors_hit(self):
        """Test which pair of factors each operator contracts."""
        unit = {(self.zero, self.zero, self.zero): RationalFunction.constant(1)}
        self.assertEqual(p12(self.form, triple_tensor_of(X, Y, ONE)), unit)
        self.assertEqual(p13(self.form, triple_tensor_of(X, ONE, Y)), unit)
        self.assertEqual(p23(self.form, triple_tensor_of(ONE, X, Y)), unit)
        self.assertEqual(p23(self.form, triple_tensor_of(X, Y, ONE)), {})

    def test_mu_left(self):
        """Test that mu (x) id multiplies the first two factors."""
        tensor = triple_tensor_of(X, Y, X)
        expected = {(MultiIndex((1, 1)), MultiIndex((1, 0))): RationalFunction.constant(1)}
        self.assertEqual(mu_left(tensor), expected)

    @given(sym_elements(), sym_elements(), sym_elements())
    def test_commutation_and_leibniz_rules(self, a, b, c):
        """Test pairwise commutation and both Leibniz rules for a non-symmetric form."""
        form = BilinearForm([[1, gaussian(2, 1)], [-1, 3]])
        rows = leibniz_check(form, a, b, c)
        self.assertEqual(len(rows), 5)
        self.assertTrue(all(ok for _, ok in rows), rows)

    def test_dimension_mismatch(self):
        """Test that all three factors share one dimension."""
        with self.assertRaises(DimensionMismatch):
            triple_tensor_of(X, Y, SymElement.generator(3, 0))


class OrderingTest(SimpleTestCase):
    """Tests for standard ordering and the change of ordering."""

    def setUp(self):
        self.weyl = BilinearForm.symplectic(2)
        self.standard = BilinearForm.standard(2)

    def test_standard_products(self):
        """Test that x * y = xy + 2z and y * x = xy."""
        self.assertEqual(weyl_star(self.standard, X, Y), X * Y + SymElement.constant(2, Z * 2))
        self.assertEqual(weyl_star(self.standard, Y, X), X * Y)

    def test_same_bracket_as_weyl(self):
        """Test that the antisymmetric part is the symplectic form."""
        self.assertEqual(self.standard.antisymmetric_part(), self.weyl)
        self.assertEqual(self.weyl + self.standard.symmetric_part(), self.standard)
        self.assertEqual(star_commutator(self.standard, X, Y), star_commutator(self.weyl, X, Y))

    def test_laplacian(self):
        """Test Delta_S(xy) = 2 and Delta_S(x^2) = 0 for the symmetric part of the standard form."""
        symmetric = self.standard.symmetric_part()
        self.assertEqual(laplacian(symmetric, X * Y), SymElement.constant(2, 2))
        self.assertFalse(laplacian(symmetric, X * X))

    @given(sym_elements(max_degree=3), sym_elements(max_degree=3))
    def test_ordering_transform_intertwines(self, a, b):
        """Test T(a *_weyl b) = T(a) *_standard T(b) with T = exp(z/2 Delta_S)."""
        symmetric = self.standard.symmetric_part()
        self.assertEqual(
            ordering_transform(symmetric, weyl_star(self.weyl, a, b)),
            weyl_star(self.standard, ordering_transform(symmetric, a), ordering_transform(symmetric, b)),
        )

    def test_transform_needs_symmetric_form(self):
        """Test that a non-symmetric form is rejected."""
        with self.assertRaises(ValueError):
            ordering_transform(self.weyl, X)

    def test_odd_dimension_fails(self):
        """Test that standard ordering needs pairs of coordinates."""
        with self.assertRaises(ValueError):
            BilinearForm.standard(3)

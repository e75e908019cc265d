"""
Unit tests for the Sym_R seminorms.
"""
from fractions import Fraction
from math import sqrt

from django.test import SimpleTestCase
from hypothesis import given
from hypothesis import strategies as st

from quantization.domain.errors import DimensionMismatch, NotPolynomialInParameter
from quantization.domain.multiindex import multiindices_up_to
from quantization.domain.scalars import PARAMETER, RationalFunction, gaussian
from quantization.domain.seminorms import (
    SeminormSpec,
    SeminormValue,
    rational_modulus,
    seminorm_pR,
    seminorm_pR_sup,
    weighted_l1,
)
from quantization.domain.symmetric import SymElement, sym_mul

X = SymElement.generator(2, 0)
Y = SymElement.generator(2, 1)


@st.composite
def integer_elements(draw, dim=2, max_degree=3):
    indices = list(multiindices_up_to(dim, max_degree))
    picked = draw(st.lists(st.sampled_from(indices), min_size=1, max_size=4, unique=True))
    coeffs = draw(st.lists(st.integers(-5, 5).filter(bool), min_size=len(picked), max_size=len(picked)))
    return SymElement(dim, list(zip(picked, coeffs)))


class SeminormSpecTest(SimpleTestCase):
    """Tests for seminorm parameters."""

    def test_weights_must_be_positive(self):
        """Test that zero weights are rejected."""
        with self.assertRaises(ValueError):
            SeminormSpec((Fraction(1), Fraction(0)), Fraction(1))

    def test_with_exponent(self):
        """Test that changing R keeps the weights."""
        spec = SeminormSpec.uniform(2, 3, 1).with_exponent(Fraction(1, 2))
        self.assertEqual(spec.weights, (Fraction(3), Fraction(3)))
        self.assertEqual(spec.R, Fraction(1, 2))


class SeminormPRTest(SimpleTestCase):
    """Tests for p_R and its sup variant."""

    def test_unit(self):
        """Test that p_R(1) = 1 for any weights and R."""
        value = seminorm_pR(SeminormSpec.uniform(2, 7, Fraction(3, 2)), SymElement.one(2))
        self.assertEqual(value.value, 1.0)
        self.assertEqual(value.square(), Fraction(1))

    def test_monomial_at_half(self):
        """Test that p_{1/2}(e^P) = rho^|P| sqrt(|P|!) with weights rho."""
        spec = SeminormSpec.uniform(2, Fraction(1, 2), Fraction(1, 2))
        value = seminorm_pR(spec, SymElement.monomial((2, 1)))
        self.assertAlmostEqual(value.value, sqrt(6) / 8)
        self.assertIsNone(value.exact)
        self.assertEqual(value.exact_square, Fraction(3, 32))

    def test_homogeneous_element(self):
        """Test that p_R(v) = n!^R p^n(v) on a homogeneous element."""
        spec = SeminormSpec((Fraction(1), Fraction(2)), Fraction(1))
        element = (X * X).scale(3) - (X * Y).scale(2)
        self.assertEqual(seminorm_pR(spec, element).exact, Fraction(14))

    def test_sum_over_grades(self):
        """Test that grades add up."""
        spec = SeminormSpec.uniform(2, 2, 1)
        self.assertEqual(seminorm_pR(spec, SymElement.one(2) + X * Y).exact, Fraction(9))

    def test_sup_over_grades(self):
        """Test that p_R_sup(e^0 + e^P) = max(1, |P|!^R w^P)."""
        spec = SeminormSpec.uniform(2, 2, 1)
        self.assertEqual(seminorm_pR_sup(spec, SymElement.one(2) + X * Y).exact, Fraction(8))
        small = SeminormSpec.uniform(2, Fraction(1, 4), 1)
        self.assertEqual(seminorm_pR_sup(small, SymElement.one(2) + X * Y).exact, Fraction(1))

    def test_single_monomial_sup_equals_sum(self):
        """Test that both seminorms agree on one monomial."""
        spec = SeminormSpec.uniform(2, 3, Fraction(1, 2))
        element = SymElement.monomial((1, 2), 5)
        self.assertAlmostEqual(seminorm_pR(spec, element).value, seminorm_pR_sup(spec, element).value)

    def test_gaussian_modulus(self):
        """Test that |3 + 4i| = 5 is kept exact."""
        element = SymElement.constant(2, gaussian(3, 4))
        self.assertEqual(seminorm_pR(SeminormSpec.uniform(2, 1, 1), element).exact, Fraction(5))

    def test_parameter_dependent_needs_value(self):
        """Test that parameter-dependent coefficients need a specialization."""
        element = X.scale(PARAMETER + 1)
        spec = SeminormSpec.uniform(2, 1, 1)
        with self.assertRaises(NotPolynomialInParameter):
            seminorm_pR(spec, element)
        self.assertEqual(seminorm_pR(spec, element, param_value=1).exact, Fraction(2))
        self.assertAlmostEqual(seminorm_pR(spec, element, param_value=0.5).value, 1.5)

    def test_dimension_mismatch(self):
        """Test that the number of weights must match the dimension."""
        with self.assertRaises(DimensionMismatch):
            seminorm_pR(SeminormSpec.uniform(3, 1, 1), X)

    def test_larger_R_dominates(self):
        """Test that p_R grows with R."""
        element = SymElement.monomial((3, 1), RationalFunction.constant(Fraction(1, 3))) + X
        spec = SeminormSpec.uniform(2, Fraction(1, 2), Fraction(1, 2))
        self.assertTrue(seminorm_pR(spec, element) <= seminorm_pR(spec.with_exponent(1), element))

    @given(integer_elements(), integer_elements(), st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=4))
    def test_p0_is_submultiplicative(self, a, b, weight):
        """Test that p_0(ab) <= p_0(a) p_0(b) for the symmetric product."""
        spec = SeminormSpec.uniform(2, weight, 0)
        product = seminorm_pR(spec, sym_mul(a, b)).exact
        self.assertIsNotNone(product)
        self.assertLessEqual(product, seminorm_pR(spec, a).exact * seminorm_pR(spec, b).exact)

    def test_p0_is_multiplicative_on_monomials(self):
        """Test equality p_0(e^P e^Q) = p_0(e^P) p_0(e^Q) without cancellation."""
        spec = SeminormSpec((Fraction(2), Fraction(1, 3)), 0)
        a, b = SymElement.monomial((2, 1), 3), SymElement.monomial((1, 2), -2)
        self.assertEqual(seminorm_pR(spec, sym_mul(a, b)).exact, seminorm_pR(spec, a).exact * seminorm_pR(spec, b).exact)


class HelpersTest(SimpleTestCase):
    """Tests for small seminorm helpers."""

    def test_rational_modulus(self):
        """Test exact square roots."""
        self.assertEqual(rational_modulus(Fraction(9, 4)), Fraction(3, 2))
        self.assertIsNone(rational_modulus(Fraction(2)))

    def test_weighted_l1(self):
        """Test the weighted l1 seminorm on coordinates."""
        self.assertAlmostEqual(weighted_l1((1, 2), (3, -4)), 11.0)

    def test_seminorm_value_comparison(self):
        """Test comparison through exact squares."""
        self.assertTrue(SeminormValue(value=1.414, exact_square=Fraction(2)) <= SeminormValue(value=1.5, exact=Fraction(3, 2)))

"""
Unit tests for the universal enveloping algebra and the Gutt star product.
"""
from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given
from hypothesis import strategies as st

from quantization.domain.enveloping import (
    UEAElement,
    enveloping,
    pbw_desymmetrize,
    pbw_symmetrize,
    uea_mul,
)
from quantization.domain.errors import DimensionMismatch, NotNilpotent
from quantization.domain.gutt import (
    at_parameter,
    bch_exponent,
    counit_check,
    exp_gutt_bch_check,
    first_order_check,
    functoriality_check,
    grading_check,
    gutt_product,
    gutt_star,
    heisenberg_exp_product,
    morphism_at_one,
)
from quantization.domain.lie import abelian, heisenberg, heisenberg_quotient, so3, solvable2
from quantization.domain.multiindex import MultiIndex, multiindices_up_to
from quantization.domain.scalars import PARAMETER, RationalFunction
from quantization.domain.symmetric import SymElement, sym_mul

P = SymElement.generator(3, 0)
Q = SymElement.generator(3, 1)
E = SymElement.generator(3, 2)
HALF = RationalFunction.constant(Fraction(1, 2))


@st.composite
def sym_elements(draw, dim=3, max_degree=2):
    indices = list(multiindices_up_to(dim, max_degree))
    picked = draw(st.lists(st.sampled_from(indices), min_size=1, max_size=3))
    coeffs = draw(st.lists(st.integers(-3, 3).filter(bool), min_size=len(picked), max_size=len(picked)))
    return SymElement(dim, list(zip(picked, coeffs)))


class NormalOrderingTest(SimpleTestCase):
    """Tests for PBW normal ordering."""

    def test_ordered_product(self):
        """Test that e_i e_i^k = e_i^{k+1}."""
        uea = enveloping(heisenberg())
        self.assertEqual(uea.times_generator(MultiIndex((2, 0, 0)), 0), {MultiIndex((3, 0, 0)): RationalFunction.constant(1)})

    def test_heisenberg_rewrite(self):
        """Test that Q P = P Q - E."""
        form = enveloping(heisenberg()).normal_form([1, 0])
        self.assertEqual(
            form,
            {MultiIndex((1, 1, 0)): RationalFunction.constant(1), MultiIndex((0, 0, 1)): RationalFunction.constant(-1)},
        )

    def test_so3_rewrite(self):
        """Test that e2 e1 = e1 e2 - e3 in so(3)."""
        form = enveloping(so3()).normal_form([1, 0])
        self.assertEqual(
            form,
            {MultiIndex((1, 1, 0)): RationalFunction.constant(1), MultiIndex((0, 0, 1)): RationalFunction.constant(-1)},
        )

    def test_mul_is_associative(self):
        """Test associativity of the enveloping algebra product on so(3)."""
        lie = so3()
        a = UEAElement.monomial((0, 1, 1))
        b = UEAElement.monomial((1, 0, 0)) + UEAElement.monomial((0, 0, 2))
        c = UEAElement.monomial((0, 2, 0))
        self.assertEqual(uea_mul(lie, uea_mul(lie, a, b), c), uea_mul(lie, a, uea_mul(lie, b, c)))


class SymmetrizationTest(SimpleTestCase):
    """Tests for the PBW isomorphism."""

    def test_degree_one_is_fixed(self):
        """Test that vectors are their own symmetrization."""
        self.assertEqual(pbw_symmetrize(heisenberg(), P + E).terms, (P + E).terms)

    def test_powers_are_fixed(self):
        """Test that e_i^n symmetrizes to itself."""
        self.assertEqual(pbw_symmetrize(so3(), SymElement.monomial((0, 3, 0))).terms, {MultiIndex((0, 3, 0)): RationalFunction.constant(1)})

    def test_heisenberg_symmetrization(self):
        """Test that q(PQ) = P Q - E/2."""
        result = pbw_symmetrize(heisenberg(), P * Q)
        self.assertEqual(result.terms, {MultiIndex((1, 1, 0)): RationalFunction.constant(1), MultiIndex((0, 0, 1)): -HALF})

    def test_heisenberg_desymmetrization(self):
        """Test that q^{-1}(P Q) = PQ + E/2."""
        result = pbw_desymmetrize(heisenberg(), UEAElement.monomial((1, 1, 0)))
        self.assertEqual(result, P * Q + E.scale(HALF))

    def test_unit(self):
        """Test that q^{-1}(1) = 1."""
        self.assertEqual(pbw_desymmetrize(so3(), UEAElement.one(3)), SymElement.one(3))

    @given(sym_elements())
    def test_round_trip_so3(self, a):
        """Test that desymmetrization inverts symmetrization."""
        self.assertEqual(pbw_desymmetrize(so3(), pbw_symmetrize(so3(), a)), a)

    def test_dimension_mismatch(self):
        """Test that elements must match the algebra dimension."""
        with self.assertRaises(DimensionMismatch):
            pbw_symmetrize(heisenberg(), SymElement.generator(2, 0))


class GuttStarTest(SimpleTestCase):
    """Tests for the Gutt star product."""

    def test_unit(self):
        """Test that x * 1 = x."""
        self.assertEqual(gutt_star(so3(), P, SymElement.one(3)), P)

    def test_degree_one(self):
        """Test that xi * eta = xi eta + (z/2) [xi, eta]."""
        self.assertEqual(gutt_star(heisenberg(), P, Q), P * Q + E.scale(HALF * PARAMETER))

    def test_heisenberg_commutator(self):
        """Test that P * Q - Q * P = zE."""
        lie = heisenberg()
        self.assertEqual(gutt_star(lie, P, Q) - gutt_star(lie, Q, P), E.scale(PARAMETER))

    def test_abelian_is_commutative_product(self):
        """Test that the abelian Gutt product is the symmetric product."""
        a = SymElement.monomial((1, 2))
        b = SymElement.monomial((2, 1)) + SymElement.generator(2, 0)
        self.assertEqual(gutt_star(abelian(2), a, b), sym_mul(a, b))

    def test_heisenberg_closed_form(self):
        """Test the closed form of P^k * Q^l."""
        lie = heisenberg()
        for k in range(4):
            for l in range(4):
                expected = gutt_star(lie, SymElement.monomial((k, 0, 0)), SymElement.monomial((0, l, 0)))
                self.assertEqual(heisenberg_exp_product(k, l), expected, (k, l))

    def test_at_parameter(self):
        """Test specialization of z."""
        product = at_parameter(gutt_star(heisenberg(), P, Q), 2)
        self.assertEqual(product, P * Q + E)

    @given(sym_elements(), sym_elements(), sym_elements())
    def test_associativity_so3(self, a, b, c):
        """Test associativity on so(3)."""
        lie = so3()
        self.assertEqual(gutt_star(lie, gutt_star(lie, a, b), c), gutt_star(lie, a, gutt_star(lie, b, c)))

    @given(sym_elements(dim=2), sym_elements(dim=2))
    def test_morphism_at_one(self, a, b):
        """Test that q(a *_1 b) = q(a) q(b) on the solvable algebra."""
        self.assertTrue(morphism_at_one(solvable2(), a, b))

    @given(sym_elements(), sym_elements())
    def test_first_order_is_poisson(self, a, b):
        """Test that the first order of the commutator is the linear Poisson bracket."""
        self.assertTrue(first_order_check(so3(), a, b))

    @given(sym_elements(), sym_elements())
    def test_counit(self, a, b):
        """Test that the counit is multiplicative."""
        self.assertTrue(counit_check(heisenberg(), a, b))

    def test_grading(self):
        """Test that degree d terms carry z^{k+l-d}."""
        lie = so3()
        a = SymElement.monomial((2, 0, 0)) + SymElement.monomial((0, 1, 1))
        b = SymElement.monomial((0, 2, 1))
        self.assertTrue(grading_check(lie, a, b))

    def test_grading_needs_homogeneous_factors(self):
        """Test that inhomogeneous factors are rejected."""
        with self.assertRaises(ValueError):
            grading_check(so3(), P + SymElement.one(3), Q)

    def test_functoriality(self):
        """Test that the quotient by E intertwines the Gutt products up to degree 4."""
        morphism = heisenberg_quotient()
        monomials = [SymElement.monomial(index) for index in multiindices_up_to(3, 2)]
        for a in monomials:
            for b in monomials:
                self.assertTrue(functoriality_check(morphism, a, b), (a, b))

    def test_product_cache_is_bounded(self):
        """Test that per-structure products are shared and held in bounded caches."""
        lie = so3()
        self.assertIs(gutt_product(lie), gutt_product(lie))
        self.assertIs(gutt_product(lie).uea, enveloping(lie))
        self.assertEqual(gutt_product.cache_info().maxsize, 16)
        self.assertEqual(enveloping.cache_info().maxsize, 16)


class ExpBCHTest(SimpleTestCase):
    """Tests for exp(xi) * exp(eta) = exp((1/z) BCH(z xi, z eta))."""

    def test_abelian(self):
        """Test that both sides are the exponential of xi + eta."""
        result = exp_gutt_bch_check(abelian(2), (1, 2), (3, 1), 4)
        self.assertTrue(result.ok)
        self.assertEqual(result.exponent, SymElement.vector([RationalFunction.constant(4), RationalFunction.constant(3)]))

    def test_heisenberg(self):
        """Test the identity on the Heisenberg algebra up to degree 4."""
        result = exp_gutt_bch_check(heisenberg(), (1, 0, 0), (0, 1, 0), 4)
        self.assertTrue(result.ok)
        self.assertEqual(result.nilpotency_class, 2)
        self.assertEqual(result.verified_degree, 4)

    def test_heisenberg_exponent(self):
        """Test that the exponent is xi + eta + (z/2)[xi, eta]."""
        exponent = bch_exponent(heisenberg(), (1, 0, 0), (0, 1, 0), 2)
        self.assertEqual(exponent, P + Q + E.scale(HALF * PARAMETER))

    def test_not_nilpotent(self):
        """Test that non-nilpotent algebras are rejected."""
        with self.assertRaises(NotNilpotent):
            exp_gutt_bch_check(so3(), (1, 0, 0), (0, 1, 0), 3)

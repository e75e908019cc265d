"""
Unit tests for Lie structures, morphisms and asymptotic estimates.
"""
from fractions import Fraction

from django.test import SimpleTestCase

from quantization.domain.errors import DimensionMismatch, InvalidLieStructure, UnknownKind
from quantization.domain.lie import (
    LieMorphism,
    LieStructure,
    abelian,
    ae_constant,
    ae_estimate,
    bracketings,
    catalog_structure,
    heisenberg,
    heisenberg_quotient,
    is_nilpotent,
    jacobi_check,
    linear_poisson_bracket,
    lower_central_series,
    nilpotency_class,
    partial_derivative,
    so3,
    solvable2,
)
from quantization.domain.scalars import RationalFunction
from quantization.domain.symmetric import SymElement

NOT_JACOBI = {(0, 1): (0, 0, 1), (1, 2): (1, 0, 0), (0, 2): (0, 0, -1)}


def _vector(*coords):
    return [RationalFunction.constant(c) for c in coords]


class LieStructureTest(SimpleTestCase):
    """Tests for structure constants and the Jacobi identity."""

    def test_heisenberg_bracket(self):
        """Test that [P, Q] = E and E is central."""
        lie = heisenberg()
        self.assertEqual(lie.bracket(lie.basis_vector(0), lie.basis_vector(1)), _vector(0, 0, 1))
        self.assertEqual(lie.bracket(lie.basis_vector(1), lie.basis_vector(0)), _vector(0, 0, -1))
        self.assertEqual(lie.bracket(lie.basis_vector(2), lie.basis_vector(0)), _vector(0, 0, 0))

    def test_catalog_passes_jacobi(self):
        """Test that every catalog structure satisfies Jacobi."""
        for lie in (heisenberg(), so3(), solvable2(), abelian(3)):
            self.assertTrue(jacobi_check(lie).ok, lie)

    def test_so3_cyclic_brackets(self):
        """Test [e1, e2] = e3, [e2, e3] = e1, [e3, e1] = e2."""
        lie = so3()
        e1, e2, e3 = (lie.basis_vector(i) for i in range(3))
        self.assertEqual(lie.bracket(e1, e2), e3)
        self.assertEqual(lie.bracket(e2, e3), e1)
        self.assertEqual(lie.bracket(e3, e1), e2)

    def test_jacobi_violation_has_witness(self):
        """Test that a table violating Jacobi reports the triple (1, 2, 3)."""
        lie = LieStructure(3, NOT_JACOBI, validate=False)
        result = jacobi_check(lie)
        self.assertFalse(result.ok)
        self.assertEqual(result.witness, (1, 2, 3))

    def test_jacobi_violation_is_rejected(self):
        """Test that validated construction rejects the table."""
        with self.assertRaises(InvalidLieStructure) as context:
            LieStructure(3, NOT_JACOBI)
        self.assertEqual(context.exception.details["witness"], [1, 2, 3])

    def test_antisymmetry_conflict(self):
        """Test that [e_i, e_j] and [e_j, e_i] must be opposite."""
        with self.assertRaises(InvalidLieStructure):
            LieStructure(2, {(0, 1): (1, 0), (1, 0): (1, 0)})

    def test_diagonal_must_vanish(self):
        """Test that [e_i, e_i] = 0 is enforced."""
        with self.assertRaises(InvalidLieStructure):
            LieStructure(2, {(0, 0): (1, 0)})

    def test_wrong_vector_length(self):
        """Test that every bracket needs dim coefficients."""
        with self.assertRaises(InvalidLieStructure):
            LieStructure(3, {(0, 1): (0, 1)})

    def test_unknown_catalog_name(self):
        """Test that unknown names raise UnknownKind."""
        with self.assertRaises(UnknownKind):
            catalog_structure("sl2")

    def test_abelian_dimension(self):
        """Test that the abelian catalog entry honours the dimension."""
        self.assertEqual(catalog_structure("abelian", 4).dim, 4)


class NilpotencyTest(SimpleTestCase):
    """Tests for the lower central series."""

    def test_heisenberg(self):
        """Test that the Heisenberg algebra is 2-step nilpotent."""
        self.assertEqual(lower_central_series(heisenberg()), [3, 1, 0])
        self.assertEqual(nilpotency_class(heisenberg()), 2)

    def test_abelian(self):
        """Test that abelian algebras have class 1."""
        self.assertEqual(nilpotency_class(abelian(2)), 1)

    def test_not_nilpotent(self):
        """Test that so(3) and the solvable algebra are not nilpotent."""
        self.assertFalse(is_nilpotent(so3()))
        self.assertIsNone(nilpotency_class(solvable2()))


class LieMorphismTest(SimpleTestCase):
    """Tests for Lie algebra morphisms."""

    def test_quotient_preserves_brackets(self):
        """Test that killing E is a morphism onto R^2."""
        self.assertTrue(heisenberg_quotient().preserves_brackets())

    def test_non_morphism_is_rejected(self):
        """Test that a map not preserving brackets is rejected."""
        with self.assertRaises(InvalidLieStructure):
            LieMorphism(abelian(3), heisenberg(), [[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    def test_pushforward(self):
        """Test the induced map on symmetric algebras."""
        element = SymElement.monomial((1, 1, 1)) + SymElement.monomial((2, 0, 0))
        self.assertEqual(heisenberg_quotient().pushforward(element), SymElement.monomial((2, 0)))

    def test_pushforward_dimension(self):
        """Test that the element must live on the source."""
        with self.assertRaises(DimensionMismatch):
            heisenberg_quotient().pushforward(SymElement.monomial((1, 0)))


class LinearPoissonTest(SimpleTestCase):
    """Tests for the Leibniz extension of the bracket."""

    def test_degree_one(self):
        """Test that {P, Q} = E."""
        lie = heisenberg()
        bracket = linear_poisson_bracket(lie, SymElement.generator(3, 0), SymElement.generator(3, 1))
        self.assertEqual(bracket, SymElement.generator(3, 2))

    def test_leibniz_rule(self):
        """Test that {P^2, Q} = 2PE."""
        lie = heisenberg()
        bracket = linear_poisson_bracket(lie, SymElement.monomial((2, 0, 0)), SymElement.generator(3, 1))
        self.assertEqual(bracket, SymElement.monomial((1, 0, 1), 2))

    def test_partial_derivative(self):
        """Test partial derivatives of monomials."""
        self.assertEqual(partial_derivative(SymElement.monomial((3, 1)), 0), SymElement.monomial((2, 1), 3))


class AsymptoticEstimateTest(SimpleTestCase):
    """Tests for the asymptotic estimate constant."""

    def test_abelian_constant(self):
        """Test that abelian algebras have C = 1."""
        self.assertEqual(ae_constant(abelian(3), (1, 1, 1)), Fraction(1))

    def test_heisenberg_unit_weights(self):
        """Test that Heisenberg with unit weights has C = 1."""
        self.assertEqual(ae_constant(heisenberg(), (Fraction(1),) * 3), Fraction(1))

    def test_so3_unit_weights(self):
        """Test that so(3) with unit weights has C = 1."""
        self.assertEqual(ae_constant(so3(), (Fraction(1),) * 3), Fraction(1))

    def test_weighted_constant(self):
        """Test that a heavy central weight raises the constant."""
        self.assertEqual(ae_constant(heisenberg(), (Fraction(1), Fraction(1), Fraction(2))), Fraction(2))

    def test_bracketings_are_catalan(self):
        """Test the number of full bracketings of 4 leaves."""
        self.assertEqual(len(list(bracketings((0, 1, 2, 3)))), 5)

    def test_estimate_holds(self):
        """Test the estimate on exhaustive and random bracketings."""
        estimate = ae_estimate(so3(), (1, 1, 1), seed=7, random_checks=20, exhaustive_max_n=4, random_max_n=5)
        self.assertTrue(estimate.ok)
        self.assertEqual(estimate.checks, 1 + 2 + 5 + 20)
        self.assertLessEqual(estimate.worst_ratio, 1.0 + 1e-12)

    def test_estimate_is_deterministic(self):
        """Test that the same seed gives the same worst ratio."""
        first = ae_estimate(heisenberg(), (1, 2, 3), seed=3, random_checks=10)
        second = ae_estimate(heisenberg(), (1, 2, 3), seed=3, random_checks=10)
        self.assertEqual(first.to_dict(), second.to_dict())

    def test_weight_count_must_match(self):
        """Test that one weight per basis vector is required."""
        with self.assertRaises(DimensionMismatch):
            ae_estimate(heisenberg(), (1, 1))

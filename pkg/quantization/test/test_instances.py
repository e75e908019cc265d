"""
Unit tests for deterministic instance generation.
"""
from django.test import SimpleTestCase

from quantization.domain.disc import CnPolynomial, DiscElement
from quantization.domain.errors import InputError, UnknownKind
from quantization.domain.symmetric import SymElement
from quantization.infra.serialization import decode
from quantization.services.instances import InstanceCaps, build_instance, generate_instance


class InstanceGenerationTest(SimpleTestCase):
    """Tests for seeded instances."""

    def test_same_seed_same_instance(self):
        """Test that (kind, seed, caps) fixes the output."""
        for kind in ("sym-element", "cn-invariant", "disc-element"):
            self.assertEqual(generate_instance(kind, 42), generate_instance(kind, 42), kind)

    def test_seeds_differ(self):
        """Test that a handful of seeds do not all coincide."""
        outputs = {str(generate_instance("sym-element", seed)) for seed in range(5)}
        self.assertGreater(len(outputs), 1)

    def test_kinds(self):
        """Test the element type of every kind."""
        self.assertIsInstance(build_instance("sym-element", 1), SymElement)
        self.assertIsInstance(build_instance("cn-invariant", 1), CnPolynomial)
        self.assertIsInstance(build_instance("disc-element", 1), DiscElement)

    def test_cn_instances_are_invariant(self):
        """Test that generated C^{n+1} polynomials are U(1)-invariant."""
        for seed in range(10):
            self.assertTrue(build_instance("cn-invariant", seed, InstanceCaps(n=2, max_degree=3)).is_invariant)

    def test_degree_zero_is_constant(self):
        """Test that max_degree = 0 gives a constant."""
        element = build_instance("sym-element", 3, InstanceCaps(dim=3, max_degree=0))
        self.assertEqual(element.grades(), [0])

    def test_catalog_structure(self):
        """Test that lie-structure returns the named catalog entry."""
        lie = build_instance("lie-structure", 0, InstanceCaps(name="heisenberg"))
        self.assertEqual(lie.dim, 3)
        self.assertEqual(build_instance("lie-structure", 0, InstanceCaps(name="abelian", dim=4)).dim, 4)

    def test_generated_json_decodes(self):
        """Test that generated JSON is accepted by the decoders."""
        data = generate_instance("disc-element", 7, InstanceCaps(n=2))
        self.assertEqual(decode(data), build_instance("disc-element", 7, InstanceCaps(n=2)))

    def test_complex_coefficients(self):
        """Test that complex coefficients can be requested."""
        caps = InstanceCaps(terms=6, complex_coefficients=True)
        elements = [build_instance("sym-element", seed, caps) for seed in range(5)]
        self.assertTrue(any(c.conjugate() != c for element in elements for c in element.terms.values()))

    def test_unknown_kind(self):
        """Test that unknown kinds raise UnknownKind."""
        with self.assertRaises(UnknownKind):
            build_instance("matrix", 0)

    def test_caps_must_be_positive(self):
        """Test that zero caps are rejected."""
        with self.assertRaises(InputError):
            InstanceCaps(terms=0)

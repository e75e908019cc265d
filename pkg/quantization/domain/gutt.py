"""
The Gutt star product on Sym(g), pulled back from the universal enveloping algebra.

For x in Sym^k and y in Sym^l:

    x *_z y = sum_{n=0}^{k+l-1} z^n pr_{k+l-n}( q^{-1}( q(x) (.) q(y) ) )
"""
from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from quantization.domain.bch import bch_truncated, lie_substitute
from quantization.domain.enveloping import UEAElement, UniversalEnveloping, enveloping
from quantization.domain.errors import NotNilpotent, VerificationFailure
from quantization.domain.lie import LieMorphism, LieStructure, linear_poisson_bracket, nilpotency_class
from quantization.domain.multiindex import MultiIndex
from quantization.domain.scalars import ONE, PARAMETER, RationalFunction
from quantization.domain.sparse import accumulate
from quantization.domain.symmetric import SymElement, expand_orders, sym_exp

logger = logging.getLogger(__name__)


class GuttProduct:
    """Memoized monomial products e^P *_z e^Q for one Lie structure."""

    def __init__(self, lie: LieStructure):
        self.lie = lie
        self.uea: UniversalEnveloping = enveloping(lie)
        self._products: dict[tuple[MultiIndex, MultiIndex], dict] = {}

    def monomial_product(self, p: MultiIndex, q: MultiIndex) -> dict:
        cached = self._products.get((p, q))
        if cached is not None:
            return cached
        dim = self.lie.dim
        left = UEAElement._from_clean(dim, dict(self.uea.symmetrized_monomial(p)), "z")
        right = UEAElement._from_clean(dim, dict(self.uea.symmetrized_monomial(q)), "z")
        pulled_back = self.uea.desymmetrize(self.uea.mul(left, right))
        total = p.degree + q.degree
        terms: dict = {}
        for index, coeff in pulled_back.items():
            n = total - index.degree
            if total and index.degree == 0:
                raise VerificationFailure(
                    "Gutt product produced a constant term from non-constant factors",
                    details={"p": list(p), "q": list(q)},
                )
            accumulate(terms, index, coeff * PARAMETER**n if n else coeff)
        self._products[(p, q)] = terms
        logger.debug(
            "Gutt monomial product cached",
            extra={"operation": "gutt_star", "details": {"p": list(p), "q": list(q), "terms": len(terms)}},
        )
        return terms

    def star(self, a: SymElement, b: SymElement) -> SymElement:
        self.uea._require_dim(a.dim)
        a._require_same_shape(b)
        terms: dict = {}
        for p, ca in a.items():
            for q, cb in b.items():
                factor = ca * cb
                for index, coeff in self.monomial_product(p, q).items():
                    accumulate(terms, index, coeff * factor)
        return a._like(terms)


@lru_cache(maxsize=16)
def gutt_product(lie: LieStructure) -> GuttProduct:
    return GuttProduct(lie)


def gutt_star(lie: LieStructure, a: SymElement, b: SymElement) -> SymElement:
    return gutt_product(lie).star(a, b)


def at_parameter(a: SymElement, value) -> SymElement:
    """Specialize z to an exact value."""
    return a.map_coefficients(lambda c: c.substitute(value))


def morphism_at_one(lie: LieStructure, a: SymElement, b: SymElement) -> bool:
    """q(a *_1 b) = q(a) (.) q(b)."""
    uea = enveloping(lie)
    left = uea.symmetrize(at_parameter(gutt_star(lie, a, b), 1))
    right = uea.mul(uea.symmetrize(a), uea.symmetrize(b))
    return left == right


def counit_check(lie: LieStructure, a: SymElement, b: SymElement) -> bool:
    return gutt_star(lie, a, b).counit() == a.counit() * b.counit()


def first_order_check(lie: LieStructure, a: SymElement, b: SymElement) -> bool:
    """The z^1 part of a * b - b * a is the linear Poisson bracket."""
    commutator = gutt_star(lie, a, b) - gutt_star(lie, b, a)
    orders = expand_orders(commutator)
    first = orders[1] if len(orders) > 1 else SymElement.zero(a.dim, a.param)
    return first == linear_poisson_bracket(lie, a, b)


def grading_check(lie: LieStructure, a: SymElement, b: SymElement) -> bool:
    """For homogeneous factors every term of degree d carries exactly z^{k+l-d}."""
    if not (a.is_homogeneous() and b.is_homogeneous()):
        raise ValueError("Grading check needs homogeneous factors")
    total = max(a.degree(), 0) + max(b.degree(), 0)
    for index, coeff in gutt_star(lie, a, b).items():
        n = total - index.degree
        if n < 0 or (total and n > total - 1):
            return False
        orders = coeff.polynomial_coefficients()
        if any(c for r, c in enumerate(orders) if r != n):
            return False
    return True


def functoriality_check(morphism: LieMorphism, a: SymElement, b: SymElement) -> bool:
    """pushforward(a * b) = pushforward(a) * pushforward(b) for the two Gutt products."""
    left = morphism.pushforward(gutt_star(morphism.source, a, b))
    right = gutt_star(morphism.target, morphism.pushforward(a), morphism.pushforward(b))
    return left == right


def heisenberg_exp_product(k: int, l: int, param: str = "z") -> SymElement:
    """Closed form of P^k * Q^l on the Heisenberg algebra with basis (P, Q, E)."""
    terms: dict = {}
    half = RationalFunction.constant(Fraction(1, 2)) * PARAMETER
    for m in range(min(k, l) + 1):
        count = Fraction(factorial(k) * factorial(l), factorial(m) * factorial(k - m) * factorial(l - m))
        terms[MultiIndex((k - m, l - m, m))] = half**m * count if m else ONE * count
    return SymElement(3, terms, param=param)


@dataclass
class ExpBchResult:
    ok: bool
    max_degree: int
    verified_degree: int
    nilpotency_class: int
    mismatched_degrees: list[int] = field(default_factory=list)
    exponent: SymElement | None = None

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "max_degree": self.max_degree,
            "verified_degree": self.verified_degree,
            "nilpotency_class": self.nilpotency_class,
            "mismatched_degrees": self.mismatched_degrees,
        }


def bch_exponent(lie: LieStructure, xi: Sequence, eta: Sequence, cls: int) -> SymElement:
    """(1/z) BCH(z xi, z eta) = sum_n z^{n-1} BCH_n(xi, eta) as a degree-one element."""
    cap = max(cls, 2)
    series = bch_truncated(cap)
    coords = [RationalFunction.constant(0)] * lie.dim
    for n in range(1, cap + 1):
        component = lie_substitute(series.homogeneous(n), lie, xi, eta)
        weight = PARAMETER ** (n - 1) if n > 1 else ONE
        coords = [c + weight * v for c, v in zip(coords, component)]
    return SymElement.vector(coords)


def exp_gutt_bch_check(lie: LieStructure, xi: Sequence, eta: Sequence, max_degree: int) -> ExpBchResult:
    """Compare exp(xi) * exp(eta) with exp((1/z) BCH(z xi, z eta)) in symmetric degrees up to max_degree."""
    cls = nilpotency_class(lie)
    if cls is None:
        raise NotNilpotent(
            "The exponential BCH identity needs a nilpotent Lie algebra",
            details={"lie": lie.name or "custom", "dim": lie.dim},
        )
    truncation = max(cls, 1) * max_degree
    left_exp = sym_exp(SymElement.vector(list(xi)), truncation)
    right_exp = sym_exp(SymElement.vector(list(eta)), truncation)
    left = gutt_star(lie, left_exp, right_exp).truncate(max_degree)
    exponent = bch_exponent(lie, xi, eta, cls)
    right = sym_exp(exponent, max_degree)
    mismatched = [
        d for d in range(max_degree + 1) if left.homogeneous_component(d) != right.homogeneous_component(d)
    ]
    verified = (min(mismatched) - 1) if mismatched else max_degree
    logger.info(
        "exp-BCH identity checked",
        extra={
            "operation": "exp_gutt_bch_check",
            "status": "ok" if not mismatched else "failed",
            "details": {"class": cls, "max_degree": max_degree},
        },
    )
    return ExpBchResult(
        ok=not mismatched,
        max_degree=max_degree,
        verified_degree=verified,
        nilpotency_class=cls,
        mismatched_degrees=mismatched,
        exponent=exponent,
    )

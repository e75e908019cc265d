"""
Deterministic random instances for the command line and the test suite.

All randomness comes from numpy's default_rng(seed), i.e. the PCG64 bit generator.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from quantization.domain.disc import HBAR, CnPolynomial, DiscElement, DiscIndex
from quantization.domain.errors import InputError, UnknownKind
from quantization.domain.lie import catalog_structure
from quantization.domain.multiindex import MultiIndex, multiindices_of_degree, multiindices_up_to
from quantization.domain.scalars import RationalFunction, gaussian
from quantization.domain.symmetric import SymElement
from quantization.infra.serialization import encode

logger = logging.getLogger(__name__)

KINDS = ("sym-element", "lie-structure", "cn-invariant", "disc-element")


@dataclass(frozen=True)
class InstanceCaps:
    dim: int = 2
    n: int = 1
    max_degree: int = 2
    terms: int = 3
    name: str = "heisenberg"
    complex_coefficients: bool = False

    def __post_init__(self):
        if self.dim < 1 or self.n < 1 or self.terms < 1 or self.max_degree < 0:
            raise InputError("Instance caps must be positive", details={"dim": self.dim, "n": self.n, "terms": self.terms})


def random_scalar(rng: np.random.Generator, complex_coefficients: bool = False) -> RationalFunction:
    real = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 5)))
    imag = Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4))) if complex_coefficients else Fraction(0)
    if not real and not imag:
        real = Fraction(1)
    return RationalFunction.constant(gaussian(real, imag))


def _pick(rng: np.random.Generator, options: list):
    return options[int(rng.integers(0, len(options)))]


def random_sym_element(rng: np.random.Generator, caps: InstanceCaps) -> SymElement:
    indices = list(multiindices_up_to(caps.dim, caps.max_degree))
    terms = {}
    for _ in range(caps.terms):
        terms[_pick(rng, indices)] = random_scalar(rng, caps.complex_coefficients)
    return SymElement(caps.dim, terms)


def random_cn_invariant(rng: np.random.Generator, caps: InstanceCaps) -> CnPolynomial:
    terms = {}
    for _ in range(caps.terms):
        d = int(rng.integers(0, caps.max_degree + 1))
        monomials = list(multiindices_of_degree(caps.n + 1, d))
        terms[(_pick(rng, monomials), _pick(rng, monomials))] = random_scalar(rng, caps.complex_coefficients)
    return CnPolynomial(caps.n, terms, param=HBAR)


def random_disc_element(rng: np.random.Generator, caps: InstanceCaps) -> DiscElement:
    lows = list(multiindices_up_to(caps.n, caps.max_degree))
    terms = {}
    for _ in range(caps.terms):
        terms[DiscIndex(MultiIndex(_pick(rng, lows)), MultiIndex(_pick(rng, lows)))] = random_scalar(
            rng, caps.complex_coefficients
        )
    return DiscElement(caps.n, terms, param=HBAR)


def build_instance(kind: str, seed: int, caps: InstanceCaps | None = None):
    caps = caps or InstanceCaps()
    rng = np.random.default_rng(seed)
    if kind == "sym-element":
        return random_sym_element(rng, caps)
    if kind == "lie-structure":
        return catalog_structure(caps.name, caps.dim if caps.name == "abelian" else None)
    if kind == "cn-invariant":
        return random_cn_invariant(rng, caps)
    if kind == "disc-element":
        return random_disc_element(rng, caps)
    raise UnknownKind(f"Unknown instance kind: {kind}", details={"known": list(KINDS)})


def generate_instance(kind: str, seed: int, caps: InstanceCaps | None = None) -> dict:
    """Serialized random element or catalog structure; identical (kind, seed, caps) give identical output."""
    instance = build_instance(kind, seed, caps)
    logger.debug("Instance generated", extra={"operation": "generate_instance", "seed": seed, "details": {"kind": kind}})
    return encode(instance)

"""
Phase-space reduction of the Wick product on C^{n+1} to the disc D_n.

Coordinates are z^0..z^n with g = diag(-1, 1, ..., 1). The disc is realized on the
level set Z = {g = -1}, i.e. |z^0|^2 = 1 + sum_k |z^k|^2, with disc coordinate
w = (z^1, ..., z^n) / z^0. Invariant monomials d_{P,Q} = z^P zbar^Q (|P| = |Q|)
restrict to functions f_{P,Q}; the reduced basis f_{r,P,Q} is labelled by pairs of
multiindices without the zeroth component.
"""
from __future__ import annotations

import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import NamedTuple

import mpmath

from quantization.domain.errors import ForeignPole, InputError, NotInvariant
from quantization.domain.multiindex import MultiIndex, multiindices_of_degree, multiindices_up_to
from quantization.domain.scalars import (
    DOUBLE,
    ONE,
    PARAMETER,
    RationalFunction,
    gaussian,
    half_inverse_parameter,
    pochhammer,
    pole_set,
)
from quantization.domain.sparse import SparseElement, accumulate
from quantization.domain.symmetric import SymElement, expand_orders
from quantization.domain.weyl import BilinearForm, weyl_star

logger = logging.getLogger(__name__)

PAIR_CACHE_SIZE = 4096

HBAR = "hbar"
IMAGINARY_UNIT = RationalFunction.constant(gaussian(0, 1))


class CnPolynomial(SparseElement):
    """sum a_{P,Q} z^P zbar^Q on C^{n+1}; the shape is the disc dimension n."""

    kind = "cn-polynomial"

    @property
    def n(self) -> int:
        return self._shape

    def _check_key(self, key) -> tuple[MultiIndex, MultiIndex]:
        p, q = key
        p, q = MultiIndex(p), MultiIndex(q)
        if len(p) != self._shape + 1 or len(q) != self._shape + 1:
            raise InputError(
                f"Monomial exponents must have length {self._shape + 1}",
                details={"P": list(p), "Q": list(q)},
            )
        return (p, q)

    def sort_key(self, key):
        p, q = key
        return (p.degree + q.degree, tuple(-e for e in p), tuple(-e for e in q))

    @classmethod
    def zero(cls, n: int) -> CnPolynomial:
        return cls(n, {}, param=HBAR)

    @classmethod
    def constant(cls, n: int, value=1) -> CnPolynomial:
        zero = MultiIndex.zero(n + 1)
        return cls(n, {(zero, zero): value}, param=HBAR)

    @classmethod
    def monomial(cls, p, q, coeff=1) -> CnPolynomial:
        p, q = MultiIndex(p), MultiIndex(q)
        return cls(len(p) - 1, {(p, q): coeff}, param=HBAR)

    @property
    def is_invariant(self) -> bool:
        """Every term has |P| = |Q|."""
        return all(p.degree == q.degree for p, q in self._terms)

    def __mul__(self, other: CnPolynomial) -> CnPolynomial:
        """Pointwise product."""
        self._require_same_shape(other)
        terms: dict = {}
        for (p, q), ca in self.items():
            for (r, s), cb in other.items():
                accumulate(terms, (p + r, q + s), ca * cb)
        return self._like(terms)


class DiscIndex(NamedTuple):
    """Label (P, Q) of the reduced basis function f_{r,P,Q}."""

    P: MultiIndex
    Q: MultiIndex

    @classmethod
    def of(cls, p, q) -> DiscIndex:
        p, q = MultiIndex(p), MultiIndex(q)
        if len(p) != len(q):
            raise InputError("Disc index parts must have equal length", details={"P": list(p), "Q": list(q)})
        return cls(p, q)

    @property
    def n(self) -> int:
        return len(self.P)

    @property
    def degree(self) -> int:
        return self.P.degree + self.Q.degree

    @property
    def order(self) -> int:
        """max(|P|, |Q|), the degree of the invariant lift."""
        return max(self.P.degree, self.Q.degree)

    def lift(self) -> tuple[MultiIndex, MultiIndex]:
        """Canonical invariant lift (P^, Q^): the zeroth components balance |P^| = |Q^|."""
        gap = self.Q.degree - self.P.degree
        if gap >= 0:
            return MultiIndex((gap,) + tuple(self.P)), MultiIndex((0,) + tuple(self.Q))
        return MultiIndex((0,) + tuple(self.P)), MultiIndex((-gap,) + tuple(self.Q))

    def __repr__(self) -> str:
        return f"f{tuple(self.P)},{tuple(self.Q)}"


class DiscElement(SparseElement):
    """sum a_{P,Q} f_{r,P,Q}; coefficients are rational functions of hbar."""

    kind = "disc-element"

    @property
    def n(self) -> int:
        return self._shape

    def _check_key(self, key) -> DiscIndex:
        index = key if isinstance(key, DiscIndex) else DiscIndex.of(*key)
        if index.n != self._shape:
            raise InputError(f"Disc index {index!r} does not have length {self._shape}", details={"n": self._shape})
        return index

    def sort_key(self, key: DiscIndex):
        return (key.degree, tuple(-e for e in key.P), tuple(-e for e in key.Q))

    @classmethod
    def zero(cls, n: int) -> DiscElement:
        return cls(n, {}, param=HBAR)

    @classmethod
    def unit(cls, n: int) -> DiscElement:
        zero = MultiIndex.zero(n)
        return cls(n, {DiscIndex(zero, zero): ONE}, param=HBAR)

    @classmethod
    def basis(cls, p, q, coeff=1) -> DiscElement:
        index = DiscIndex.of(p, q)
        return cls(index.n, {index: coeff}, param=HBAR)


def disc_indices(n: int, max_degree: int) -> Iterator[DiscIndex]:
    """All labels with |P|, |Q| <= max_degree."""
    lows = list(multiindices_up_to(n, max_degree))
    for p in lows:
        for q in lows:
            yield DiscIndex(p, q)


def invariant_monomials(n: int, max_degree: int) -> Iterator[CnPolynomial]:
    """d_{P,Q} with |P| = |Q| <= max_degree."""
    for d in range(max_degree + 1):
        for p in multiindices_of_degree(n + 1, d):
            for q in multiindices_of_degree(n + 1, d):
                yield CnPolynomial.monomial(p, q)


def _require_invariant(a: CnPolynomial) -> None:
    if not a.is_invariant:
        offending = next((p, q) for p, q in a.keys() if p.degree != q.degree)
        raise NotInvariant(
            "Polynomial is not U(1)-invariant",
            details={"P": list(offending[0]), "Q": list(offending[1])},
        )


# Metric and the Wick product

def metric_function(n: int) -> CnPolynomial:
    """g = -z^0 zbar^0 + sum_k z^k zbar^k."""
    if n < 1:
        raise InputError("Disc dimension must be at least 1", details={"n": n})
    terms = {}
    for mu in range(n + 1):
        unit = MultiIndex.unit(n + 1, mu)
        terms[(unit, unit)] = -1 if mu == 0 else 1
    return CnPolynomial(n, terms, param=HBAR)


def kernel_generator(n: int) -> CnPolynomial:
    """g + 1, which vanishes on Z."""
    return metric_function(n) + CnPolynomial.constant(n, 1)


@lru_cache(maxsize=PAIR_CACHE_SIZE)
def _wick_pair(p: MultiIndex, q: MultiIndex, r: MultiIndex, s: MultiIndex) -> tuple:
    terms: dict = {}
    two_hbar = PARAMETER * 2
    for t in p.minimum(s).lower():
        weight = Fraction(p.falling(t) * s.falling(t), t.factorial)
        if t[0] % 2:
            weight = -weight
        coeff = two_hbar ** t.degree * weight if t.degree else RationalFunction.constant(weight)
        accumulate(terms, (p - t + r, q + s - t), coeff)
    return tuple(terms.items())


def wick_star_monomial(a: CnPolynomial, b: CnPolynomial) -> CnPolynomial:
    """sum_t (2 hbar)^|t| (-1)^{t_0} P!/(P-t)! S!/(S-t)! / t! d_{P-t+R, Q+S-t} on monomials, bilinear."""
    a._require_same_shape(b)
    terms: dict = {}
    for (p, q), ca in a.items():
        for (r, s), cb in b.items():
            factor = ca * cb
            for key, coeff in _wick_pair(p, q, r, s):
                accumulate(terms, key, coeff * factor)
    return a._like(terms)


wick_star = wick_star_monomial


@lru_cache(maxsize=64)
def wick_form(n: int) -> BilinearForm:
    return BilinearForm.wick(n)


def to_weyl(a: CnPolynomial) -> SymElement:
    """Embed into Sym(span{z^0..z^n, zbar^0..zbar^n}) with the parameter read as hbar."""
    return SymElement(2 * (a.n + 1), {p.concat(q): c for (p, q), c in a.items()}, param=HBAR)


def from_weyl(element: SymElement, n: int) -> CnPolynomial:
    if element.dim != 2 * (n + 1):
        raise InputError("Symmetric element does not match the Wick embedding", details={"dim": element.dim, "n": n})
    return CnPolynomial(n, {index.split(n + 1): c for index, c in element.items()}, param=HBAR)


def wick_via_weyl(a: CnPolynomial, b: CnPolynomial) -> CnPolynomial:
    return from_weyl(weyl_star(wick_form(a.n), to_weyl(a), to_weyl(b)), a.n)


# Restrictions

@lru_cache(maxsize=PAIR_CACHE_SIZE)
def _restriction_expansion(p: MultiIndex, q: MultiIndex) -> tuple:
    """f_{P,Q} = sum_{|T| <= m} C(m, |T|) |T|!/T! f_{r, P'+T, Q'+T} with m = min(P_0, Q_0)."""
    m = min(p[0], q[0])
    p_rest, q_rest = MultiIndex(p[1:]), MultiIndex(q[1:])
    n = len(p_rest)
    terms: dict = {}
    for size in range(m + 1):
        for t in multiindices_of_degree(n, size):
            weight = Fraction(comb(m, size) * factorial(size), t.factorial)
            accumulate(terms, DiscIndex(p_rest + t, q_rest + t), RationalFunction.constant(weight))
    return tuple(terms.items())


@lru_cache(maxsize=64)
def restriction_factor(m: int) -> RationalFunction:
    """(2 hbar)^m (1/(2 hbar))_m = prod_{j<m} (1 + 2 j hbar)."""
    return (PARAMETER * 2) ** m * pochhammer(half_inverse_parameter(), m)


def classical_restriction(a: CnPolynomial) -> DiscElement:
    """Psi_0: restriction of an invariant polynomial to Z, in the reduced basis."""
    _require_invariant(a)
    terms: dict = {}
    for (p, q), coeff in a.items():
        for index, weight in _restriction_expansion(p, q):
            accumulate(terms, index, coeff * weight)
    return DiscElement._from_clean(a.n, terms, HBAR)


def quantum_restriction(a: CnPolynomial) -> DiscElement:
    """Psi_hbar(d_{P,Q}) = (2 hbar)^|P| (1/(2 hbar))_|P| Psi_0(d_{P,Q})."""
    _require_invariant(a)
    terms: dict = {}
    for (p, q), coeff in a.items():
        scaled = coeff * restriction_factor(p.degree)
        for index, weight in _restriction_expansion(p, q):
            accumulate(terms, index, scaled * weight)
    return DiscElement._from_clean(a.n, terms, HBAR)


def canonical_lift(a: DiscElement, quantum: bool = True) -> CnPolynomial:
    """Invariant polynomial whose restriction is a; with quantum=False it is a preimage under Psi_0."""
    terms: dict = {}
    for index, coeff in a.items():
        p_hat, q_hat = index.lift()
        if quantum:
            coeff = coeff / restriction_factor(index.order)
        accumulate(terms, (p_hat, q_hat), coeff)
    return CnPolynomial._from_clean(a.n, terms, HBAR)


# The reduced product

class ReducedProduct:
    """Closed-form f_{r,I} *_red f_{r,J} on lifted pairs, checked for pole confinement.

    Pair products are memoized for the lifetime of the instance.
    """

    def __init__(self, pole_search_cap: int = 64):
        self.pole_search_cap = pole_search_cap
        self._products: dict[tuple[DiscIndex, DiscIndex], dict] = {}

    def pair(self, left: DiscIndex, right: DiscIndex) -> dict:
        cached = self._products.get((left, right))
        if cached is not None:
            return cached
        p, q = left.lift()
        r, s = right.lift()
        s_half = half_inverse_parameter()
        denominator = pochhammer(s_half, p.degree) * pochhammer(s_half, s.degree)
        terms: dict = {}
        for t in p.minimum(s).lower():
            ratio = pochhammer(s_half, p.degree + s.degree - t.degree) / denominator
            weight = Fraction(p.falling(t) * s.falling(t), t.factorial)
            if t[0] % 2:
                weight = -weight
            coeff = ratio * weight
            for index, c in _restriction_expansion(p + r - t, q + s - t):
                accumulate(terms, index, coeff * c)
        for coeff in terms.values():
            poles = pole_set(coeff, self.pole_search_cap)
            if poles.pole_at_zero or poles.has_foreign_roots:
                raise ForeignPole(
                    "Reduced product coefficient has a pole outside {-1/(2m)}",
                    details={"left": repr(left), "right": repr(right), "scalar": str(coeff)},
                )
        self._products[(left, right)] = terms
        return terms

    def star(self, a: DiscElement, b: DiscElement) -> DiscElement:
        a._require_same_shape(b)
        terms: dict = {}
        for i, ca in a.items():
            for j, cb in b.items():
                factor = ca * cb
                for index, coeff in self.pair(i, j).items():
                    accumulate(terms, index, coeff * factor)
        return a._like(terms)


# Process-wide pair cache; pass a fresh ReducedProduct to scope one.
_default_product = ReducedProduct()


def reduced_star(a: DiscElement, b: DiscElement, product: ReducedProduct | None = None) -> DiscElement:
    return (product or _default_product).star(a, b)


def morphism_check(a: CnPolynomial, b: CnPolynomial) -> bool:
    """Psi_hbar(a *_Wick b) = Psi_hbar(a) *_red Psi_hbar(b)."""
    _require_invariant(a)
    _require_invariant(b)
    left = quantum_restriction(wick_star(a, b))
    right = reduced_star(quantum_restriction(a), quantum_restriction(b))
    return left == right


def kernel_membership(a: CnPolynomial) -> bool:
    return quantum_restriction(a).is_zero()


@dataclass
class KernelRow:
    monomial: str
    left_ideal: bool
    right_ideal: bool

    def to_dict(self) -> dict:
        return {"c": self.monomial, "c*(g+1)": self.left_ideal, "(g+1)*c": self.right_ideal}


def kernel_check(n: int, max_degree: int) -> list[KernelRow]:
    """Psi_hbar annihilates c * (g+1) and (g+1) * c for invariant monomials c with |P| <= max_degree."""
    generator = kernel_generator(n)
    rows = []
    for c in invariant_monomials(n, max_degree):
        (p, q), = c.keys()
        rows.append(
            KernelRow(
                monomial=f"{tuple(p)},{tuple(q)}",
                left_ideal=kernel_membership(wick_star(c, generator)),
                right_ideal=kernel_membership(wick_star(generator, c)),
            )
        )
    return rows


# Norms

def _numeric_modulus(coeff: RationalFunction, hbar0, precision: str, tolerance: float) -> float:
    if coeff.is_constant():
        return abs(complex(coeff.evaluate_numeric(0, DOUBLE)))
    if hbar0 is None:
        raise InputError("A value of hbar is needed for hbar-dependent coefficients", details={"scalar": str(coeff)})
    return float(abs(coeff.evaluate_numeric(hbar0, precision, tolerance)))


def norm_disc(rho, a: DiscElement, hbar0, precision: str = DOUBLE, tolerance: float = 1e-12) -> float:
    """sum |a_{P,Q}(hbar0)| rho^{|P+Q|}."""
    rho = Fraction(rho)
    if rho <= 0:
        raise InputError("rho must be positive", details={"rho": str(rho)})
    return sum(
        (_numeric_modulus(c, hbar0, precision, tolerance) * float(rho**index.degree) for index, c in a.items()),
        0.0,
    )


def norm_cn(rho, a: CnPolynomial, hbar0, precision: str = DOUBLE, tolerance: float = 1e-12) -> float:
    """sum |a_{P,Q}(hbar0)| rho^{|P+Q|} sqrt(|P+Q|!)."""
    rho = Fraction(rho)
    if rho <= 0:
        raise InputError("rho must be positive", details={"rho": str(rho)})
    total = 0.0
    for (p, q), c in a.items():
        degree = p.degree + q.degree
        total += _numeric_modulus(c, hbar0, precision, tolerance) * float(rho**degree) * float(
            mpmath.sqrt(mpmath.factorial(degree))
        )
    return total


# Semiclassical limit

def _require_hbar_free(a: DiscElement, name: str) -> None:
    if not a.is_parameter_free():
        raise InputError(f"Semiclassical limit needs hbar-free coefficients in {name}", details={"element": name})


def reduced_poisson_bracket(a: DiscElement, b: DiscElement) -> DiscElement:
    """i Psi_0(C_1(A, B) - C_1(B, A)) for the classical lifts A, B."""
    _require_hbar_free(a, "a")
    _require_hbar_free(b, "b")
    lift_a = canonical_lift(a, quantum=False)
    lift_b = canonical_lift(b, quantum=False)
    forward = expand_orders(wick_star(lift_a, lift_b))
    backward = expand_orders(wick_star(lift_b, lift_a))
    zero = CnPolynomial.zero(a.n)
    first = (forward[1] if len(forward) > 1 else zero) - (backward[1] if len(backward) > 1 else zero)
    return classical_restriction(first).scale(IMAGINARY_UNIT)


def classical_product(a: DiscElement, b: DiscElement) -> DiscElement:
    return classical_restriction(canonical_lift(a, quantum=False) * canonical_lift(b, quantum=False))


@dataclass
class SemiclassicalLimit:
    product: DiscElement
    bracket: DiscElement
    expected_product: DiscElement
    expected_bracket: DiscElement

    @property
    def product_ok(self) -> bool:
        return self.product == self.expected_product

    @property
    def bracket_ok(self) -> bool:
        return self.bracket == self.expected_bracket

    @property
    def ok(self) -> bool:
        return self.product_ok and self.bracket_ok


def semiclassical_limit(a: DiscElement, b: DiscElement) -> SemiclassicalLimit:
    """Exact hbar -> 0 limits of a *_red b and (i/hbar)(a *_red b - b *_red a)."""
    _require_hbar_free(a, "a")
    _require_hbar_free(b, "b")
    forward = reduced_star(a, b)
    commutator = forward - reduced_star(b, a)
    product = forward.map_coefficients(lambda c: c.value_at_zero())
    bracket = commutator.map_coefficients(lambda c: (IMAGINARY_UNIT * c.divided_by_parameter()).value_at_zero())
    return SemiclassicalLimit(
        product=product,
        bracket=bracket,
        expected_product=classical_product(a, b),
        expected_bracket=reduced_poisson_bracket(a, b),
    )


# Pole bookkeeping

@dataclass
class PoleRow:
    left: DiscIndex
    right: DiscIndex
    poles: list[str] = field(default_factory=list)
    max_m: int = 0

    def to_dict(self) -> dict:
        return {"pair": f"{self.left!r} * {self.right!r}", "poles": self.poles}


def pole_report(n: int, max_degree: int, product: ReducedProduct | None = None) -> list[PoleRow]:
    """Pole sets of f_{r,I} *_red f_{r,J} over all labels with |P|, |Q| <= max_degree."""
    product = product or _default_product
    rows = []
    for left in disc_indices(n, max_degree):
        for right in disc_indices(n, max_degree):
            critical: dict[int, int] = {}
            for coeff in product.pair(left, right).values():
                for m, multiplicity in pole_set(coeff, product.pole_search_cap).critical:
                    critical[m] = max(critical.get(m, 0), multiplicity)
            if any(m > max_degree for m in critical):
                raise ForeignPole(
                    f"Pole beyond -1/{2 * max_degree} in a product of degree {max_degree} labels",
                    details={"pair": f"{left!r} * {right!r}", "m": max(critical)},
                )
            rows.append(
                PoleRow(
                    left=left,
                    right=right,
                    poles=[f"-1/{2 * m}" for m in sorted(critical)],
                    max_m=max(critical, default=0),
                )
            )
    logger.info(
        "Pole report assembled",
        extra={"operation": "pole_report", "status": "ok", "details": {"n": n, "max_degree": max_degree, "pairs": len(rows)}},
    )
    return rows

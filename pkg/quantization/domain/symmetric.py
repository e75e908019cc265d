"""
The symmetric algebra over a finite basis.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence

from quantization.domain.errors import DimensionMismatch, NotPolynomialInParameter
from quantization.domain.multiindex import MultiIndex
from quantization.domain.scalars import ONE, ZERO, RationalFunction
from quantization.domain.sparse import SparseElement, accumulate


class SymElement(SparseElement):
    """Polynomial sum_P a_P e^P keyed by multiindices of length dim."""

    kind = "sym-element"

    @property
    def dim(self) -> int:
        return self._shape

    def _check_key(self, key) -> MultiIndex:
        key = key if isinstance(key, MultiIndex) else MultiIndex(key)
        if len(key) != self._shape:
            raise DimensionMismatch(
                f"Multiindex {tuple(key)} does not have length {self._shape}",
                details={"dim": self._shape},
            )
        return key

    def sort_key(self, key: MultiIndex):
        return (key.degree, tuple(-e for e in key))

    @classmethod
    def zero(cls, dim: int, param: str = "z") -> SymElement:
        return cls(dim, {}, param=param)

    @classmethod
    def one(cls, dim: int, param: str = "z") -> SymElement:
        return cls(dim, {MultiIndex.zero(dim): ONE}, param=param)

    @classmethod
    def constant(cls, dim: int, value, param: str = "z") -> SymElement:
        return cls(dim, {MultiIndex.zero(dim): value}, param=param)

    @classmethod
    def monomial(cls, index: Sequence[int], coeff=1, param: str = "z") -> SymElement:
        index = MultiIndex(index)
        return cls(len(index), {index: coeff}, param=param)

    @classmethod
    def generator(cls, dim: int, i: int, param: str = "z") -> SymElement:
        return cls(dim, {MultiIndex.unit(dim, i): ONE}, param=param)

    @classmethod
    def vector(cls, coords: Sequence, param: str = "z") -> SymElement:
        """Degree-one element sum_i coords[i] e_i."""
        dim = len(coords)
        return cls(dim, {MultiIndex.unit(dim, i): c for i, c in enumerate(coords) if c}, param=param)

    def __mul__(self, other: SymElement) -> SymElement:
        return sym_mul(self, other)

    def degree(self) -> int:
        return max((key.degree for key in self._terms), default=-1)

    def grades(self) -> list[int]:
        return sorted({key.degree for key in self._terms})

    def homogeneous_component(self, n: int) -> SymElement:
        return self.filter(lambda key: key.degree == n)

    def homogeneous_components(self) -> dict[int, SymElement]:
        return {n: self.homogeneous_component(n) for n in self.grades()}

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    def truncate(self, max_degree: int) -> SymElement:
        return self.filter(lambda key: key.degree <= max_degree)

    def counit(self) -> RationalFunction:
        """Projection onto Sym^0."""
        return self.coefficient(MultiIndex.zero(self.dim))

    def with_param(self, param: str) -> SymElement:
        return SymElement._from_clean(self._shape, dict(self._terms), param)

    def linear_coordinates(self) -> list[RationalFunction]:
        """Coordinates of a degree-one element."""
        if any(key.degree != 1 for key in self._terms):
            raise ValueError("Element is not a vector of degree one")
        return [self.coefficient(MultiIndex.unit(self.dim, i)) for i in range(self.dim)]


def sym_mul(a: SymElement, b: SymElement) -> SymElement:
    """Commutative product e^P e^Q = e^{P+Q}."""
    a._require_same_shape(b)
    terms: dict = {}
    for p, ca in a.items():
        for q, cb in b.items():
            accumulate(terms, p + q, ca * cb)
    return a._like(terms)


def sym_exp(a: SymElement, max_degree: int) -> SymElement:
    """Truncated exponential sum_{k <= max_degree} a^k / k!."""
    result = SymElement.one(a.dim, param=a.param)
    power = result
    factorial = 1
    for k in range(1, max_degree + 1):
        power = sym_mul(power, a)
        factorial *= k
        result = result + power.scale(RationalFunction.constant(1) / factorial)
    return result


def evaluate_character(phi: Sequence, a: SymElement) -> RationalFunction:
    """delta_phi(e^P) = phi^P, extended linearly."""
    if len(phi) != a.dim:
        raise DimensionMismatch(
            f"Character of length {len(phi)} on dimension {a.dim}",
            details={"phi": len(phi), "dim": a.dim},
        )
    values = [RationalFunction.coerce(v) for v in phi]
    total = ZERO
    for p, coeff in a.items():
        total = total + coeff * RationalFunction.coerce(p.power_of(values))
    return total


def expand_orders(element: SparseElement) -> list[SparseElement]:
    """Coefficients of lambda^0, lambda^1, ... of a parameter-polynomial element."""
    buckets: list[dict] = []
    for key, coeff in element.items():
        try:
            coeffs = coeff.polynomial_coefficients()
        except NotPolynomialInParameter as exc:
            exc.details["key"] = str(tuple(key)) if isinstance(key, tuple) else str(key)
            raise
        for r, c in enumerate(coeffs):
            if not c:
                continue
            while len(buckets) <= r:
                buckets.append({})
            accumulate(buckets[r], key, RationalFunction.constant(c))
    if not buckets:
        return [element._like({})]
    return [element._like(bucket) for bucket in buckets]


def reassemble_orders(orders: Iterable[SparseElement]) -> SparseElement:
    """Inverse of expand_orders: sum_r lambda^r C_r."""
    orders = list(orders)
    total = orders[0]
    power = ONE
    parameter = RationalFunction.parameter()
    for order in orders[1:]:
        power = power * parameter
        total = total + order.scale(power)
    return total

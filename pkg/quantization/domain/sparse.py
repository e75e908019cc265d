"""
Sparse linear combinations with exact scalar coefficients.
"""
from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping
from typing import TypeVar

from quantization.domain.errors import DimensionMismatch
from quantization.domain.scalars import ONE, ZERO, RationalFunction

S = TypeVar("S", bound="SparseElement")


def accumulate(target: dict, key: Hashable, coeff: RationalFunction) -> None:
    """target[key] += coeff, dropping the entry when it cancels."""
    if not coeff:
        return
    current = target.get(key)
    if current is None:
        target[key] = coeff
        return
    total = current + coeff
    if total:
        target[key] = total
    else:
        del target[key]


class SparseElement:
    """Immutable map key -> nonzero RationalFunction.

    Subclasses fix the key type and the shape (dimension) that keys must match.
    """

    __slots__ = ("_terms", "_shape", "param")

    kind = "sparse"

    def __init__(self, shape: int, terms: Mapping | Iterable = (), param: str = "z"):
        self._shape = shape
        self.param = param
        items = terms.items() if isinstance(terms, Mapping) else terms
        cleaned: dict = {}
        for key, coeff in items:
            key = self._check_key(key)
            accumulate(cleaned, key, RationalFunction.coerce(coeff))
        self._terms = cleaned

    @classmethod
    def _from_clean(cls: type[S], shape: int, terms: dict, param: str) -> S:
        element = cls.__new__(cls)
        element._shape = shape
        element.param = param
        element._terms = terms
        return element

    def _check_key(self, key):
        return key

    def _like(self: S, terms: dict) -> S:
        return type(self)._from_clean(self._shape, terms, self.param)

    def _require_same_shape(self, other: SparseElement) -> None:
        if type(other) is not type(self) or other._shape != self._shape:
            raise DimensionMismatch(
                f"Cannot combine {self.kind} of shape {self._shape} with {other.kind} of shape {other._shape}",
                details={"left": self._shape, "right": other._shape},
            )

    # Read access

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator:
        return iter(self._terms.items())

    def keys(self) -> Iterator:
        return iter(self._terms)

    def coefficient(self, key) -> RationalFunction:
        return self._terms.get(key, ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # Linear structure

    def __add__(self: S, other: S) -> S:
        self._require_same_shape(other)
        terms = dict(self._terms)
        for key, coeff in other._terms.items():
            accumulate(terms, key, coeff)
        return self._like(terms)

    def __neg__(self: S) -> S:
        return self._like({key: -coeff for key, coeff in self._terms.items()})

    def __sub__(self: S, other: S) -> S:
        return self + (-other)

    def scale(self: S, factor) -> S:
        factor = RationalFunction.coerce(factor)
        if not factor:
            return self._like({})
        if factor == ONE:
            return self
        return self._like({key: coeff * factor for key, coeff in self._terms.items()})

    def map_coefficients(self: S, fn: Callable[[RationalFunction], RationalFunction]) -> S:
        terms: dict = {}
        for key, coeff in self._terms.items():
            accumulate(terms, key, fn(coeff))
        return self._like(terms)

    def filter(self: S, predicate: Callable[[object], bool]) -> S:
        return self._like({key: coeff for key, coeff in self._terms.items() if predicate(key)})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseElement):
            return NotImplemented
        return type(other) is type(self) and other._shape == self._shape and other._terms == self._terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, self._shape, frozenset(self._terms.items())))

    def is_polynomial_in_parameter(self) -> bool:
        return all(coeff.is_polynomial() for coeff in self._terms.values())

    def is_parameter_free(self) -> bool:
        return all(coeff.is_constant() for coeff in self._terms.values())

    def parameter_degree(self) -> int:
        return max((coeff.parameter_degree() for coeff in self._terms.values()), default=0)

    def sorted_items(self) -> list:
        return sorted(self._terms.items(), key=lambda item: self.sort_key(item[0]))

    def sort_key(self, key):
        return key

    def __repr__(self) -> str:
        body = " + ".join(f"({coeff.format(self.param)})*{key!r}" for key, coeff in self.sorted_items()) or "0"
        return f"{type(self).__name__}[{self._shape}]({body})"

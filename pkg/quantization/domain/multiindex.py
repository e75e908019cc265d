"""
Multiindex combinatorics.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator
from itertools import product
from math import comb, factorial, prod


class MultiIndex(tuple):
    """Fixed-length tuple of non-negative integers with componentwise arithmetic."""

    def __new__(cls, entries: Iterable[int] = ()):
        values = tuple(int(e) for e in entries)
        if any(v < 0 for v in values):
            raise ValueError(f"Multiindex entries must be non-negative: {values}")
        return super().__new__(cls, values)

    @classmethod
    def zero(cls, length: int) -> MultiIndex:
        return cls((0,) * length)

    @classmethod
    def unit(cls, length: int, i: int) -> MultiIndex:
        """The multiindex delta_i."""
        return cls(1 if k == i else 0 for k in range(length))

    @classmethod
    def from_word(cls, length: int, letters: Iterable[int]) -> MultiIndex:
        """Count letter occurrences of a word over {0..length-1}."""
        counts = [0] * length
        for letter in letters:
            counts[letter] += 1
        return cls(counts)

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def factorial(self) -> int:
        return prod(factorial(e) for e in self)

    def __add__(self, other: MultiIndex) -> MultiIndex:
        self._check_length(other)
        return MultiIndex(a + b for a, b in zip(self, other))

    def __sub__(self, other: MultiIndex) -> MultiIndex:
        self._check_length(other)
        if not other.le(self):
            raise ValueError(f"Cannot subtract {tuple(other)} from {tuple(self)}")
        return MultiIndex(a - b for a, b in zip(self, other))

    def le(self, other: MultiIndex) -> bool:
        """Componentwise <=."""
        self._check_length(other)
        return all(a <= b for a, b in zip(self, other))

    def minimum(self, other: MultiIndex) -> MultiIndex:
        self._check_length(other)
        return MultiIndex(min(a, b) for a, b in zip(self, other))

    def binomial(self, other: MultiIndex) -> int:
        """binom(self, other) = prod binom(self_i, other_i)."""
        self._check_length(other)
        return prod(comb(a, b) for a, b in zip(self, other))

    def falling(self, other: MultiIndex) -> int:
        """self! / (self - other)!, zero unless other <= self."""
        self._check_length(other)
        result = 1
        for a, b in zip(self, other):
            if b > a:
                return 0
            result *= factorial(a) // factorial(a - b)
        return result

    def power_of(self, values: Iterable) -> object:
        """values^self = prod values_i^{self_i}; the empty product is the integer 1."""
        result = 1
        for value, e in zip(values, self):
            if e:
                result = result * value**e
        return result

    def concat(self, other: MultiIndex) -> MultiIndex:
        return MultiIndex(tuple(self) + tuple(other))

    def split(self, at: int) -> tuple[MultiIndex, MultiIndex]:
        return MultiIndex(self[:at]), MultiIndex(self[at:])

    def word(self) -> tuple[int, ...]:
        """The sorted letter word e_0^{P_0} e_1^{P_1} ..."""
        return tuple(i for i, e in enumerate(self) for _ in range(e))

    def lower(self) -> Iterator[MultiIndex]:
        """All T with T <= self."""
        for entries in product(*(range(e + 1) for e in self)):
            yield MultiIndex(entries)

    def _check_length(self, other: MultiIndex) -> None:
        if len(self) != len(other):
            raise ValueError(f"Multiindex length mismatch: {len(self)} != {len(other)}")

    def __repr__(self) -> str:
        return f"MultiIndex({tuple(self)})"


def multiindices_of_degree(length: int, degree: int) -> Iterator[MultiIndex]:
    """All multiindices of the given length with |P| = degree."""
    if length == 0:
        if degree == 0:
            yield MultiIndex(())
        return
    if length == 1:
        yield MultiIndex((degree,))
        return
    for first in range(degree, -1, -1):
        for rest in multiindices_of_degree(length - 1, degree - first):
            yield MultiIndex((first,) + tuple(rest))


def multiindices_up_to(length: int, max_degree: int) -> Iterator[MultiIndex]:
    for degree in range(max_degree + 1):
        yield from multiindices_of_degree(length, degree)

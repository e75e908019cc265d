"""
Universal enveloping algebra in the PBW basis and the symmetrization map.

PBW monomials are ordered by basis index: e^P = e_0^{P_0} (.) e_1^{P_1} (.) ...
"""
from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from math import factorial

from sympy.utilities.iterables import multiset_permutations

from quantization.domain.errors import DimensionMismatch
from quantization.domain.multiindex import MultiIndex
from quantization.domain.scalars import ONE, RationalFunction
from quantization.domain.lie import LieStructure
from quantization.domain.sparse import SparseElement, accumulate
from quantization.domain.symmetric import SymElement

logger = logging.getLogger(__name__)


class UEAElement(SparseElement):
    """Sparse combination of PBW-ordered monomials."""

    kind = "uea-element"

    @property
    def dim(self) -> int:
        return self._shape

    def _check_key(self, key) -> MultiIndex:
        key = key if isinstance(key, MultiIndex) else MultiIndex(key)
        if len(key) != self._shape:
            raise DimensionMismatch(f"PBW index {tuple(key)} does not have length {self._shape}")
        return key

    def sort_key(self, key: MultiIndex):
        return (key.degree, tuple(-e for e in key))

    @classmethod
    def one(cls, dim: int, param: str = "z") -> UEAElement:
        return cls(dim, {MultiIndex.zero(dim): ONE}, param=param)

    @classmethod
    def monomial(cls, index, coeff=1, param: str = "z") -> UEAElement:
        index = MultiIndex(index)
        return cls(len(index), {index: coeff}, param=param)

    def degree(self) -> int:
        return max((key.degree for key in self._terms), default=-1)


class UniversalEnveloping:
    """Normal ordering and PBW symmetrization for one Lie structure, with memoized monomial results."""

    def __init__(self, lie: LieStructure):
        self.lie = lie
        self.dim = lie.dim
        self._times_generator: dict[tuple[MultiIndex, int], dict] = {}
        self._symmetrized: dict[MultiIndex, dict] = {}

    def times_generator(self, p: MultiIndex, x: int) -> dict:
        """e^P (.) e_x in normal form."""
        key = (p, x)
        cached = self._times_generator.get(key)
        if cached is not None:
            return cached
        top = max((i for i, e in enumerate(p) if e), default=-1)
        unit_x = MultiIndex.unit(self.dim, x)
        if x >= top:
            result = {p + unit_x: ONE}
        else:
            # e^{P - d_m} (e_m e_x) with e_m e_x = e_x e_m + [e_m, e_x]
            rest = p - MultiIndex.unit(self.dim, top)
            result: dict = {}
            for index, coeff in self.times_generator(rest, x).items():
                for out, c in self.times_generator(index, top).items():
                    accumulate(result, out, coeff * c)
            for k, c_mx in self.lie.structure(top, x):
                for out, c in self.times_generator(rest, k).items():
                    accumulate(result, out, c_mx * c)
        self._times_generator[key] = result
        return result

    def normal_form(self, word) -> dict:
        """Normal form of e_{w_1} (.) ... (.) e_{w_n}."""
        current: dict = {MultiIndex.zero(self.dim): ONE}
        for letter in word:
            step: dict = {}
            for index, coeff in current.items():
                for out, c in self.times_generator(index, letter).items():
                    accumulate(step, out, coeff * c)
            current = step
        return current

    def mul(self, a: UEAElement, b: UEAElement) -> UEAElement:
        a._require_same_shape(b)
        terms: dict = {}
        for p, ca in a.items():
            for q, cb in b.items():
                partial: dict = {p: ca * cb}
                for letter in q.word():
                    step: dict = {}
                    for index, coeff in partial.items():
                        for out, c in self.times_generator(index, letter).items():
                            accumulate(step, out, coeff * c)
                    partial = step
                for index, coeff in partial.items():
                    accumulate(terms, index, coeff)
        return a._like(terms)

    def symmetrized_monomial(self, p: MultiIndex) -> dict:
        """q(e^P) = (P!/n!) sum over distinct arrangements of the multiset word."""
        cached = self._symmetrized.get(p)
        if cached is not None:
            return cached
        n = p.degree
        result: dict = {}
        if n == 0:
            result[p] = ONE
        else:
            weight = RationalFunction.constant(Fraction(p.factorial, factorial(n)))
            for arrangement in multiset_permutations(list(p.word())):
                for index, coeff in self.normal_form(arrangement).items():
                    accumulate(result, index, coeff * weight)
        self._symmetrized[p] = result
        return result

    def symmetrize(self, a: SymElement) -> UEAElement:
        self._require_dim(a.dim)
        terms: dict = {}
        for p, coeff in a.items():
            for index, c in self.symmetrized_monomial(p).items():
                accumulate(terms, index, coeff * c)
        return UEAElement._from_clean(self.dim, terms, a.param)

    def desymmetrize(self, u: UEAElement) -> SymElement:
        """Inverse of symmetrize by top-degree back-substitution."""
        self._require_dim(u.dim)
        remaining = dict(u.terms)
        terms: dict = {}
        while remaining:
            top = max(remaining, key=lambda key: (key.degree, key))
            coeff = remaining[top]
            accumulate(terms, top, coeff)
            for index, c in self.symmetrized_monomial(top).items():
                accumulate(remaining, index, -coeff * c)
        return SymElement._from_clean(self.dim, terms, u.param)

    def _require_dim(self, dim: int) -> None:
        if dim != self.dim:
            raise DimensionMismatch(
                f"Element of dimension {dim} used with a Lie algebra of dimension {self.dim}",
                details={"lie": self.dim, "element": dim},
            )


@lru_cache(maxsize=16)
def enveloping(lie: LieStructure) -> UniversalEnveloping:
    return UniversalEnveloping(lie)


def uea_mul(lie: LieStructure, a: UEAElement, b: UEAElement) -> UEAElement:
    return enveloping(lie).mul(a, b)


def pbw_symmetrize(lie: LieStructure, a: SymElement) -> UEAElement:
    return enveloping(lie).symmetrize(a)


def pbw_desymmetrize(lie: LieStructure, u: UEAElement) -> SymElement:
    return enveloping(lie).desymmetrize(u)

"""
Truncated Baker-Campbell-Hausdorff series in the free associative algebra on {x, y}.

Words are tuples over the letters X = 0 and Y = 1.
"""
from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from quantization.domain.lie import LieStructure
from quantization.domain.scalars import ZERO, RationalFunction

logger = logging.getLogger(__name__)

X, Y = 0, 1
LETTERS = "xy"

Word = tuple[int, ...]


class FreeAlgElement:
    """Sparse map word -> rational coefficient, truncated at a degree cap."""

    __slots__ = ("terms", "cap")

    def __init__(self, terms: Mapping[Word, Fraction] | Iterable = (), cap: int = 8):
        self.cap = cap
        items = terms.items() if isinstance(terms, Mapping) else terms
        cleaned: dict[Word, Fraction] = {}
        for word, coeff in items:
            word = tuple(word)
            if len(word) > cap:
                continue
            total = cleaned.get(word, Fraction(0)) + Fraction(coeff)
            if total:
                cleaned[word] = total
            else:
                cleaned.pop(word, None)
        self.terms = cleaned

    @classmethod
    def letter(cls, letter: int, cap: int) -> FreeAlgElement:
        return cls({(letter,): 1}, cap)

    @classmethod
    def parse(cls, text: str, cap: int) -> FreeAlgElement:
        """A single word written over "xy", e.g. "xyx"."""
        return cls({tuple(LETTERS.index(ch) for ch in text): 1}, cap)

    def __add__(self, other: FreeAlgElement) -> FreeAlgElement:
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            terms[word] = terms.get(word, Fraction(0)) + coeff
        return FreeAlgElement(terms, min(self.cap, other.cap))

    def __sub__(self, other: FreeAlgElement) -> FreeAlgElement:
        return self + other.scale(-1)

    def scale(self, factor) -> FreeAlgElement:
        factor = Fraction(factor)
        return FreeAlgElement({w: c * factor for w, c in self.terms.items()}, self.cap)

    def __mul__(self, other: FreeAlgElement) -> FreeAlgElement:
        cap = min(self.cap, other.cap)
        terms: dict[Word, Fraction] = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                if len(u) + len(v) > cap:
                    continue
                word = u + v
                terms[word] = terms.get(word, Fraction(0)) + cu * cv
        return FreeAlgElement(terms, cap)

    def homogeneous(self, n: int) -> FreeAlgElement:
        return FreeAlgElement({w: c for w, c in self.terms.items() if len(w) == n}, self.cap)

    def coefficient(self, word: Word | str) -> Fraction:
        if isinstance(word, str):
            word = tuple(LETTERS.index(ch) for ch in word)
        return self.terms.get(tuple(word), Fraction(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, FreeAlgElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def format(self) -> str:
        parts = []
        for word, coeff in sorted(self.terms.items(), key=lambda item: (len(item[0]), item[0])):
            parts.append(f"{coeff}*{''.join(LETTERS[ch] for ch in word) or '1'}")
        return " + ".join(parts) or "0"

    def __repr__(self) -> str:
        return f"FreeAlgElement({self.format()})"


def _exp_product_minus_one(cap: int) -> FreeAlgElement:
    """exp(x) exp(y) - 1 = sum_{a+b>=1} x^a y^b / (a! b!)."""
    terms = {}
    for a in range(cap + 1):
        for b in range(cap + 1 - a):
            if a + b:
                terms[(X,) * a + (Y,) * b] = Fraction(1, factorial(a) * factorial(b))
    return FreeAlgElement(terms, cap)


@lru_cache(maxsize=32)
def bch_truncated(cap: int) -> FreeAlgElement:
    """log(exp(x) exp(y)) up to words of length cap."""
    if cap < 1:
        raise ValueError("BCH degree cap must be at least 1")
    w = _exp_product_minus_one(cap)
    power = w
    total = FreeAlgElement({}, cap)
    for k in range(1, cap + 1):
        sign = 1 if k % 2 else -1
        total = total + power.scale(Fraction(sign, k))
        power = power * w
        if not power.terms:
            break
    logger.debug("BCH series expanded", extra={"operation": "bch_truncated", "details": {"cap": cap, "words": len(total.terms)}})
    return total


@lru_cache(maxsize=4096)
def right_nested_bracket(word: Word) -> tuple[tuple[Word, int], ...]:
    """[w_1, [w_2, ..., [w_{n-1}, w_n]]] expanded into words with integer coefficients."""
    expansion: dict[Word, int] = {word[-1:]: 1}
    for letter in reversed(word[:-1]):
        step: dict[Word, int] = {}
        for w, c in expansion.items():
            left = (letter,) + w
            right = w + (letter,)
            step[left] = step.get(left, 0) + c
            step[right] = step.get(right, 0) - c
        expansion = {w: c for w, c in step.items() if c}
    return tuple(expansion.items())


def dynkin_projection(element: FreeAlgElement) -> FreeAlgElement:
    """theta(w) = right-nested bracketing of w divided by |w|, extended linearly."""
    terms: dict[Word, Fraction] = {}
    for word, coeff in element.terms.items():
        if not word:
            continue
        scale = coeff / len(word)
        for w, c in right_nested_bracket(word):
            terms[w] = terms.get(w, Fraction(0)) + scale * c
    return FreeAlgElement(terms, element.cap)


def is_lie_element(element: FreeAlgElement) -> bool:
    return dynkin_projection(element) == element


@dataclass(frozen=True)
class GoldbergRow:
    n: int
    coefficient_sum: Fraction  # sum |coeff_w| = sum |g_w| / n
    bound: Fraction  # 2 / n
    passed: bool

    @property
    def equality(self) -> bool:
        return self.coefficient_sum == self.bound

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "sum": str(self.coefficient_sum),
            "bound": str(self.bound),
            "pass": self.passed,
            "equality": self.equality,
            "coefficient_sum_at_most_2": self.coefficient_sum <= 2,
        }


def goldberg_sum(cap: int) -> list[GoldbergRow]:
    """Rows (n, sum_{|w|=n} |g_w|/n, 2/n, pass) for n = 1..cap, with g_w = n * coefficient of w."""
    series = bch_truncated(cap)
    rows = []
    for n in range(1, cap + 1):
        total = sum((abs(c) for w, c in series.terms.items() if len(w) == n), Fraction(0))
        bound = Fraction(2, n)
        rows.append(GoldbergRow(n=n, coefficient_sum=total, bound=bound, passed=total <= bound))
    return rows


def lie_substitute(element: FreeAlgElement, lie: LieStructure, xi: Sequence, eta: Sequence) -> list[RationalFunction]:
    """Evaluate a Lie element at x = xi, y = eta via its Dynkin form sum_w c_w / |w| [w_1, [..., w_n]]."""
    letters = ([RationalFunction.coerce(c) for c in xi], [RationalFunction.coerce(c) for c in eta])
    nested: dict[Word, list] = {}

    def evaluate(word: Word) -> list:
        cached = nested.get(word)
        if cached is not None:
            return cached
        if len(word) == 1:
            value = letters[word[0]]
        else:
            value = lie.bracket(letters[word[0]], evaluate(word[1:]))
        nested[word] = value
        return value

    result = [ZERO] * lie.dim
    for word, coeff in element.terms.items():
        if not word:
            continue
        vector = evaluate(word)
        weight = RationalFunction.constant(coeff / len(word))
        result = [r + weight * v for r, v in zip(result, vector)]
    return result

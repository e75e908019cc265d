"""
Sym_R seminorms with weighted l1 seminorms on the underlying space.

    p_R(sum_P a_P e^P) = sum_P |P|!^R |a_P| w^P
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath
from sympy import Rational, sqrt

from quantization.domain.errors import DimensionMismatch, NotPolynomialInParameter
from quantization.domain.multiindex import MultiIndex
from quantization.domain.scalars import DOUBLE, RationalFunction, gaussian_to_complex, modulus_squared
from quantization.domain.sparse import SparseElement


@dataclass(frozen=True)
class SeminormSpec:
    weights: tuple[Fraction, ...]
    R: Fraction

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        object.__setattr__(self, "R", Fraction(self.R))
        if not self.weights:
            raise ValueError("At least one weight is required")
        if any(w <= 0 for w in self.weights):
            raise ValueError("Seminorm weights must be positive")

    @classmethod
    def uniform(cls, dim: int, weight, R) -> SeminormSpec:
        return cls(weights=(Fraction(weight),) * dim, R=Fraction(R))

    @property
    def dim(self) -> int:
        return len(self.weights)

    def with_exponent(self, R) -> SeminormSpec:
        return SeminormSpec(self.weights, Fraction(R))


@dataclass(frozen=True)
class SeminormValue:
    """A seminorm value; exact forms are filled in whenever the value is provably rational (or its square is)."""

    value: float
    exact: Fraction | None = None
    exact_square: Fraction | None = None

    @property
    def numeric_only(self) -> bool:
        return self.exact is None and self.exact_square is None

    def square(self) -> Fraction | None:
        if self.exact is not None:
            return self.exact * self.exact
        return self.exact_square

    def __le__(self, other: SeminormValue) -> bool:
        mine, theirs = self.square(), other.square()
        if mine is not None and theirs is not None:
            return mine <= theirs
        return self.value <= other.value * (1 + 1e-12) + 1e-12

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "exact": str(self.exact) if self.exact is not None else None,
            "exact_square": str(self.exact_square) if self.exact_square is not None else None,
            "numeric_only": self.numeric_only,
        }


def rational_modulus(square: Fraction) -> Fraction | None:
    """sqrt(square) when it is rational."""
    root = sqrt(Rational(square.numerator, square.denominator))
    if root.is_Rational:
        return Fraction(int(root.p), int(root.q))
    return None


def weighted_l1(weights, coords) -> float:
    """p(x) = sum_i w_i |x_i| for numeric or Gaussian-rational coordinates."""
    total = 0.0
    for w, c in zip(weights, coords):
        if isinstance(c, RationalFunction):
            c = gaussian_to_complex(c.constant_value())
        total += float(w) * abs(complex(c))
    return total


class _Coefficients:
    """Per-term modulus data for a specialized element."""

    def __init__(self, element: SparseElement, param_value):
        self.squares: dict[MultiIndex, Fraction] = {}
        self.numeric: dict[MultiIndex, float] = {}
        for key, coeff in element.items():
            if not coeff.is_constant():
                if param_value is None:
                    raise NotPolynomialInParameter(
                        "Seminorms need parameter-free coefficients; pass a parameter value",
                        details={"key": str(tuple(key))},
                    )
                if isinstance(param_value, (int, Fraction)):
                    coeff = coeff.substitute(param_value)
                else:
                    self.numeric[key] = abs(coeff.evaluate_numeric(param_value, DOUBLE))
                    continue
            value = coeff.constant_value()
            self.squares[key] = modulus_squared(value)
            self.numeric[key] = abs(gaussian_to_complex(value))

    def exact_modulus(self, key) -> Fraction | None:
        square = self.squares.get(key)
        return None if square is None else rational_modulus(square)


def _weight_power(spec: SeminormSpec, key: MultiIndex) -> Fraction:
    return key.power_of(spec.weights) if key.degree else Fraction(1)


def _factorial_power(n: int, R: Fraction) -> float:
    return float(mpmath.power(mpmath.factorial(n), mpmath.mpf(R.numerator) / R.denominator))


def _component_sums(spec: SeminormSpec, data: _Coefficients, keys) -> tuple[float, Fraction | None, Fraction | None]:
    """(numeric sum, exact sum of |a_P| w^P if rational, exact square if only one term)."""
    numeric = 0.0
    exact: Fraction | None = Fraction(0)
    for key in keys:
        weight = _weight_power(spec, key)
        numeric += data.numeric[key] * float(weight)
        modulus = data.exact_modulus(key)
        if exact is not None and modulus is not None:
            exact += modulus * weight
        else:
            exact = None
    single_square = None
    if len(keys) == 1 and keys[0] in data.squares:
        weight = _weight_power(spec, keys[0])
        single_square = data.squares[keys[0]] * weight * weight
    return numeric, exact, single_square


def _grade_value(spec: SeminormSpec, n: int, data: _Coefficients, keys) -> SeminormValue:
    numeric, exact_sum, single_square = _component_sums(spec, data, keys)
    value = _factorial_power(n, spec.R) * numeric
    R = spec.R
    exact = None
    exact_square = None
    if R.denominator == 1 and exact_sum is not None:
        exact = Fraction(factorial(n)) ** int(R) * exact_sum
    elif (2 * R).denominator == 1:
        if exact_sum is not None:
            exact_square = Fraction(factorial(n)) ** int(2 * R) * exact_sum * exact_sum
        elif single_square is not None:
            exact_square = Fraction(factorial(n)) ** int(2 * R) * single_square
    return SeminormValue(value=value, exact=exact, exact_square=exact_square)


def _grades(element: SparseElement) -> dict[int, list]:
    grades: dict[int, list] = {}
    for key in element.keys():
        grades.setdefault(key.degree, []).append(key)
    return grades


def _check_dim(spec: SeminormSpec, element: SparseElement) -> None:
    length = len(next(iter(element.keys()))) if element else spec.dim
    if length != spec.dim:
        raise DimensionMismatch(
            f"Seminorm with {spec.dim} weights applied to an element of dimension {length}",
            details={"weights": spec.dim, "dim": length},
        )


def seminorm_pR(spec: SeminormSpec, element: SparseElement, param_value=None) -> SeminormValue:
    """Sum over grades n of n!^R p^n(a_n)."""
    _check_dim(spec, element)
    data = _Coefficients(element, param_value)
    grades = _grades(element)
    values = [_grade_value(spec, n, data, keys) for n, keys in sorted(grades.items())]
    total = sum(v.value for v in values)
    exact = None
    exact_square = None
    if all(v.exact is not None for v in values):
        exact = sum((v.exact for v in values), Fraction(0))
    elif len(values) == 1:
        exact_square = values[0].exact_square
    return SeminormValue(value=total, exact=exact, exact_square=exact_square)


def seminorm_pR_sup(spec: SeminormSpec, element: SparseElement, param_value=None) -> SeminormValue:
    """sup over grades n of n!^R p^n(a_n)."""
    _check_dim(spec, element)
    data = _Coefficients(element, param_value)
    values = [_grade_value(spec, n, data, keys) for n, keys in sorted(_grades(element).items())]
    if not values:
        return SeminormValue(value=0.0, exact=Fraction(0))
    best = max(values, key=lambda v: v.value)
    if all(v.exact is not None for v in values):
        return SeminormValue(value=best.value, exact=max(v.exact for v in values))
    squares = [v.square() for v in values]
    if all(s is not None for s in squares):
        return SeminormValue(value=best.value, exact_square=max(squares))
    return SeminormValue(value=best.value)

"""
Exact scalars: rational functions in one indeterminate over the Gaussian rationals.

The indeterminate carries no name here; containers decide whether it reads as
the deformation parameter z or as hbar.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Union

import mpmath
import numpy as np
from sympy import Symbol
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.rings import PolyElement, ring

from quantization.domain.errors import PoleAtPoint, UnexpectedPoleAtZero, NotPolynomialInParameter

PARAMETER_RING, T = ring("t", QQ_I)

GaussianRational = type(QQ_I.one)
Number = Union[int, Fraction, complex, "RationalFunction"]

DOUBLE = "double"
EXTENDED = "extended"


def to_qq(value: int | Fraction) -> object:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def gaussian(real: int | Fraction = 0, imag: int | Fraction = 0) -> GaussianRational:
    """Exact Gaussian rational real + i*imag."""
    return QQ_I(to_qq(real), to_qq(imag))


def gaussian_parts(value: GaussianRational) -> tuple[Fraction, Fraction]:
    return (
        Fraction(int(value.x.numerator), int(value.x.denominator)),
        Fraction(int(value.y.numerator), int(value.y.denominator)),
    )


def gaussian_to_complex(value: GaussianRational) -> complex:
    real, imag = gaussian_parts(value)
    return complex(float(real), float(imag))


def gaussian_to_mpc(value: GaussianRational) -> mpmath.mpc:
    real, imag = gaussian_parts(value)
    return mpmath.mpc(
        mpmath.mpf(real.numerator) / real.denominator,
        mpmath.mpf(imag.numerator) / imag.denominator,
    )


def modulus_squared(value: GaussianRational) -> Fraction:
    real, imag = gaussian_parts(value)
    return real * real + imag * imag


def _as_ground(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, bool):
        raise TypeError("Booleans are not scalars")
    if isinstance(value, (int, Fraction)):
        return gaussian(value)
    if isinstance(value, complex):
        # exact binary value of each part
        return gaussian(Fraction(value.real), Fraction(value.imag))
    raise TypeError(f"Cannot convert {type(value).__name__} to a Gaussian rational")


class RationalFunction:
    """Canonical quotient numer/denom of polynomials over QQ(i).

    Canonical form: gcd(numer, denom) = 1 and denom is monic. Zero is 0/1.
    """

    __slots__ = ("numer", "denom", "_hash")

    def __init__(self, numer: PolyElement, denom: PolyElement | None = None, canonical: bool = False):
        if denom is None:
            denom = PARAMETER_RING.one
        if not denom:
            raise ZeroDivisionError("Denominator of a rational function must be nonzero")
        if not canonical:
            numer, denom = _canonicalize(numer, denom)
        self.numer = numer
        self.denom = denom
        self._hash = None

    @classmethod
    def constant(cls, value) -> RationalFunction:
        if isinstance(value, RationalFunction):
            return value
        return cls(PARAMETER_RING.ground_new(_as_ground(value)), canonical=True)

    @classmethod
    def parameter(cls) -> RationalFunction:
        return cls(T, canonical=True)

    @classmethod
    def from_coefficients(cls, numer: list, denom: list | None = None) -> RationalFunction:
        """Build from dense coefficient lists, lowest degree first."""
        def poly(coeffs):
            return PARAMETER_RING.from_dict({(k,): _as_ground(c) for k, c in enumerate(coeffs) if c})
        return cls(poly(numer), poly(denom) if denom is not None else None)

    @staticmethod
    def coerce(value) -> RationalFunction:
        return value if isinstance(value, RationalFunction) else RationalFunction.constant(value)

    # Structure

    def is_zero(self) -> bool:
        return not self.numer

    def __bool__(self) -> bool:
        return bool(self.numer)

    def is_polynomial(self) -> bool:
        return self.denom == PARAMETER_RING.one

    def is_constant(self) -> bool:
        return self.is_polynomial() and self.numer.degree() <= 0

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError("Scalar depends on the parameter")
        return self.numer.coeff(1) if self.numer else QQ_I.zero

    def polynomial_coefficients(self) -> list[GaussianRational]:
        """Dense coefficients in the parameter, lowest degree first."""
        if not self.is_polynomial():
            raise NotPolynomialInParameter(
                "Coefficient is not polynomial in the parameter",
                details={"scalar": str(self)},
            )
        return dense_coefficients(self.numer)

    def parameter_degree(self) -> int:
        return max(self.numer.degree(), 0)

    # Arithmetic

    def __add__(self, other) -> RationalFunction:
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        one = PARAMETER_RING.one
        if self.denom == one and other.denom == one:
            return RationalFunction(self.numer + other.numer, one, canonical=True)
        if self.denom == other.denom:
            return RationalFunction(self.numer + other.numer, self.denom)
        return RationalFunction(self.numer * other.denom + other.numer * self.denom, self.denom * other.denom)

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.numer, self.denom, canonical=True)

    def __sub__(self, other) -> RationalFunction:
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> RationalFunction:
        return RationalFunction.coerce(other) - self

    def __mul__(self, other) -> RationalFunction:
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        one = PARAMETER_RING.one
        if self.denom == one and other.denom == one:
            return RationalFunction(self.numer * other.numer, one, canonical=True)
        if not self.numer or not other.numer:
            return ZERO
        return RationalFunction(self.numer * other.numer, self.denom * other.denom)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if not self.numer:
            raise ZeroDivisionError("Zero scalar has no inverse")
        return RationalFunction(self.denom, self.numer)

    def __truediv__(self, other) -> RationalFunction:
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> RationalFunction:
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> RationalFunction:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return RationalFunction(self.numer**exponent, self.denom**exponent, canonical=True)

    def __eq__(self, other) -> bool:
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self.numer == other.numer and self.denom == other.denom

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self.numer.items()), frozenset(self.denom.items())))
        return self._hash

    def conjugate(self) -> RationalFunction:
        """Complex conjugation of the coefficients (the parameter is treated as real)."""
        def conj(p):
            return PARAMETER_RING.from_dict({m: QQ_I(c.x, -c.y) for m, c in p.items()})
        return RationalFunction(conj(self.numer), conj(self.denom), canonical=True)

    # Evaluation

    def divided_by_parameter(self) -> RationalFunction:
        return RationalFunction(self.numer, self.denom * T)

    def value_at_zero(self) -> RationalFunction:
        """Exact value at parameter 0."""
        denom_at_zero = self.denom.coeff(1)
        if not denom_at_zero:
            raise UnexpectedPoleAtZero("Scalar has a pole at parameter 0", details={"scalar": str(self)})
        numer_at_zero = self.numer.coeff(1)
        return RationalFunction.constant(QQ_I.quo(numer_at_zero, denom_at_zero) if numer_at_zero else QQ_I.zero)

    def substitute(self, value) -> RationalFunction:
        """Exact substitution of a Gaussian rational for the parameter."""
        point = _as_ground(value)
        numer = _horner_exact(self.numer, point)
        denom = _horner_exact(self.denom, point)
        if not denom:
            raise PoleAtPoint("Denominator vanishes at the substituted value", details={"scalar": str(self)})
        return RationalFunction.constant(QQ_I.quo(numer, denom))

    def evaluate_numeric(self, point: complex, precision: str = DOUBLE, tolerance: float = 1e-12, digits: int = 50):
        """numer(point)/denom(point) in double or extended precision."""
        if precision == EXTENDED:
            with mpmath.workdps(digits):
                x = mpmath.mpc(point)
                numer = mpmath.polyval([gaussian_to_mpc(c) for c in reversed(dense_coefficients(self.numer))] or [0], x)
                denom = mpmath.polyval([gaussian_to_mpc(c) for c in reversed(dense_coefficients(self.denom))] or [0], x)
                if abs(denom) < tolerance:
                    raise PoleAtPoint(
                        "Denominator vanishes at evaluation point",
                        details={"scalar": str(self), "point": str(point)},
                    )
                return numer / denom
        x = complex(point)
        numer = np.polynomial.polynomial.polyval(x, [gaussian_to_complex(c) for c in dense_coefficients(self.numer)] or [0])
        denom = np.polynomial.polynomial.polyval(x, [gaussian_to_complex(c) for c in dense_coefficients(self.denom)] or [0])
        if abs(denom) < tolerance:
            raise PoleAtPoint(
                "Denominator vanishes at evaluation point",
                details={"scalar": str(self), "point": str(point)},
            )
        return complex(numer / denom)

    # Display

    def as_expr(self, name: str = "t"):
        symbol = Symbol(name)
        numer = self.numer.as_expr(symbol)
        if self.is_polynomial():
            return numer
        return numer / self.denom.as_expr(symbol)

    def format(self, name: str = "t") -> str:
        return str(self.as_expr(name))

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"RationalFunction({self.format()})"


def _canonicalize(numer: PolyElement, denom: PolyElement) -> tuple[PolyElement, PolyElement]:
    if not numer:
        return PARAMETER_RING.zero, PARAMETER_RING.one
    if denom.is_ground:
        lc = denom.coeff(1)
        return numer.quo_ground(lc), PARAMETER_RING.one
    _, numer, denom = numer.cofactors(denom)
    lc = denom.LC
    if lc != QQ_I.one:
        numer = numer.quo_ground(lc)
        denom = denom.quo_ground(lc)
    return numer, denom


def _horner_exact(poly: PolyElement, point: GaussianRational) -> GaussianRational:
    return reduce(lambda acc, c: acc * point + c, reversed(dense_coefficients(poly)), QQ_I.zero)


def dense_coefficients(poly: PolyElement) -> list[GaussianRational]:
    if not poly:
        return []
    coeffs = [QQ_I.zero] * (poly.degree() + 1)
    for (k,), c in poly.items():
        coeffs[k] = c
    return coeffs


ZERO = RationalFunction(PARAMETER_RING.zero, canonical=True)
ONE = RationalFunction(PARAMETER_RING.one, canonical=True)
PARAMETER = RationalFunction(T, canonical=True)


def pochhammer(s: RationalFunction, m: int) -> RationalFunction:
    """Rising factorial (s)_m = s (s+1) ... (s+m-1); (s)_0 = 1."""
    if m < 0:
        raise ValueError("Pochhammer index must be non-negative")
    result = ONE
    for j in range(m):
        result = result * (s + j)
    return result


def half_inverse_parameter() -> RationalFunction:
    """The scalar 1/(2 hbar)."""
    return RationalFunction(PARAMETER_RING.one, 2 * T)


@dataclass(frozen=True)
class PoleSet:
    """Roots of a denominator classified against {-1/(2m)}."""

    critical: tuple[tuple[int, int], ...]
    pole_at_zero: bool
    foreign_degree: int

    @property
    def has_foreign_roots(self) -> bool:
        return self.foreign_degree > 0

    @property
    def values(self) -> list[Fraction]:
        return [Fraction(-1, 2 * m) for m, _ in self.critical]

    def labels(self) -> list[str]:
        return [f"-1/{2 * m}" for m, _ in self.critical]

    def confined_to(self, max_m: int) -> bool:
        return not self.pole_at_zero and not self.has_foreign_roots and all(m <= max_m for m, _ in self.critical)


def pole_set(r: RationalFunction, search_cap: int = 64) -> PoleSet:
    """Factor the denominator by trial division against 1 + 2 m t, m = 1..search_cap."""
    remaining = r.denom
    zero_factor = False
    while remaining.degree() > 0 and not remaining.coeff(1):
        remaining = remaining.quo(T)
        zero_factor = True
    critical = []
    for m in range(1, search_cap + 1):
        if remaining.degree() <= 0:
            break
        factor = T + QQ_I(QQ(1, 2 * m), QQ.zero)
        multiplicity = 0
        while remaining.degree() > 0:
            quotient, rest = remaining.div(factor)
            if rest:
                break
            remaining = quotient
            multiplicity += 1
        if multiplicity:
            critical.append((m, multiplicity))
    return PoleSet(critical=tuple(critical), pole_at_zero=zero_factor, foreign_degree=max(remaining.degree(), 0))

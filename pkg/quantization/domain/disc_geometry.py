"""
Numerical geometry of the disc: sample points on Z, evaluation of polynomials and
reduced basis functions, the holomorphic extension in the affine chart and Cauchy
coefficient recovery on tori.

The chart of the complexified disc uses v = w and u = wbar on the diagonal, so

    fhat_{r,P,Q}(u, v) = v^P u^Q (1 - u.v)^{-max(|P|, |Q|)}
"""
from __future__ import annotations

import logging
from itertools import product as grid_product

import mpmath
import numpy as np

from quantization.domain.disc import CnPolynomial, DiscElement, DiscIndex
from quantization.domain.errors import ChartSingularity, InputError, NoConvergence
from quantization.domain.scalars import DOUBLE, EXTENDED, RationalFunction, gaussian_to_complex

logger = logging.getLogger(__name__)


def sample_Z_point(n: int, seed: int, scale: float = 0.5) -> np.ndarray:
    """Deterministic point z in C^{n+1} with g(z) = -|z^0|^2 + sum |z^k|^2 = -1."""
    rng = np.random.default_rng(seed)
    tail = scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    modulus = np.sqrt(1.0 + np.sum(np.abs(tail) ** 2))
    phase = np.exp(2j * np.pi * rng.random())
    return np.concatenate(([modulus * phase], tail))


def disc_point(z: np.ndarray) -> np.ndarray:
    """w = (z^1, ..., z^n) / z^0, inside the unit ball."""
    z = np.asarray(z, dtype=complex)
    return z[1:] / z[0]


def _coefficient_value(coeff: RationalFunction, hbar0, precision: str = DOUBLE):
    if coeff.is_constant():
        return gaussian_to_complex(coeff.constant_value())
    if hbar0 is None:
        raise InputError("A value of hbar is needed for hbar-dependent coefficients", details={"scalar": str(coeff)})
    return complex(coeff.evaluate_numeric(hbar0, precision))


def _monomial(values: np.ndarray, exponents) -> complex:
    return complex(np.prod(np.power(values, np.asarray(exponents))))


def evaluate_cn(a: CnPolynomial, z: np.ndarray, hbar0=None) -> complex:
    """sum a_{P,Q} z^P zbar^Q."""
    z = np.asarray(z, dtype=complex)
    if len(z) != a.n + 1:
        raise InputError("Point does not lie in C^{n+1}", details={"n": a.n, "len": len(z)})
    conj = np.conj(z)
    return sum(
        (_coefficient_value(c, hbar0) * _monomial(z, p) * _monomial(conj, q) for (p, q), c in a.items()),
        0j,
    )


def evaluate_basis(index: DiscIndex, z: np.ndarray) -> complex:
    """f_{r,P,Q}(z) through the canonical lift."""
    z = np.asarray(z, dtype=complex)
    p_hat, q_hat = index.lift()
    return _monomial(z, p_hat) * _monomial(np.conj(z), q_hat)


def evaluate_disc(a: DiscElement, z: np.ndarray, hbar0=None) -> complex:
    z = np.asarray(z, dtype=complex)
    if len(z) != a.n + 1:
        raise InputError("Point does not lie in C^{n+1}", details={"n": a.n, "len": len(z)})
    return sum((_coefficient_value(c, hbar0) * evaluate_basis(index, z) for index, c in a.items()), 0j)


def fhat_eval(index: DiscIndex, u, v, tolerance: float = 1e-12):
    """Holomorphic extension of f_{r,P,Q} in the chart; u, v may carry trailing grid axes."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    pairing = np.sum(u * v, axis=0)
    gap = 1 - pairing
    if np.any(np.abs(gap) < tolerance):
        raise ChartSingularity("u.v = 1 lies outside the chart", details={"index": repr(index)})
    value = np.ones_like(pairing)
    for k, e in enumerate(index.P):
        if e:
            value = value * v[k] ** e
    for k, e in enumerate(index.Q):
        if e:
            value = value * u[k] ** e
    value = value * gap ** (-index.order)
    return value if np.ndim(value) else complex(value)


def evaluate_fhat(a: DiscElement, u, v, hbar0=None, tolerance: float = 1e-12):
    total = 0j
    for index, c in a.items():
        total = total + _coefficient_value(c, hbar0) * fhat_eval(index, u, v, tolerance)
    return total


def homogeneous_fhat_eval(index: DiscIndex, x, y) -> complex:
    """x^{P^} y^{Q^} on Zhat = {x^0 y^0 - x'.y' = 1}; invariant under (x, y) -> (lambda x, y / lambda)."""
    p_hat, q_hat = index.lift()
    return _monomial(np.asarray(x, dtype=complex), p_hat) * _monomial(np.asarray(y, dtype=complex), q_hat)


def chart_projection(x, y) -> tuple[np.ndarray, np.ndarray]:
    """(u, v) = (y'/y^0, x'/x^0)."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    return y[1:] / y[0], x[1:] / x[0]


def chart_lift(u, v) -> tuple[np.ndarray, np.ndarray]:
    """A point of Zhat over the chart point (u, v): x^0 = 1, y^0 = 1 / (1 - u.v)."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    y0 = 1 / (1 - np.sum(u * v))
    return np.concatenate(([1.0], v)), np.concatenate(([y0], y0 * u))


def _torus_mean_double(a: DiscElement, index: DiscIndex, radius: float, grid: int, hbar0) -> complex:
    n = a.n
    circle = radius * np.exp(2j * np.pi * np.arange(grid) / grid)
    axes = np.meshgrid(*([circle] * (2 * n)), indexing="ij")
    u = np.stack(axes[:n])
    v = np.stack(axes[n:])
    integrand = evaluate_fhat(a, u, v, hbar0) * (1 - np.sum(u * v, axis=0)) ** (index.order - 1)
    for k in range(n):
        integrand = integrand / (v[k] ** index.P[k] * u[k] ** index.Q[k])
    return complex(np.mean(integrand))


def _torus_mean_extended(a: DiscElement, index: DiscIndex, radius: float, grid: int, hbar0, digits: int) -> complex:
    n = a.n
    with mpmath.workdps(digits):
        circle = [mpmath.mpf(radius) * mpmath.expjpi(mpmath.mpf(2 * k) / grid) for k in range(grid)]
        coefficients = [
            (term, c.evaluate_numeric(hbar0, EXTENDED, digits=digits) if not c.is_constant() else c.evaluate_numeric(0, EXTENDED, digits=digits))
            for term, c in a.items()
        ]
        total = mpmath.mpc(0)
        for point in grid_product(circle, repeat=2 * n):
            u, v = point[:n], point[n:]
            gap = 1 - mpmath.fsum(uk * vk for uk, vk in zip(u, v))
            value = mpmath.mpc(0)
            for term, c in coefficients:
                monomial = mpmath.fprod([vk**e for vk, e in zip(v, term.P)] + [uk**e for uk, e in zip(u, term.Q)])
                value += c * monomial * gap ** (-term.order)
            kernel = mpmath.fprod([vk**e for vk, e in zip(v, index.P)] + [uk**e for uk, e in zip(u, index.Q)])
            total += value * gap ** (index.order - 1) / kernel
        return complex(total / grid ** (2 * n))


def cauchy_coefficient(
    a: DiscElement,
    index: DiscIndex,
    radius: float = 0.3,
    start_grid: int = 8,
    tolerance: float = 1e-8,
    max_doublings: int = 16,
    precision: str = DOUBLE,
    hbar0=None,
    digits: int = 50,
) -> complex:
    """Coefficient of f_{r,P,Q} in a, by the trapezoid rule for the Cauchy integral on tori |u_k| = |v_k| = radius."""
    if a.n * radius * radius >= 1:
        raise ChartSingularity("Contour leaves the chart: n r^2 must stay below 1", details={"n": a.n, "radius": radius})
    if index.n != a.n:
        raise InputError("Index does not match the element dimension", details={"n": a.n, "index": repr(index)})
    if any(not c.is_constant() for c in a.terms.values()) and hbar0 is None:
        raise InputError("A value of hbar is needed for hbar-dependent coefficients")

    def mean(grid: int) -> complex:
        if precision == EXTENDED:
            return _torus_mean_extended(a, index, radius, grid, hbar0, digits)
        return _torus_mean_double(a, index, radius, grid, hbar0)

    grid = start_grid
    previous = mean(grid)
    for _ in range(max_doublings):
        grid *= 2
        current = mean(grid)
        logger.debug(
            "Contour grid doubled",
            extra={"operation": "cauchy_coefficient", "details": {"grid": grid, "change": abs(current - previous)}},
        )
        if abs(current - previous) < tolerance:
            return current
        previous = current
    raise NoConvergence(
        "Contour sums did not settle",
        details={"index": repr(index), "grid": grid, "tolerance": tolerance},
    )

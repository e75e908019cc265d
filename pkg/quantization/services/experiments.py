"""
Numerical demonstrations of convergence and discontinuity of star products in the Sym_R topologies.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from quantization.domain.gutt import heisenberg_exp_product
from quantization.domain.multiindex import MultiIndex
from quantization.domain.scalars import RationalFunction
from quantization.domain.seminorms import SeminormSpec, seminorm_pR
from quantization.domain.sparse import accumulate
from quantization.domain.symmetric import SymElement
from quantization.domain.weyl import BilinearForm

logger = logging.getLogger(__name__)


@dataclass
class DemoSeries:
    label: str
    R: Fraction
    weights: tuple[Fraction, ...]
    values: list[float] = field(default_factory=list)

    @property
    def increasing(self) -> bool:
        return all(b > a for a, b in zip(self.values, self.values[1:]))

    @property
    def decreasing(self) -> bool:
        return all(b < a for a, b in zip(self.values, self.values[1:]))

    @property
    def peak(self) -> int:
        """N at which the series is largest (1-based); 0 for an empty series."""
        if not self.values:
            return 0
        return max(range(len(self.values)), key=self.values.__getitem__) + 1

    @property
    def decreasing_after_peak(self) -> bool:
        return all(b < a for a, b in zip(self.values[self.peak - 1:], self.values[self.peak:]))

    @property
    def growth(self) -> float:
        if not self.values or self.values[0] == 0:
            return 0.0
        return self.values[-1] / self.values[0]

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "R": str(self.R),
            "weights": [str(w) for w in self.weights],
            "values": self.values,
            "increasing": self.increasing,
            "decreasing": self.decreasing,
            "peak": self.peak,
            "decreasing_after_peak": self.decreasing_after_peak,
            "growth": self.growth,
        }


def _exp_term(dim: int, i: int, k: int) -> SymElement:
    """e_i^k / k!."""
    index = MultiIndex(k if j == i else 0 for j in range(dim))
    return SymElement(dim, {index: RationalFunction.constant(Fraction(1, factorial(k)))})


def weyl_convergence_demo(max_n: int = 40, weight=Fraction(1, 2), R=Fraction(1, 2)) -> DemoSeries:
    """p_R(S_N - S_{N-1}) for the partial products S_N = (sum_{k<=N} x^k/k!) * (sum_{l<=N} y^l/l!) at z = 1."""
    form = BilinearForm.symplectic(2)
    spec = SeminormSpec.uniform(2, weight, R)
    series = DemoSeries(label="weyl exp(x) * exp(y)", R=spec.R, weights=spec.weights)
    for big_n in range(1, max_n + 1):
        terms: dict = {}
        new_x = _exp_term(2, 0, big_n)
        new_y = _exp_term(2, 1, big_n)
        pairs = [(new_x, _exp_term(2, 1, l)) for l in range(big_n)]
        pairs += [(_exp_term(2, 0, k), new_y) for k in range(big_n + 1)]
        for left, right in pairs:
            (p, ca), = left.items()
            (q, cb), = right.items()
            for index, coeff in form.monomial_product(p, q).items():
                accumulate(terms, index, coeff * ca * cb)
        increment = SymElement(2, terms)
        series.values.append(seminorm_pR(spec, increment, param_value=1).value)
    logger.info(
        "Weyl convergence demo finished",
        extra={"operation": "weyl_convergence_demo", "status": "ok", "details": {"max_n": max_n}},
    )
    return series


def gutt_sharpness_demo(max_n: int = 30, R=Fraction(1, 2), weight=1, rescale=1) -> DemoSeries:
    """p_R(P^N * Q^N) / (q_R(P^N) q_R(Q^N)) on the Heisenberg algebra at z = 1, with q = rescale * p."""
    spec = SeminormSpec.uniform(3, weight, R)
    estimate = SeminormSpec(tuple(Fraction(rescale) * w for w in spec.weights), spec.R)
    series = DemoSeries(label=f"heisenberg P^N * Q^N, q = {rescale} p", R=spec.R, weights=spec.weights)
    for big_n in range(1, max_n + 1):
        product = heisenberg_exp_product(big_n, big_n)
        numerator = seminorm_pR(spec, product, param_value=1).value
        p_power = seminorm_pR(estimate, SymElement.monomial((big_n, 0, 0))).value
        q_power = seminorm_pR(estimate, SymElement.monomial((0, big_n, 0))).value
        series.values.append(numerator / (p_power * q_power))
    logger.info(
        "Gutt sharpness demo finished",
        extra={"operation": "gutt_sharpness_demo", "status": "ok", "details": {"max_n": max_n, "R": str(spec.R)}},
    )
    return series

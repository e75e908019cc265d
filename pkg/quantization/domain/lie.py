"""
Finite-dimensional Lie algebras given by exact structure constants.

[e_i, e_j] = sum_k c_ij^k e_k, stored sparsely for i < j.
"""
from __future__ import annotations

import logging
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from quantization.domain.errors import DimensionMismatch, InvalidLieStructure, UnknownKind
from quantization.domain.multiindex import MultiIndex
from quantization.domain.scalars import ZERO, RationalFunction, gaussian_to_complex, modulus_squared
from quantization.domain.seminorms import rational_modulus, weighted_l1
from quantization.domain.symmetric import SymElement, sym_mul

logger = logging.getLogger(__name__)

Vector = list  # list[RationalFunction] of length dim


@dataclass(frozen=True)
class JacobiResult:
    ok: bool
    witness: tuple[int, int, int] | None = None  # 1-based basis labels
    jacobiator: tuple[str, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "witness": list(self.witness) if self.witness else None,
            "jacobiator": list(self.jacobiator) if self.jacobiator else None,
        }


class LieStructure:
    """Structure constants of a Lie algebra on the basis e_0..e_{dim-1}."""

    def __init__(self, dim: int, brackets: Mapping[tuple[int, int], Sequence], name: str = "", validate: bool = True):
        if dim < 1:
            raise InvalidLieStructure("Lie algebra dimension must be positive", details={"dim": dim})
        self.dim = dim
        self.name = name
        table: dict[tuple[int, int], tuple[RationalFunction, ...]] = {}
        for (i, j), coeffs in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise InvalidLieStructure(f"Bracket index out of range: ({i}, {j})", details={"dim": dim})
            if len(coeffs) != dim:
                raise InvalidLieStructure(
                    f"Bracket [{i},{j}] has {len(coeffs)} coefficients, expected {dim}", details={"dim": dim}
                )
            vector = tuple(RationalFunction.coerce(c) for c in coeffs)
            if any(not c.is_constant() for c in vector):
                raise InvalidLieStructure("Structure constants must be parameter-free", details={"i": i, "j": j})
            if i == j:
                if any(vector):
                    raise InvalidLieStructure(f"[e_{i + 1}, e_{i + 1}] must vanish", details={"i": i + 1})
                continue
            key, sign = ((i, j), 1) if i < j else ((j, i), -1)
            vector = vector if sign == 1 else tuple(-c for c in vector)
            if key in table and table[key] != vector:
                raise InvalidLieStructure(
                    f"Bracket [{key[0] + 1},{key[1] + 1}] is not antisymmetric",
                    details={"i": key[0] + 1, "j": key[1] + 1},
                )
            if any(vector):
                table[key] = vector
        self._table = table
        self._sparse = {
            key: tuple((k, c) for k, c in enumerate(vector) if c) for key, vector in table.items()
        }
        if validate:
            result = jacobi_check(self)
            if not result.ok:
                raise InvalidLieStructure(
                    "Structure constants violate the Jacobi identity",
                    details=result.to_dict(),
                )

    # Structure constants

    def structure(self, i: int, j: int) -> tuple[tuple[int, RationalFunction], ...]:
        """Nonzero (k, c_ij^k) pairs."""
        if i == j:
            return ()
        if i < j:
            return self._sparse.get((i, j), ())
        return tuple((k, -c) for k, c in self._sparse.get((j, i), ()))

    def constant(self, i: int, j: int, k: int) -> RationalFunction:
        for index, c in self.structure(i, j):
            if index == k:
                return c
        return ZERO

    def brackets(self) -> dict[tuple[int, int], tuple[RationalFunction, ...]]:
        return dict(self._table)

    def is_abelian(self) -> bool:
        return not self._table

    def basis_vector(self, i: int) -> Vector:
        return [RationalFunction.constant(1 if k == i else 0) for k in range(self.dim)]

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        """[x, y] for coordinate vectors."""
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("Vectors do not match the Lie algebra dimension", details={"dim": self.dim})
        result = [ZERO] * self.dim
        for (i, j), entries in self._sparse.items():
            weight = x[i] * y[j] - x[j] * y[i]
            if not weight:
                continue
            for k, c in entries:
                result[k] = result[k] + weight * c
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, LieStructure) and self.dim == other.dim and self._table == other._table

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self._table.items())))

    def __repr__(self) -> str:
        return f"LieStructure({self.name or 'custom'}, dim={self.dim})"


def jacobi_check(lie: LieStructure) -> JacobiResult:
    """Evaluate the Jacobiator on all basis triples i < j < k."""
    for i, j, k in combinations(range(lie.dim), 3):
        ei, ej, ek = lie.basis_vector(i), lie.basis_vector(j), lie.basis_vector(k)
        jacobiator = [
            a + b + c
            for a, b, c in zip(
                lie.bracket(lie.bracket(ei, ej), ek),
                lie.bracket(lie.bracket(ej, ek), ei),
                lie.bracket(lie.bracket(ek, ei), ej),
            )
        ]
        if any(jacobiator):
            return JacobiResult(
                ok=False,
                witness=(i + 1, j + 1, k + 1),
                jacobiator=tuple(str(c) for c in jacobiator),
            )
    return JacobiResult(ok=True)


# Catalog

def heisenberg() -> LieStructure:
    """Basis (P, Q, E) with [P, Q] = E."""
    return LieStructure(3, {(0, 1): (0, 0, 1)}, name="heisenberg")


def so3() -> LieStructure:
    return LieStructure(3, {(0, 1): (0, 0, 1), (1, 2): (1, 0, 0), (0, 2): (0, -1, 0)}, name="so3")


def solvable2() -> LieStructure:
    """[e_1, e_2] = e_2."""
    return LieStructure(2, {(0, 1): (0, 1)}, name="solvable2")


def abelian(dim: int = 2) -> LieStructure:
    return LieStructure(dim, {}, name="abelian")


CATALOG = {
    "heisenberg": heisenberg,
    "so3": so3,
    "solvable2": solvable2,
    "abelian": abelian,
}


def catalog_structure(name: str, dim: int | None = None) -> LieStructure:
    try:
        factory = CATALOG[name]
    except KeyError:
        raise UnknownKind(f"Unknown Lie structure: {name}", details={"known": sorted(CATALOG)}) from None
    if name == "abelian" and dim is not None:
        return factory(dim)
    return factory()


# Lower central series

def _row_basis(rows: list[list], dim: int) -> list[list]:
    if not rows:
        return []
    matrix = DomainMatrix([[c.constant_value() for c in row] for row in rows], (len(rows), dim), QQ_I)
    reduced, pivots = matrix.rref()
    dense = reduced.to_list()
    return [[RationalFunction.constant(c) for c in dense[r]] for r in range(len(pivots))]


def lower_central_series(lie: LieStructure, max_steps: int | None = None) -> list[int]:
    """Dimensions of g = g_1 > g_2 = [g, g] > g_3 = [g, g_2] > ... until the sequence stabilizes."""
    basis = [lie.basis_vector(i) for i in range(lie.dim)]
    dims = [lie.dim]
    steps = max_steps if max_steps is not None else lie.dim + 1
    for _ in range(steps):
        products = [lie.bracket(lie.basis_vector(i), v) for i in range(lie.dim) for v in basis]
        basis = _row_basis([p for p in products if any(p)], lie.dim)
        dims.append(len(basis))
        if len(basis) == 0 or len(basis) == dims[-2]:
            break
    return dims


def nilpotency_class(lie: LieStructure) -> int | None:
    """Smallest c with g_{c+1} = 0, or None when the series stabilizes above zero."""
    dims = lower_central_series(lie)
    if dims[-1] != 0:
        return None
    return len(dims) - 1


def is_nilpotent(lie: LieStructure) -> bool:
    return nilpotency_class(lie) is not None


# Morphisms

class LieMorphism:
    """Linear map A: source -> target given by target_dim x source_dim matrix; checked to preserve brackets."""

    def __init__(self, source: LieStructure, target: LieStructure, matrix: Sequence[Sequence], validate: bool = True):
        if len(matrix) != target.dim or any(len(row) != source.dim for row in matrix):
            raise DimensionMismatch(
                "Morphism matrix must be target_dim x source_dim",
                details={"source": source.dim, "target": target.dim},
            )
        self.source = source
        self.target = target
        self.matrix = tuple(tuple(RationalFunction.coerce(c) for c in row) for row in matrix)
        if validate and not self.preserves_brackets():
            raise InvalidLieStructure("Linear map does not preserve brackets")

    def apply(self, x: Sequence) -> Vector:
        return [sum((row[i] * x[i] for i in range(self.source.dim)), ZERO) for row in self.matrix]

    def image_of_basis(self, i: int) -> Vector:
        return [row[i] for row in self.matrix]

    def preserves_brackets(self) -> bool:
        for i, j in combinations(range(self.source.dim), 2):
            left = self.apply(self.source.bracket(self.source.basis_vector(i), self.source.basis_vector(j)))
            right = self.target.bracket(self.image_of_basis(i), self.image_of_basis(j))
            if left != right:
                return False
        return True

    def pushforward(self, a: SymElement) -> SymElement:
        """Induced algebra map Sym(source) -> Sym(target), e^P -> prod_i (A e_i)^{P_i}."""
        if a.dim != self.source.dim:
            raise DimensionMismatch("Element does not live on the source algebra", details={"dim": a.dim})
        images = [SymElement.vector(self.image_of_basis(i), param=a.param) for i in range(self.source.dim)]
        result = SymElement.zero(self.target.dim, a.param)
        for p, coeff in a.items():
            term = SymElement.constant(self.target.dim, coeff, a.param)
            for i, e in enumerate(p):
                for _ in range(e):
                    term = sym_mul(term, images[i])
            result = result + term
        return result


def heisenberg_quotient() -> LieMorphism:
    """Heisenberg -> abelian R^2 killing E."""
    return LieMorphism(heisenberg(), abelian(2), [[1, 0, 0], [0, 1, 0]])


# Asymptotic estimates

@dataclass
class AEEstimate:
    constant: Fraction | float
    weights: tuple[Fraction, ...]
    estimate_weights: tuple
    checks: int = 0
    failures: list[dict] = field(default_factory=list)
    worst_ratio: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "C": str(self.constant),
            "weights": [str(w) for w in self.weights],
            "q_weights": [str(w) for w in self.estimate_weights],
            "checks": self.checks,
            "failures": self.failures,
            "worst_ratio": self.worst_ratio,
            "ok": self.ok,
        }


def bracketings(leaves: tuple[int, ...]) -> Iterator:
    """All full bracketings of the ordered leaves, as nested pairs."""
    if len(leaves) == 1:
        yield leaves[0]
        return
    for split in range(1, len(leaves)):
        for left in bracketings(leaves[:split]):
            for right in bracketings(leaves[split:]):
                yield (left, right)


def random_bracketing(leaves: tuple[int, ...], rng: np.random.Generator):
    if len(leaves) == 1:
        return leaves[0]
    split = int(rng.integers(1, len(leaves)))
    return (random_bracketing(leaves[:split], rng), random_bracketing(leaves[split:], rng))


def evaluate_bracketing(lie: LieStructure, shape, vectors: Sequence[Vector]) -> Vector:
    if isinstance(shape, int):
        return vectors[shape]
    left, right = shape
    return lie.bracket(evaluate_bracketing(lie, left, vectors), evaluate_bracketing(lie, right, vectors))


def _random_vector(dim: int, rng: np.random.Generator) -> Vector:
    return [
        RationalFunction.constant(Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 5))))
        for _ in range(dim)
    ]


def ae_constant(lie: LieStructure, weights: Sequence[Fraction]) -> Fraction | float:
    """C = max(1, max_{i,j} sum_k w_k |c_ij^k| / (w_i w_j))."""
    best: Fraction | float = Fraction(1)
    for i in range(lie.dim):
        for j in range(lie.dim):
            exact: Fraction | None = Fraction(0)
            numeric = 0.0
            for k, c in lie.structure(i, j):
                value = c.constant_value()
                numeric += float(weights[k]) * abs(gaussian_to_complex(value))
                modulus = rational_modulus(modulus_squared(value))
                exact = exact + weights[k] * modulus if exact is not None and modulus is not None else None
            scale = weights[i] * weights[j]
            candidate = exact / scale if exact is not None else numeric / float(scale)
            if candidate > best:
                best = candidate
    return best


def ae_estimate(
    lie: LieStructure,
    weights: Sequence,
    seed: int = 0,
    random_checks: int = 100,
    exhaustive_max_n: int = 4,
    random_max_n: int = 6,
) -> AEEstimate:
    """Scale the weighted l1 seminorm p to q = C p and test p(w_n(x_1..x_n)) <= prod q(x_i)."""
    weights = tuple(Fraction(w) for w in weights)
    if len(weights) != lie.dim:
        raise DimensionMismatch("One weight per basis vector is required", details={"dim": lie.dim})
    if any(w <= 0 for w in weights):
        raise ValueError("Seminorm weights must be positive")
    constant = ae_constant(lie, weights)
    q_weights = tuple(constant * w for w in weights)
    estimate = AEEstimate(constant=constant, weights=weights, estimate_weights=q_weights)
    rng = np.random.default_rng(seed)

    def check(shape, n):
        vectors = [_random_vector(lie.dim, rng) for _ in range(n)]
        word = evaluate_bracketing(lie, shape, vectors)
        left = weighted_l1(weights, word)
        right = 1.0
        for v in vectors:
            right *= weighted_l1(q_weights, v)
        estimate.checks += 1
        if right > 0:
            estimate.worst_ratio = max(estimate.worst_ratio, left / right)
        if left > right * (1 + 1e-12) + 1e-12:
            estimate.failures.append({"n": n, "shape": repr(shape), "p": left, "bound": right})

    for n in range(2, exhaustive_max_n + 1):
        for shape in bracketings(tuple(range(n))):
            check(shape, n)
    for index in range(random_checks):
        n = 2 + index % (random_max_n - 1)
        check(random_bracketing(tuple(range(n)), rng), n)
    logger.info(
        "AE estimate checked",
        extra={"operation": "ae_estimate", "status": "ok" if estimate.ok else "failed", "details": {"checks": estimate.checks}},
    )
    return estimate


def leibniz_vector(lie: LieStructure, i: int, j: int) -> SymElement:
    """[e_i, e_j] as a degree-one element of Sym."""
    return SymElement.vector(lie.bracket(lie.basis_vector(i), lie.basis_vector(j)))


def linear_poisson_bracket(lie: LieStructure, a: SymElement, b: SymElement) -> SymElement:
    """Leibniz extension of the Lie bracket: {a, b} = sum_{i,j} d_i a d_j b [e_i, e_j]."""
    if a.dim != lie.dim or b.dim != lie.dim:
        raise DimensionMismatch("Elements do not live on this Lie algebra", details={"dim": lie.dim})
    result = SymElement.zero(lie.dim, a.param)
    for i in range(lie.dim):
        da = partial_derivative(a, i)
        if not da:
            continue
        for j in range(lie.dim):
            if not lie.structure(i, j):
                continue
            db = partial_derivative(b, j)
            if not db:
                continue
            bracket = leibniz_vector(lie, i, j).with_param(a.param)
            result = result + sym_mul(sym_mul(da, db), bracket)
    return result


def partial_derivative(a: SymElement, i: int) -> SymElement:
    terms = {}
    unit = MultiIndex.unit(a.dim, i)
    for p, coeff in a.items():
        if p[i]:
            terms[p - unit] = coeff * p[i]
    return SymElement(a.dim, terms, param=a.param)

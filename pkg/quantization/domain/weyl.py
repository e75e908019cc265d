"""
Weyl-type star products for a constant bilinear form Lambda.

    v *_{z Lambda} w = mu o exp(z P_Lambda)(v (x) w)

The exponential series terminates on polynomials since P_Lambda lowers the
degree of both tensor factors by one.
"""
from __future__ import annotations

import logging
from collections.abc import Sequence
from fractions import Fraction

from quantization.domain.errors import DimensionMismatch
from quantization.domain.multiindex import MultiIndex
from quantization.domain.scalars import ONE, PARAMETER, RationalFunction
from quantization.domain.sparse import accumulate
from quantization.domain.symmetric import SymElement, expand_orders

logger = logging.getLogger(__name__)

PairTensor = dict  # (MultiIndex, MultiIndex) -> RationalFunction
TripleTensor = dict  # (MultiIndex, MultiIndex, MultiIndex) -> RationalFunction


class BilinearForm:
    """Matrix Lambda_ij = Lambda(e_i, e_j); no symmetry is imposed.

    Monomial products are memoized for the lifetime of the form.
    """

    def __init__(self, matrix: Sequence[Sequence]):
        dim = len(matrix)
        if dim == 0 or any(len(row) != dim for row in matrix):
            raise DimensionMismatch("Bilinear form must be a non-empty square matrix", details={"rows": dim})
        self.dim = dim
        self.matrix = tuple(tuple(RationalFunction.coerce(x) for x in row) for row in matrix)
        self._support = tuple(
            (i, j, self.matrix[i][j]) for i in range(dim) for j in range(dim) if self.matrix[i][j]
        )
        self._products: dict[tuple[MultiIndex, MultiIndex], dict] = {}

    @classmethod
    def symplectic(cls, dim: int) -> BilinearForm:
        """Standard form with Lambda(x_k, y_k) = 1 = -Lambda(y_k, x_k) on pairs (x_k, y_k)."""
        if dim % 2:
            raise ValueError("Symplectic form needs an even dimension")
        matrix = [[0] * dim for _ in range(dim)]
        for k in range(0, dim, 2):
            matrix[k][k + 1] = 1
            matrix[k + 1][k] = -1
        return cls(matrix)

    @classmethod
    def standard(cls, dim: int) -> BilinearForm:
        """Standard ordering: Lambda(x_k, y_k) = 2 on pairs (x_k, y_k), zero elsewhere."""
        if dim % 2:
            raise ValueError("Standard-ordered form needs an even dimension")
        matrix = [[0] * dim for _ in range(dim)]
        for k in range(0, dim, 2):
            matrix[k][k + 1] = 2
        return cls(matrix)

    @classmethod
    def wick(cls, n: int) -> BilinearForm:
        """Form on span{z^0..z^n, zbar^0..zbar^n} with Lambda(z^mu, zbar^mu) = 2 g^{mu mu}, g = diag(-1, 1, ..., 1)."""
        size = n + 1
        matrix = [[0] * (2 * size) for _ in range(2 * size)]
        for mu in range(size):
            matrix[mu][size + mu] = -2 if mu == 0 else 2
        return cls(matrix)

    def entry(self, i: int, j: int) -> RationalFunction:
        return self.matrix[i][j]

    def transpose(self) -> BilinearForm:
        return BilinearForm([[self.matrix[j][i] for j in range(self.dim)] for i in range(self.dim)])

    def is_symmetric(self) -> bool:
        return all(self.matrix[i][j] == self.matrix[j][i] for i in range(self.dim) for j in range(self.dim))

    def symmetric_part(self) -> BilinearForm:
        half = RationalFunction.constant(Fraction(1, 2))
        return BilinearForm(
            [[(self.matrix[i][j] + self.matrix[j][i]) * half for j in range(self.dim)] for i in range(self.dim)]
        )

    def antisymmetric_part(self) -> BilinearForm:
        half = RationalFunction.constant(Fraction(1, 2))
        return BilinearForm(
            [[(self.matrix[i][j] - self.matrix[j][i]) * half for j in range(self.dim)] for i in range(self.dim)]
        )

    def __add__(self, other: BilinearForm) -> BilinearForm:
        self._require_dim(other.dim)
        return BilinearForm(
            [[self.matrix[i][j] + other.matrix[i][j] for j in range(self.dim)] for i in range(self.dim)]
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, BilinearForm) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def _require_dim(self, dim: int) -> None:
        if dim != self.dim:
            raise DimensionMismatch(
                f"Element of dimension {dim} used with a form of dimension {self.dim}",
                details={"form": self.dim, "element": dim},
            )

    def apply(self, tensor: PairTensor) -> PairTensor:
        """One application of P_Lambda to a pair tensor."""
        return self.apply_between(tensor, 0, 1)

    def apply_between(self, tensor: dict, left: int, right: int) -> dict:
        """P_Lambda acting on tensor factors `left` and `right`, the other factors untouched."""
        result: dict = {}
        for key, coeff in tensor.items():
            p, q = key[left], key[right]
            for i, j, lam in self._support:
                if p[i] and q[j]:
                    new_key = list(key)
                    new_key[left] = p - MultiIndex.unit(self.dim, i)
                    new_key[right] = q - MultiIndex.unit(self.dim, j)
                    accumulate(result, tuple(new_key), coeff * lam * (p[i] * q[j]))
        return result

    def monomial_product(self, p: MultiIndex, q: MultiIndex) -> dict:
        """e^P * e^Q as a dict index -> coefficient polynomial in the parameter; cached per pair."""
        cached = self._products.get((p, q))
        if cached is not None:
            return cached
        terms: dict = {p + q: ONE}
        tensor: PairTensor = {(p, q): ONE}
        power = ONE
        for r in range(1, min(p.degree, q.degree) + 1):
            tensor = self.apply(tensor)
            if not tensor:
                break
            power = power * PARAMETER / r
            for (p_rest, q_rest), coeff in tensor.items():
                accumulate(terms, p_rest + q_rest, coeff * power)
        self._products[(p, q)] = terms
        return terms


def tensor_of(a: SymElement, b: SymElement) -> PairTensor:
    a._require_same_shape(b)
    return {(p, q): ca * cb for p, ca in a.items() for q, cb in b.items()}


def multiply_tensor(dim: int, tensor: PairTensor, param: str = "z") -> SymElement:
    """mu: e^P (x) e^Q -> e^{P+Q}."""
    terms: dict = {}
    for (p, q), coeff in tensor.items():
        accumulate(terms, p + q, coeff)
    return SymElement._from_clean(dim, terms, param)


def p_lambda(form: BilinearForm, a: SymElement, b: SymElement) -> PairTensor:
    form._require_dim(a.dim)
    return form.apply(tensor_of(a, b))


# Operators on triple tensors

def triple_tensor_of(a: SymElement, b: SymElement, c: SymElement) -> TripleTensor:
    a._require_same_shape(b)
    a._require_same_shape(c)
    return {(p, q, r): ca * cb * cc for p, ca in a.items() for q, cb in b.items() for r, cc in c.items()}


def p12(form: BilinearForm, tensor: TripleTensor) -> TripleTensor:
    """P_Lambda (x) id."""
    return form.apply_between(tensor, 0, 1)


def p23(form: BilinearForm, tensor: TripleTensor) -> TripleTensor:
    """id (x) P_Lambda."""
    return form.apply_between(tensor, 1, 2)


def p13(form: BilinearForm, tensor: TripleTensor) -> TripleTensor:
    """(id (x) tau) o (P_Lambda (x) id) o (id (x) tau)."""
    return form.apply_between(tensor, 0, 2)


def mu_left(tensor: TripleTensor) -> PairTensor:
    """mu (x) id."""
    result: PairTensor = {}
    for (p, q, r), coeff in tensor.items():
        accumulate(result, (p + q, r), coeff)
    return result


def mu_right(tensor: TripleTensor) -> PairTensor:
    """id (x) mu."""
    result: PairTensor = {}
    for (p, q, r), coeff in tensor.items():
        accumulate(result, (p, q + r), coeff)
    return result


def _tensor_sum(first: dict, second: dict) -> dict:
    result = dict(first)
    for key, coeff in second.items():
        accumulate(result, key, coeff)
    return result


def leibniz_check(form: BilinearForm, a: SymElement, b: SymElement, c: SymElement) -> list[tuple[str, bool]]:
    """Pairwise commutation of P12, P13, P23 and the two Leibniz rules, evaluated on a (x) b (x) c."""
    form._require_dim(a.dim)
    tensor = triple_tensor_of(a, b, c)
    operators = {"P12": p12, "P13": p13, "P23": p23}
    rows = []
    for first, second in (("P12", "P13"), ("P12", "P23"), ("P13", "P23")):
        one, two = operators[first], operators[second]
        rows.append((f"{first} {second} = {second} {first}", one(form, two(form, tensor)) == two(form, one(form, tensor))))
    left = form.apply(mu_left(tensor)) == mu_left(_tensor_sum(p13(form, tensor), p23(form, tensor)))
    right = form.apply(mu_right(tensor)) == mu_right(_tensor_sum(p13(form, tensor), p12(form, tensor)))
    rows.append(("P o (mu x id) = (mu x id) o (P13 + P23)", left))
    rows.append(("P o (id x mu) = (id x mu) o (P13 + P12)", right))
    return rows


# Change of ordering

def laplacian(form: BilinearForm, a: SymElement) -> SymElement:
    """Delta_Lambda a = sum_ij Lambda_ij d_i d_j a."""
    form._require_dim(a.dim)
    terms: dict = {}
    for p, coeff in a.items():
        for i, j, lam in form._support:
            if i == j:
                if p[i] < 2:
                    continue
                key = p - MultiIndex.unit(form.dim, i) - MultiIndex.unit(form.dim, i)
                accumulate(terms, key, coeff * lam * (p[i] * (p[i] - 1)))
            elif p[i] and p[j]:
                key = p - MultiIndex.unit(form.dim, i) - MultiIndex.unit(form.dim, j)
                accumulate(terms, key, coeff * lam * (p[i] * p[j]))
    return a._like(terms)


def ordering_transform(symmetric: BilinearForm, a: SymElement) -> SymElement:
    """exp(z/2 Delta_S) a, intertwining *_{z Lambda} and *_{z (Lambda + S)} for symmetric S."""
    if not symmetric.is_symmetric():
        raise ValueError("Ordering transform needs a symmetric form")
    result = a
    current = a
    factor = ONE
    k = 0
    while True:
        current = laplacian(symmetric, current)
        if not current:
            return result
        k += 1
        factor = factor * PARAMETER / (2 * k)
        result = result + current.scale(factor)


def weyl_star(form: BilinearForm, a: SymElement, b: SymElement) -> SymElement:
    """The star product *_{z Lambda}; coefficients are polynomial in z."""
    form._require_dim(a.dim)
    a._require_same_shape(b)
    terms: dict = {}
    for p, ca in a.items():
        for q, cb in b.items():
            factor = ca * cb
            for index, coeff in form.monomial_product(p, q).items():
                accumulate(terms, index, coeff * factor)
    logger.debug(
        "weyl_star computed",
        extra={"operation": "weyl_star", "details": {"terms": len(terms), "cache": len(form._products)}},
    )
    return a._like(terms)


def weyl_order(form: BilinearForm, r: int, a: SymElement, b: SymElement) -> SymElement:
    """The bidifferential operator C_r(a, b) = mu(P_Lambda^r (a (x) b)) / r!."""
    form._require_dim(a.dim)
    tensor = tensor_of(a, b)
    factorial = 1
    for k in range(1, r + 1):
        tensor = form.apply(tensor)
        factorial *= k
    return multiply_tensor(a.dim, tensor, a.param).scale(RationalFunction.constant(Fraction(1, factorial)))


def poisson_bracket_const(form: BilinearForm, a: SymElement, b: SymElement) -> SymElement:
    """{a, b} = mu o (P_Lambda - tau P_Lambda tau)(a (x) b)."""
    return weyl_order(form, 1, a, b) - weyl_order(form, 1, b, a)


def star_commutator(form: BilinearForm, a: SymElement, b: SymElement) -> SymElement:
    return weyl_star(form, a, b) - weyl_star(form, b, a)


def order_chain_check(
    form: BilinearForm, f: SymElement, g: SymElement, h: SymElement, max_order: int
) -> list[tuple[int, bool]]:
    """Check sum_{r+s=k} C_r(C_s(f,g),h) = sum_{r+s=k} C_r(f,C_s(g,h)) for k = 0..max_order."""
    def orders(x, y):
        return [weyl_order(form, s, x, y) for s in range(max_order + 1)]

    left_inner = orders(f, g)
    right_inner = orders(g, h)
    rows = []
    for k in range(max_order + 1):
        left = SymElement.zero(f.dim, f.param)
        right = SymElement.zero(f.dim, f.param)
        for s in range(k + 1):
            left = left + weyl_order(form, k - s, left_inner[s], h)
            right = right + weyl_order(form, k - s, f, right_inner[s])
        rows.append((k, left == right))
    return rows


def first_order_difference(form: BilinearForm, a: SymElement, b: SymElement) -> SymElement:
    """C_1(a,b) - C_1(b,a) read off the expanded star product."""
    forward = expand_orders(weyl_star(form, a, b))
    backward = expand_orders(weyl_star(form, b, a))
    zero = SymElement.zero(a.dim, a.param)
    c1_forward = forward[1] if len(forward) > 1 else zero
    c1_backward = backward[1] if len(backward) > 1 else zero
    return c1_forward - c1_backward

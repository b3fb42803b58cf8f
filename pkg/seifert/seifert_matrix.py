import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from sympy import Matrix, Poly, Symbol, divisors

from exceptions import AlexanderMismatchError, ParameterError, SeifertMatrixError
from forms.quad_form import QuadForm
from localization.knot_count import orbit_id
from localization.oracle import OracleResult, brute_force_localized_equivalent

logger = logging.getLogger(__name__)

t = Symbol("t")


@dataclass(frozen=True)
class SeifertMatrix:
    """Integer 2g x 2g matrix P with det(P - P^T) = 1."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        size = len(self.entries)
        if size == 0 or size % 2 or any(len(row) != size for row in self.entries):
            raise SeifertMatrixError(
                f"a Seifert matrix is square of even size, got {self.entries}"
            )
        matrix = self.as_matrix()
        skew_determinant = (matrix - matrix.T).det()
        if skew_determinant != 1:
            raise SeifertMatrixError(f"det(P - P^T) = {skew_determinant}, expected 1")

    @classmethod
    def from_rows(cls, rows) -> "SeifertMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    def as_matrix(self) -> Matrix:
        return Matrix(self.entries)

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def genus(self) -> int:
        return self.size // 2

    @property
    def determinant(self) -> int:
        return int(self.as_matrix().det(method="bareiss"))

    @property
    def skew(self) -> int:
        """P_12 - P_21 for a genus one matrix"""
        return self.entries[0][1] - self.entries[1][0]


@dataclass(frozen=True)
class AlexanderPolynomial:
    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_symmetric(self) -> bool:
        """equal to its reverse up to sign"""
        reverse = self.coefficients[::-1]
        return self.coefficients in (reverse, tuple(-c for c in reverse))

    def as_expr(self):
        return sum(c * t**i for i, c in enumerate(self.coefficients))

    def __str__(self) -> str:
        return str(self.as_expr())


def alexander_polynomial(matrix: SeifertMatrix) -> AlexanderPolynomial:
    """
    det(tP - P^T) with the factor t^(n - rank P) removed, as coefficients in
    ascending powers of t.

    Returns:
        [[1, 1], [0, 1]] -> (1, -1, 1)
    """
    p = matrix.as_matrix()
    determinant = (t * p - p.T).det(method="bareiss")
    coefficients = Poly(determinant, t).all_coeffs()[::-1]
    nullity = matrix.size - p.rank()
    if any(coefficients[:nullity]):
        raise SeifertMatrixError(f"det(tP - P^T) is not divisible by t^{nullity}")
    return AlexanderPolynomial(tuple(int(c) for c in coefficients[nullity:]))


def seifert_to_form(matrix: SeifertMatrix) -> QuadForm:
    """
    The binary form attached to a genus one Seifert matrix. A matrix with
    P_12 - P_21 = -1 is first brought to P_12 - P_21 = 1 by swapping the basis vectors.
    """
    if matrix.size != 2:
        raise SeifertMatrixError(
            f"genus one needs a 2 x 2 matrix, got size {matrix.size}"
        )
    (p11, p12), (p21, p22) = matrix.entries
    if matrix.skew == -1:
        p11, p22 = p22, p11
    return QuadForm(p11, p12 + p21, p22)


def s_equivalent(first: SeifertMatrix, second: SeifertMatrix) -> bool:
    """
    S-equivalence of genus one Seifert matrices, decided by the orbits of their
    forms over Z[1/m].
    """
    m = first.determinant
    if second.determinant != m:
        raise AlexanderMismatchError(
            f"determinants differ: {m} and {second.determinant}"
        )
    if m == 0:
        raise ParameterError("det P = 0 has no localization")
    return orbit_id(seifert_to_form(first), m) == orbit_id(seifert_to_form(second), m)


def s_equivalence_witness(first: SeifertMatrix, second: SeifertMatrix) -> OracleResult:
    m = first.determinant
    if second.determinant != m:
        raise AlexanderMismatchError(
            f"determinants differ: {m} and {second.determinant}"
        )
    return brute_force_localized_equivalent(
        seifert_to_form(first), seifert_to_form(second), m
    )


def trotter_trace(numerator: tuple[int, int], m: int) -> Fraction:
    """
    Trotter trace T((a + bt) / Delta_m) with Delta_m = mt^2 + (1 - 2m)t + m, extended
    linearly from T(1 / Delta_m) = 0 and T(t / Delta_m) = 1 / m.

    Returns:
        for numerator (a, b): b / m
    """
    if m == 0:
        raise ParameterError("m must be nonzero")
    _, b = numerator
    return Fraction(b, m)


def random_seifert(
    m: int, count: int, seed: int, spread: int = 10
) -> list[SeifertMatrix]:
    """
    Random matrices [[a, b], [b - 1, c]] with ac - b(b - 1) = m, reproducible
    from the seed.

    :param m: the target determinant
    :param count: how many matrices to draw
    :param seed: generator seed
    :param spread: b is drawn uniformly from [-spread, spread]
    """
    if count < 0:
        raise ParameterError(f"count must be nonnegative, got {count}")
    rng = np.random.default_rng(seed)
    matrices = []
    while len(matrices) < count:
        b = int(rng.integers(-spread, spread + 1))
        product = m + b * (b - 1)
        if product == 0:
            a, c = 0, int(rng.integers(-spread, spread + 1))
        else:
            options = divisors(abs(product))
            index = int(rng.integers(0, len(options)))
            a = int(options[index]) * int(rng.choice([-1, 1]))
            c = product // a
        matrices.append(SeifertMatrix.from_rows([[a, b], [b - 1, c]]))
    logger.debug(f"{count} random Seifert matrices of determinant {m}")
    return matrices

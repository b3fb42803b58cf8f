import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import divisors

from config import ORACLE_HEIGHT_FACTOR, ORACLE_K_MAX
from exceptions import ParameterError
from forms.quad_form import GLTransform, QuadForm
from forms.reduction import reduce_form

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocalizedTransform:
    """
    The element matrix / m^exponent of SL_2(Z[1/m]); matrix is integral of
    determinant m^(2 exponent).
    """

    matrix: GLTransform
    exponent: int
    m: int

    def __matmul__(self, other: "LocalizedTransform") -> "LocalizedTransform":
        return LocalizedTransform(
            self.matrix @ other.matrix, self.exponent + other.exponent, self.m
        )

    @property
    def scale(self) -> int:
        return self.m ** (2 * self.exponent)

    def is_special(self) -> bool:
        return self.matrix.det == self.scale

    def apply(self, form: QuadForm) -> QuadForm:
        return form.substitute(self.matrix).divide(self.scale)

    def entries(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        denominator = self.m**self.exponent
        return tuple(
            tuple(Fraction(x, denominator) for x in row) for row in self.matrix.rows()
        )


@dataclass(frozen=True)
class OracleResult:
    equivalent: bool
    witness: LocalizedTransform | None
    classes_reached: int

    def __bool__(self) -> bool:
        return self.equivalent


def lattice_steps(form: QuadForm, m: int, k: int, height_max: int) -> list[GLTransform]:
    """
    Lower triangular [[a, 0], [b, d]] with ad = m^(2k), 0 <= b < d and all entries
    at most height_max such that the substituted form is divisible by m^(2k). Every
    integral matrix of determinant m^(2k) is one of these times an element of SL_2(Z).
    """
    n = m ** (2 * k)
    steps = []
    for d in divisors(n):
        if d > height_max:
            break
        a = n // d
        if a > height_max or (form.c * d * d) % n:
            continue
        coefficient, target = 2 * form.c * d, -form.b * a * d
        g = gcd(coefficient, n)
        if target % g:
            continue
        modulus = n // g
        start = 0
        if modulus > 1:
            start = (target // g) * pow(coefficient // g, -1, modulus) % modulus
        for b in range(start, min(d, height_max + 1), modulus):
            if form.evaluate(a, b) % n == 0:
                steps.append(GLTransform(a, 0, b, d))
    return steps


@lru_cache(maxsize=512)
def _reachable(
    start: QuadForm, m: int, k_max: int, height_max: int
) -> dict[QuadForm, LocalizedTransform]:
    witnesses = {start: LocalizedTransform(GLTransform.identity(), 0, m)}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for k in range(1, k_max + 1):
            scale = m ** (2 * k)
            for step in lattice_steps(current, m, k, height_max):
                reduced, reduction = reduce_form(current.substitute(step).divide(scale))
                if reduced in witnesses:
                    continue
                witnesses[reduced] = (
                    witnesses[current]
                    @ LocalizedTransform(step, k, m)
                    @ LocalizedTransform(reduction, 0, m)
                )
                queue.append(reduced)
    logger.debug(f"{start} reaches {len(witnesses)} classes over Z[1/{m}]")
    return witnesses


def reachable_classes(
    form: QuadForm, m: int, k_max: int = ORACLE_K_MAX, height_max: int | None = None
) -> dict[QuadForm, LocalizedTransform]:
    """canonical SL_2(Z)-classes reachable from form inside the search box"""
    if m == 0:
        raise ParameterError("m must be nonzero")
    height_max = height_max or ORACLE_HEIGHT_FACTOR * m * m
    start, transform = reduce_form(form)
    prefix = LocalizedTransform(transform, 0, m)
    reached = _reachable(start, m, k_max, height_max)
    return {cls: prefix @ witness for cls, witness in reached.items()}


def brute_force_localized_equivalent(
    first: QuadForm,
    second: QuadForm,
    m: int,
    k_max: int = ORACLE_K_MAX,
    height_max: int | None = None,
) -> OracleResult:
    """
    Search SL_2(Z[1/m]) for X with first.apply(X) == second, among elements
    m^(-k) U with k <= k_max and U in lower triangular form of bounded height,
    closed under composition.
    A negative answer only means no witness was found in the box.

    :param first: a form
    :param second: a form of the same discriminant
    :param m: the inverted integer
    :param k_max: largest power of m in a single step
    :param height_max: entry bound for the integral part of a step, 10 m^2 by default
    """
    if first.discriminant() != second.discriminant():
        return OracleResult(False, None, 0)
    reached = reachable_classes(first, m, k_max, height_max)
    target, transform = reduce_form(second)
    if target not in reached:
        return OracleResult(False, None, len(reached))
    witness = reached[target] @ LocalizedTransform(transform.inverse(), 0, m)
    return OracleResult(True, witness, len(reached))

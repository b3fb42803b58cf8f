import logging
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt, prod

from sympy import divisors, factorint

from classgroups.class_group import generated_subgroup
from classgroups.composition import compose, principal_form, prime_form
from config import MAX_FORM_M
from exceptions import CapacityError, DiscriminantError, ParameterError
from forms.quad_form import QuadForm
from forms.reduction import canonical_form
from utils import is_square

logger = logging.getLogger(__name__)

Factorizer = Callable[[int], dict[int, int]]


def _sympy_factorizer(n: int) -> dict[int, int]:
    return {int(p): e for p, e in factorint(abs(n)).items()}


@dataclass(frozen=True)
class LocalRing:
    """Z[1/m] together with the factorizations of m and of D = 1 - 4m."""
    m: int
    factorization: tuple[tuple[int, int], ...]
    discriminant_factorization: tuple[tuple[int, int], ...]

    @classmethod
    def from_m(cls, m: int, factorizer: Factorizer | None = None) -> "LocalRing":
        if m == 0:
            raise ParameterError("m must be nonzero")
        if abs(m) > MAX_FORM_M:
            raise CapacityError(f"|m| = {abs(m)} exceeds {MAX_FORM_M}", m, MAX_FORM_M)
        factorizer = factorizer or _sympy_factorizer
        return cls(
            m,
            tuple(sorted(factorizer(m).items())),
            tuple(sorted(factorizer(1 - 4 * m).items())),
        )

    @property
    def discriminant(self) -> int:
        return 1 - 4 * self.m

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factorization)

    @property
    def omega(self) -> int:
        return len(self.factorization)

    def content_strata(self) -> list[int]:
        """every d >= 1 with d^2 | D, ascending"""
        root = prod(p ** (e // 2) for p, e in self.discriminant_factorization)
        return [int(d) for d in divisors(root)]

    def stratum_discriminant(self, d: int) -> int:
        if self.discriminant % (d * d):
            raise ParameterError(f"{d}^2 does not divide {self.discriminant}")
        return self.discriminant // (d * d)

    def is_split_stratum(self, d: int) -> bool:
        return is_square(self.stratum_discriminant(d))


@dataclass(frozen=True)
class KernelSubgroup:
    """
    K(D', m): the subgroup of Cl+(D') generated by the squares of the prime forms
    above p | m. These classes become trivial once m is inverted.
    """

    discriminant: int
    generators: tuple[QuadForm, ...]
    elements: frozenset[QuadForm]

    @property
    def order(self) -> int:
        return len(self.elements)

    def coset_minimum(self, form: QuadForm) -> QuadForm:
        """least canonical form in form * K"""
        representative = canonical_form(form)
        return min(compose(representative, k) for k in self.elements)


@lru_cache(maxsize=8192)
def _kernel(m: int, d: int, value: int, primes: tuple[int, ...]) -> KernelSubgroup:
    generators = []
    for p in primes:
        g = canonical_form(prime_form(value, p))
        generators.append(compose(g, g))
    elements = generated_subgroup(generators, principal_form(value))
    logger.debug(f"kernel for m={m}, d={d}: {len(elements)} classes")
    return KernelSubgroup(value, tuple(generators), elements)


def kernel_generators(ring: LocalRing, d: int) -> KernelSubgroup:
    """
    :param ring: the localization data for m
    :param d: a content stratum, d^2 | D
    :return: the kernel subgroup in Cl+(D / d^2)
    """
    if ring.is_split_stratum(d):
        raise DiscriminantError(f"stratum d={d} of m={ring.m} has square discriminant")
    return _kernel(ring.m, d, ring.stratum_discriminant(d), ring.primes)


def kernel_relation_holds(ring: LocalRing) -> bool:
    """
    The generators of the primitive stratum multiply to the identity with
    multiplicities v_p(m).
    """
    value = ring.discriminant
    kernel = kernel_generators(ring, 1)
    product = principal_form(value)
    for generator, (_, e) in zip(kernel.generators, ring.factorization):
        for _ in range(e):
            product = compose(product, generator)
    return product == principal_form(value)


def tau_below(m: int, bound: float) -> int:
    """number of positive divisors s of m with s <= bound"""
    return sum(1 for s in divisors(abs(m)) if s <= bound)


def tau_quarter(m: int) -> int:
    """number of positive divisors s of m with s^4 <= |m|, exactly"""
    return sum(1 for s in divisors(abs(m)) if s**4 <= abs(m))


def quarter_root(m: int) -> int:
    root = isqrt(isqrt(abs(m)))
    while (root + 1) ** 4 <= abs(m):
        root += 1
    return root


def divisor_kernel_classes(ring: LocalRing) -> dict[int, QuadForm]:
    """
    The squares of the classes of (s, 1, m/s) for the positive divisors s of m. All
    of them lie in the kernel of the primitive stratum; for m > 0 those with s^4 < m
    are pairwise distinct.
    """
    classes = {}
    for s in divisors(abs(ring.m)):
        s = int(s)
        form = canonical_form(QuadForm(s, 1, ring.m // s))
        classes[s] = compose(form, form)
    return classes

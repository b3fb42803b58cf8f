import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import numpy as np
from sympy import divisors, factorint, primerange, totient

from exceptions import ParameterError
from utils import is_squarefree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocalDensity:
    d: int
    count: int
    density: Fraction

    @property
    def expected_count(self) -> Fraction:
        return self.density * self.d**3


def local_density(d: int) -> LocalDensity:
    """
    Number of (a, b', c) mod d with ac - b'(b' + 1) = 0 mod d, and the product of
    (p + 1) / p^2. For fixed b' the congruence ac = t mod d has the sum over
    g | gcd(d, t) of g phi(d / g) solutions.

    Returns:
        for d = 6: count 72, density 1/3
    """
    if d < 1 or not is_squarefree(d):
        raise ParameterError(f"d must be a positive squarefree integer, got {d}")
    b = np.arange(d, dtype=np.int64)
    t = (b * (b + 1)) % d
    count = 0
    for g in divisors(d):
        count += g * int(totient(d // g)) * int(np.count_nonzero(t % g == 0))
    density = Fraction(1)
    for p in factorint(d):
        density *= Fraction(p + 1, p * p)
    return LocalDensity(d, count, density)


def lattice_count_s_d(x: int, d: int) -> int:
    """
    Reduced positive definite forms (a, 2b' + 1, c) with x <= ac - b'(b' + 1) <= 2x and
    d | ac - b'(b' + 1), counted with the half-open boundary convention of reduction.
    Solutions in c form one arithmetic progression for each (a, b').
    """
    if x < 1 or d < 1:
        raise ParameterError(f"x and d must be positive, got x={x}, d={d}")
    total = 0
    a_max = isqrt(8 * x // 3) + 1
    for a in range(1, a_max + 1):
        b = np.arange(-a + 1, a + 1, dtype=np.int64)
        b = b[b % 2 == 1]
        if b.size == 0:
            continue
        t = (b * b - 1) // 4
        lower = np.maximum(np.where(b < 0, a + 1, a), -((-(x + t)) // a))
        upper = (2 * x + t) // a
        g = gcd(a, d)
        modulus = d // g
        solvable = t % g == 0
        if modulus == 1:
            counts = np.maximum(upper - lower + 1, 0)
        else:
            inverse = pow(a // g, -1, modulus)
            residue = ((t // g) % modulus * inverse) % modulus
            counts = (upper - residue) // modulus - (lower - 1 - residue) // modulus
            counts = np.maximum(counts, 0)
        total += int(counts[solvable].sum())
    logger.debug(f"S_{d}({x}) = {total}")
    return total


def mertens_product(z: int, exact: bool = False) -> float | Fraction:
    """
    product of 1 - (p + 1) / p^2 over primes p < z

    Returns:
        for z = 4: 5/36
    """
    if z < 3:
        raise ParameterError(f"z must be at least 3, got {z}")
    primes = list(primerange(2, z))
    if exact:
        product = Fraction(1)
        for p in primes:
            product *= 1 - Fraction(p + 1, p * p)
        return product
    p = np.array(primes, dtype=np.float64)
    return float(np.prod(1.0 - (p + 1.0) / (p * p)))

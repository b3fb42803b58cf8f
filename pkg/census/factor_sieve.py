import logging
from math import isqrt

import numpy as np
from sympy import factorint

logger = logging.getLogger(__name__)


class FactorSieve:
    """Smallest prime factor table for factoring every integer up to bound."""

    def __init__(self, bound: int):
        """
        :param bound: largest integer the table covers; larger inputs fall back to sympy
        """
        self.bound = max(bound, 2)
        self.smallest = np.zeros(self.bound + 1, dtype=np.int64)
        for p in range(2, isqrt(self.bound) + 1):
            if self.smallest[p]:
                continue
            block = self.smallest[p * p :: p]
            block[block == 0] = p
        unset = np.flatnonzero(self.smallest == 0)
        self.smallest[unset] = unset
        logger.debug(f"Factor sieve up to {self.bound} built")

    def factorize(self, n: int) -> dict[int, int]:
        n = abs(n)
        if n > self.bound:
            return {int(p): e for p, e in factorint(n).items()}
        factors: dict[int, int] = {}
        while n > 1:
            p = int(self.smallest[n])
            while n % p == 0:
                n //= p
                factors[p] = factors.get(p, 0) + 1
        return factors

    def omega(self, n: int) -> int:
        return len(self.factorize(n))

    def is_prime(self, n: int) -> bool:
        n = abs(n)
        if n > self.bound:
            return list(factorint(n).values()) == [1]
        return n > 1 and int(self.smallest[n]) == n

    def is_prime_power(self, n: int) -> bool:
        """exponent at least 2"""
        factors = self.factorize(n)
        return len(factors) == 1 and next(iter(factors.values())) > 1

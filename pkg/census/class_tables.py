import logging
from math import gcd, isqrt

import numpy as np

from config import MAX_CENSUS_M
from exceptions import CapacityError

logger = logging.getLogger(__name__)


class DefiniteClassTable:
    """
    Numbers of reduced positive definite forms of discriminant 1 - 4m for
    1 <= m <= bound, all forms and primitive forms, accumulated one (a, b) pair
    at a time.
    """

    def __init__(self, bound: int):
        if bound > 4 * MAX_CENSUS_M:
            raise CapacityError(
                f"class table bound {bound} is too large", bound, 4 * MAX_CENSUS_M
            )
        self.bound = max(bound, 1)
        self.all_forms = np.zeros(self.bound + 1, dtype=np.int64)
        self.primitive = np.zeros(self.bound + 1, dtype=np.int64)
        self._fill()

    def _fill(self) -> None:
        # a reduced form of discriminant 1 - 4m has m >= 3a^2/4
        a_max = isqrt(4 * self.bound // 3) + 1
        for a in range(1, a_max + 1):
            for b in range(-a + 1, a + 1):
                if b % 2 == 0:
                    continue
                t = (b * b - 1) // 4
                c_min = a + 1 if b < 0 else a
                c_max = (self.bound + t) // a
                if c_max < c_min:
                    continue
                c = np.arange(c_min, c_max + 1, dtype=np.int64)
                m = a * c - t
                self.all_forms[m] += 1
                self.primitive[m[np.gcd(c, gcd(a, b)) == 1]] += 1
        logger.debug(f"Definite class table up to m={self.bound} filled")

    def class_number(self, m: int) -> int:
        return int(self.primitive[m])

    def h_plus(self, discriminant: int) -> int:
        m = (1 - discriminant) // 4
        return 2 * int(self.primitive[m])

    def covers(self, discriminant: int) -> bool:
        return discriminant < 0 and (1 - discriminant) // 4 <= self.bound

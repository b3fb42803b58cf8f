import logging
from math import fsum, isqrt

from census.class_tables import DefiniteClassTable
from classgroups.regulator import regulator
from config import MAX_REGULATOR_M
from exceptions import CapacityError, ParameterError
from forms.enumeration import oriented_class_number

logger = logging.getLogger(__name__)


def gauss_total(x: int, table: DefiniteClassTable | None = None) -> int:
    """
    sum of h+(1 - 4m) over 0 < m <= x

    Returns:
        for x = 6: 18
    """
    if x < 1:
        raise ParameterError(f"x must be positive, got {x}")
    table = table if table is not None and table.bound >= x else DefiniteClassTable(x)
    return 2 * int(table.primitive[1 : x + 1].sum())


def siegel_total(x: int) -> float:
    """
    sum of h+(D) r(D) over non-square 0 < D <= x with D = 1 mod 4

    Returns:
        for x = 5: 0.4812...
    """
    limit = 4 * MAX_REGULATOR_M + 1
    if x > limit:
        raise CapacityError(f"x = {x} exceeds the regulator bound", x, limit)
    terms = []
    for value in range(5, x + 1, 4):
        if isqrt(value) ** 2 == value:
            continue
        terms.append(oriented_class_number(value) * regulator(value).value)
    return fsum(terms)

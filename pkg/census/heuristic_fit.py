import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from math import log
from typing import Final

import numpy as np
import pandas as pd
from sklearn.linear_model import LinearRegression

from census.census_table import CensusRow, CensusTable
from enums import Stratum
from exceptions import ParameterError

logger = logging.getLogger(__name__)

FIT_COLUMNS: Final[list[str]] = ["X", "stratum", "observed", "reference", "ratio"]

Selector = Callable[[CensusRow], bool]
Curve = Callable[[float], float]


@dataclass(frozen=True)
class Series:
    name: str
    selector: Selector
    reference: Curve
    average: bool = False
    weight: Callable[[CensusRow], int] = lambda row: row.total
    # reads rows with m < 0, so X must also lie inside -m_from
    signed: bool = False


def _x_log_x(x: float) -> float:
    return x * log(x)


SERIES: Final[list[Series]] = [
    Series("total", lambda row: True, lambda x: x**1.5, signed=True),
    Series(
        "prime",
        lambda row: row.stratum == Stratum.PRIME,
        lambda x: x**1.5 / log(x),
    ),
    Series("prime_lower", lambda row: row.stratum == Stratum.PRIME, lambda x: x**1.4),
    Series(
        "negative_prime",
        lambda row: row.stratum == Stratum.NEGATIVE_PRIME,
        _x_log_x,
        signed=True,
    ),
    Series("not_prime", lambda row: not row.is_prime, _x_log_x, signed=True),
    Series("two_primes", lambda row: row.stratum == Stratum.TWO_PRIMES, _x_log_x),
    Series(
        "gauss",
        lambda row: row.m > 0,
        lambda x: x**1.5,
        weight=lambda row: row.h_plus,
    ),
    Series(
        "three_primes_average",
        lambda row: row.m > 0 and row.omega == 3,
        log,
        average=True,
    ),
    Series(
        "four_primes_average",
        lambda row: row.m > 0 and row.omega == 4,
        log,
        average=True,
    ),
    Series(
        "negative_two_primes_average",
        lambda row: row.m < 0 and row.omega == 2,
        log,
        average=True,
        signed=True,
    ),
    Series(
        "negative_three_primes_average",
        lambda row: row.m < 0 and row.omega == 3,
        log,
        average=True,
        signed=True,
    ),
]


@dataclass
class HeuristicFit:
    records: pd.DataFrame
    exponents: dict[str, float]

    def to_data_frame(self) -> pd.DataFrame:
        return self.records

    def ratios(self, name: str) -> list[float]:
        return self.records[self.records["stratum"] == name]["ratio"].tolist()


def _observe(series: Series, rows: list[CensusRow]) -> float:
    selected = [series.weight(row) for row in rows if series.selector(row)]
    if series.average:
        return sum(selected) / len(selected) if selected else 0.0
    return float(sum(selected))


def growth_exponent(xs: Sequence[float], observed: Sequence[float]) -> float:
    """slope of log observed against log X by least squares"""
    model = LinearRegression()
    features = np.log(np.asarray(xs, dtype=np.float64)).reshape(-1, 1)
    model.fit(features, np.log(np.asarray(observed, dtype=np.float64)))
    return float(model.coef_[0])


def heuristic_fit(table: CensusTable, checkpoints: Sequence[int]) -> HeuristicFit:
    """
    Observed stratum totals against their conjectured growth at each checkpoint.

    Series over positive m need the census to reach X on the right; series that
    read negative m are skipped at checkpoints beyond -m_from.

    :param table: census reaching the last checkpoint on the positive side
    :param checkpoints: strictly ascending values of X, possibly empty
    """
    if list(checkpoints) != sorted(set(checkpoints)):
        raise ParameterError("checkpoints must be strictly ascending")
    if not checkpoints:
        return HeuristicFit(pd.DataFrame(columns=FIT_COLUMNS), {})
    if checkpoints[-1] > table.m_to:
        raise ParameterError(
            f"checkpoint {checkpoints[-1]} lies outside the census range"
        )

    records = []
    for x in checkpoints:
        rows = table.restrict(x).rows
        for series in SERIES:
            if series.signed and x > -table.m_from:
                logger.debug(
                    f"Skipping {series.name} at X={x}: census does not reach m={-x}"
                )
                continue
            observed = _observe(series, rows)
            reference = series.reference(x)
            if observed <= 0 or reference <= 0:
                logger.debug(f"Skipping {series.name} at X={x}: nothing observed")
                continue
            records.append(
                {
                    "X": x,
                    "stratum": series.name,
                    "observed": observed,
                    "reference": reference,
                    "ratio": observed / reference,
                }
            )
    data = pd.DataFrame(records, columns=FIT_COLUMNS)

    exponents = {}
    for name, group in data.groupby("stratum", sort=True):
        if len(group) >= 2 and not name.endswith("average"):
            exponents[name] = growth_exponent(
                group["X"].tolist(), group["observed"].tolist()
            )
    logger.info(f"Growth exponents: {exponents}")
    return HeuristicFit(data, exponents)

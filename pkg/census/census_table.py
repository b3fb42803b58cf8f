import logging
from collections.abc import Iterator
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Final

import pandas as pd
from sympy import factorint

from census.class_tables import DefiniteClassTable
from census.factor_sieve import FactorSieve
from classgroups.class_group import oriented_class_group
from config import MAX_CENSUS_M
from enums import Stratum
from exceptions import CapacityError, ParameterError
from forms.enumeration import oriented_class_number
from localization.knot_count import LocalizedCount, StratumCount, knot_count
from localization.local_ring import tau_below

logger = logging.getLogger(__name__)

CSV_COLUMNS: Final[list[str]] = [
    "m",
    "disc",
    "total",
    "h_plus",
    "kernel_order",
    "omega",
    "is_prime",
    "structure",
    "flags",
]
CHUNK_SIZE: Final[int] = 2000

_worker_state: dict = {}


@dataclass(frozen=True)
class CensusRow:
    m: int
    total: int
    h_plus: int
    kernel_order: int
    omega: int
    is_prime: bool
    is_prime_power: bool
    structure: str
    flags: tuple[str, ...]
    strata: tuple[StratumCount, ...]

    @classmethod
    def from_count(
        cls, count: LocalizedCount, sieve: FactorSieve, structure: str = ""
    ) -> "CensusRow":
        return cls(
            m=count.m,
            total=count.total,
            h_plus=count.primitive.h_plus,
            kernel_order=count.primitive.kernel_order,
            omega=count.omega,
            is_prime=sieve.is_prime(count.m),
            is_prime_power=sieve.is_prime_power(count.m),
            structure=structure,
            flags=count.flags,
            strata=count.strata,
        )

    @property
    def disc(self) -> int:
        return 1 - 4 * self.m

    @property
    def primitive_orbits(self) -> int:
        return self.strata[0].orbits

    @property
    def stratum(self) -> Stratum:
        if abs(self.m) == 1:
            return Stratum.UNIT
        if self.is_prime:
            return Stratum.PRIME if self.m > 0 else Stratum.NEGATIVE_PRIME
        if self.is_prime_power:
            return Stratum.PRIME_POWER
        if self.m < 0:
            return Stratum.NEGATIVE_COMPOSITE
        return Stratum.TWO_PRIMES if self.omega == 2 else Stratum.MANY_PRIMES

    def to_record(self) -> dict[str, int | bool | str]:
        return {
            "m": self.m,
            "disc": self.disc,
            "total": self.total,
            "h_plus": self.h_plus,
            "kernel_order": self.kernel_order,
            "omega": self.omega,
            "is_prime": self.is_prime,
            "structure": self.structure,
            "flags": ";".join(self.flags),
        }


@dataclass
class CensusTable:
    m_from: int
    m_to: int
    rows: list[CensusRow]

    def __iter__(self) -> Iterator[CensusRow]:
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def row(self, m: int) -> CensusRow:
        return next(row for row in self.rows if row.m == m)

    def total(self) -> int:
        return sum(row.total for row in self.rows)

    def restrict(self, x: int) -> "CensusTable":
        """rows with |m| <= x"""
        rows = [row for row in self.rows if abs(row.m) <= x]
        return CensusTable(max(self.m_from, -x), min(self.m_to, x), rows)

    def to_data_frame(self) -> pd.DataFrame:
        records = [row.to_record() for row in self.rows]
        return pd.DataFrame(records, columns=CSV_COLUMNS)

    @classmethod
    def from_data_frame(cls, data: pd.DataFrame) -> "CensusTable":
        """rows read back from a census CSV; per-content strata are not stored there"""
        rows = [
            CensusRow(
                m=int(record.m),
                total=int(record.total),
                h_plus=int(record.h_plus),
                kernel_order=int(record.kernel_order),
                omega=int(record.omega),
                is_prime=bool(record.is_prime),
                is_prime_power=(
                    len(factorint(abs(int(record.m)))) == 1
                    and not bool(record.is_prime)
                ),
                structure=str(record.structure),
                flags=tuple(flag for flag in str(record.flags).split(";") if flag),
                strata=(),
            )
            for record in data.itertuples(index=False)
        ]
        rows.sort(key=lambda row: row.m)
        return cls(rows[0].m if rows else 0, rows[-1].m if rows else 0, rows)

    def to_summary(self) -> dict:
        flagged = [row.m for row in self.rows if row.flags]
        return {
            "range": [self.m_from, self.m_to],
            "rows": len(self.rows),
            "total": self.total(),
            "strata_totals": {
                stratum.value: value for stratum, value in strata_totals(self).items()
            },
            "content_totals": {
                str(d): value for d, value in content_totals(self).items()
            },
            "flagged_m": flagged,
        }


def _init_worker(sieve_bound: int, table_bound: int, with_structure: bool) -> None:
    _worker_state["sieve"] = FactorSieve(sieve_bound)
    _worker_state["table"] = None
    if table_bound > 0:
        _worker_state["table"] = DefiniteClassTable(table_bound)
    _worker_state["with_structure"] = with_structure


def _h_plus(value: int) -> int:
    table: DefiniteClassTable | None = _worker_state["table"]
    if table is not None and table.covers(value):
        return table.h_plus(value)
    return oriented_class_number(value)


def _census_chunk(values: list[int]) -> list[CensusRow]:
    sieve: FactorSieve = _worker_state["sieve"]
    rows = []
    for m in values:
        count = knot_count(m, factorizer=sieve.factorize, h_plus_lookup=_h_plus)
        structure = ""
        if _worker_state["with_structure"] and not count.primitive.split:
            structure = str(oriented_class_group(count.discriminant).structure)
        rows.append(CensusRow.from_count(count, sieve, structure))
    return rows


def census(
    m_from: int, m_to: int, workers: int = 1, with_structure: bool = True
) -> CensusTable:
    """
    Census of localized class counts for every nonzero m in [m_from, m_to].
    Rows come back sorted by m whatever the number of workers.

    :param m_from: first m
    :param m_to: last m
    :param workers: number of worker processes
    :param with_structure: compute the structure of Cl+(1 - 4m)
    """
    if m_from > m_to:
        raise ParameterError(f"empty range [{m_from}, {m_to}]")
    bound = max(abs(m_from), abs(m_to))
    if bound > MAX_CENSUS_M:
        raise CapacityError(
            f"|m| up to {bound} exceeds the census bound {MAX_CENSUS_M}",
            bound,
            MAX_CENSUS_M,
        )
    values = [m for m in range(m_from, m_to + 1) if m != 0]
    chunks = [values[i : i + CHUNK_SIZE] for i in range(0, len(values), CHUNK_SIZE)]
    # |1 - 4m| <= 4|m| + 1 on both sides; only m > 0 has a definite discriminant
    sieve_bound = 4 * bound + 1
    table_bound = max(m_to, 0)
    logger.info(
        f"Census of {len(values)} values of m in {len(chunks)} chunks "
        f"on {workers} workers"
    )

    rows: list[CensusRow] = []
    if workers == 1:
        _init_worker(sieve_bound, table_bound, with_structure)
        for index, chunk in enumerate(chunks):
            rows.extend(_census_chunk(chunk))
            logger.info(f"Chunk {index + 1}/{len(chunks)} done")
    else:
        initargs = (sieve_bound, table_bound, with_structure)
        with Pool(workers, initializer=_init_worker, initargs=initargs) as pool:
            for index, part in enumerate(pool.imap_unordered(_census_chunk, chunks)):
                rows.extend(part)
                logger.info(f"Chunk {index + 1}/{len(chunks)} done")
    rows.sort(key=lambda row: row.m)
    return CensusTable(m_from, m_to, rows)


def strata_totals(table: CensusTable) -> dict[Stratum, int]:
    totals = {stratum: 0 for stratum in Stratum}
    for row in table:
        totals[row.stratum] += row.total
    return totals


def content_totals(table: CensusTable) -> dict[int, int]:
    """T_d: orbit counts restricted to forms of content d"""
    totals: dict[int, int] = {}
    for row in table:
        for stratum in row.strata:
            totals[stratum.d] = totals.get(stratum.d, 0) + stratum.orbits
    return dict(sorted(totals.items()))


@dataclass(frozen=True)
class SplitTotals:
    threshold: int
    sharp: int
    flat: int
    sharp_bound: float
    flat_bound: int

    @property
    def primitive_total(self) -> int:
        return self.sharp + self.flat


def split_totals(
    table: CensusTable, threshold: int, divisor_bound: float = 2.0
) -> SplitTotals:
    """
    Primitive orbit totals over positive m split by whether m has at least threshold
    prime factors, with the bounds each part is compared against: the class number
    sum divided by the threshold, and twice the class number sum over m with fewer
    than threshold divisors below divisor_bound.
    """
    if threshold < 1:
        raise ParameterError(f"threshold must be positive, got {threshold}")
    positive = [row for row in table if row.m > 0]
    sharp = sum(row.primitive_orbits for row in positive if row.omega >= threshold)
    flat = sum(row.primitive_orbits for row in positive if row.omega < threshold)
    sharp_bound = sum(row.h_plus for row in positive) / threshold
    flat_bound = 2 * sum(
        row.h_plus
        for row in positive
        if tau_below(row.m, divisor_bound) < threshold
    )
    return SplitTotals(threshold, sharp, flat, sharp_bound, flat_bound)

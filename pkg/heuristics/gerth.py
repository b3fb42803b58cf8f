import logging
from collections.abc import Iterable
from typing import Final

import pandas as pd
from sympy import isprime

from classgroups.class_group import group_structure
from heuristics.abelian_groups import FiniteAbelianGroup, surjection_count
from utils import is_squarefree

logger = logging.getLogger(__name__)

GERTH_COLUMNS: Final[list[str]] = [
    "m",
    "disc",
    "principal_genus",
    "surjections",
    "running_mean",
]


def principal_genus(value: int) -> FiniteAbelianGroup:
    """the subgroup of squares of Cl(D)"""
    return group_structure(value).principal_genus_structure()


def gerth_comparison(
    m_values: Iterable[int], target: FiniteAbelianGroup = FiniteAbelianGroup((3,))
) -> pd.DataFrame:
    """
    Running mean of #Sur(Cl(1 - 4m)^2, A) over positive primes m with 1 - 4m
    squarefree; the unweighted heuristic predicts the limit 1.
    """
    records = []
    running = 0
    for m in m_values:
        value = 1 - 4 * m
        if m <= 0 or not isprime(m) or not is_squarefree(value):
            continue
        genus = principal_genus(value)
        surjections = surjection_count(genus, target)
        running += surjections
        records.append(
            {
                "m": m,
                "disc": value,
                "principal_genus": str(genus),
                "surjections": surjections,
                "running_mean": running / (len(records) + 1),
            }
        )
    logger.info(f"{len(records)} prime discriminants compared against {target}")
    return pd.DataFrame(records, columns=GERTH_COLUMNS)

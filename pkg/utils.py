from math import isqrt
from pathlib import Path
from typing import Final

import pandas as pd
from sympy import factorint

from config import INT128_BOUND
from exceptions import CapacityError

CENSUS_DTYPES: Final[dict[str, str]] = {
    "m": "int64",
    "disc": "int64",
    "total": "int64",
    "h_plus": "int64",
    "kernel_order": "int64",
    "omega": "int64",
    "is_prime": "bool",
    "structure": "str",
    "flags": "str",
}


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factorint(abs(n)).values())


def check_int128(*values: int) -> None:
    """fail loudly instead of silently leaving the signed 128-bit range"""
    for value in values:
        if not -INT128_BOUND <= value < INT128_BOUND:
            raise CapacityError(
                f"value {value} leaves the signed 128-bit range", value, INT128_BOUND
            )


def load_census_csv(path: Path) -> pd.DataFrame:
    """
    Load a census CSV written by the census subcommand back into a DataFrame.

    :param path: path to the CSV
    :return: one row per m, sorted by m
    """
    data = pd.read_csv(path, dtype=CENSUS_DTYPES, keep_default_na=False)
    return data.sort_values("m").reset_index(drop=True)

from collections.abc import Hashable, Mapping
from functools import partial
from typing import Callable, Final

import numpy as np
from scipy.stats import chisquare

MIN_EXPECTED: Final[float] = 1e-12


def align(
    first: Mapping[Hashable, float], second: Mapping[Hashable, float]
) -> tuple[np.ndarray, np.ndarray]:
    """both laws as arrays over the union of their supports"""
    keys = sorted(set(first) | set(second), key=str)
    return (
        np.array([float(first.get(key, 0.0)) for key in keys], dtype=np.float64),
        np.array([float(second.get(key, 0.0)) for key in keys], dtype=np.float64),
    )


def total_variation(
    first: Mapping[Hashable, float], second: Mapping[Hashable, float]
) -> float:
    p, q = align(first, second)
    return float(0.5 * np.abs(p - q).sum())


def _chi_square(
    counts: Mapping[Hashable, int], expected: Mapping[Hashable, float], field: str
) -> float:
    """
    Pearson chi-square of observed counts against an expected law; keys missing
    from the law get a negligible expected mass.
    """
    observed, law = align(counts, expected)
    law = np.maximum(law, MIN_EXPECTED)
    expected_counts = law / law.sum() * observed.sum()
    result = chisquare(f_obs=observed, f_exp=expected_counts)
    return float(getattr(result, field))


def relative_error(observed: float, expected: float) -> float:
    return abs(observed - expected) / abs(expected)


METRICS: Final[dict[str, Callable]] = {
    "total_variation": total_variation,
    "chi_square_statistic": partial(_chi_square, field="statistic"),
    "chi_square_p_value": partial(_chi_square, field="pvalue"),
}

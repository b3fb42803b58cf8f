import logging
from collections import Counter, defaultdict
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np
import pandas as pd

from config import MAX_CL_BOUND
from exceptions import CapacityError, ParameterError
from heuristics.abelian_groups import (
    FiniteAbelianGroup,
    aut_order,
    groups_up_to,
    quotient,
    surjection_count,
)

logger = logging.getLogger(__name__)

Law = dict[FiniteAbelianGroup, Fraction]


@dataclass(frozen=True)
class CLDistribution:
    """
    mu^u truncated to groups of order at most bound, optionally to groups whose
    order only involves the given primes; weights are exact and sum to 1.
    """

    u: int
    bound: int
    primes: tuple[int, ...] | None
    groups: tuple[FiniteAbelianGroup, ...]
    weights: tuple[Fraction, ...]

    def law(self) -> Law:
        return dict(zip(self.groups, self.weights))

    def weight_of(self, group: FiniteAbelianGroup) -> Fraction:
        return self.law().get(group, Fraction(0))

    @cached_property
    def probabilities(self) -> np.ndarray:
        return np.array([float(w) for w in self.weights], dtype=np.float64)

    def sample(self, rng: np.random.Generator) -> FiniteAbelianGroup:
        return self.groups[rng.choice(len(self.groups), p=self.probabilities)]

    def to_data_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "group": [str(g) for g in self.groups],
                "order": [g.order for g in self.groups],
                "weight": self.probabilities,
            }
        )


@lru_cache(maxsize=64)
def build_distribution(
    u: int, bound: int, primes: tuple[int, ...] | None = None
) -> CLDistribution:
    """
    :param u: the twist; weight of G is 1 / (|G|^u |Aut G|)
    :param bound: truncation on |G|
    :param primes: keep only groups whose order is a product of these primes
    """
    if u < 0:
        raise ParameterError(f"u must be nonnegative, got {u}")
    if not 1 <= bound <= MAX_CL_BOUND:
        raise CapacityError(
            f"truncation {bound} outside [1, {MAX_CL_BOUND}]", bound, MAX_CL_BOUND
        )
    groups = groups_up_to(bound, primes)
    raw = [Fraction(1, group.order**u * aut_order(group)) for group in groups]
    total = sum(raw)
    logger.debug(f"mu^{u} truncated at {bound}: {len(groups)} groups")
    weights = tuple(w / total for w in raw)
    return CLDistribution(u, bound, primes, tuple(groups), weights)


def _random_element(
    group: FiniteAbelianGroup, rng: np.random.Generator
) -> tuple[int, ...]:
    return tuple(int(rng.integers(0, d)) for d in group.invariant_factors)


def sample_quotient(
    distribution: CLDistribution, k: int, rng: np.random.Generator
) -> FiniteAbelianGroup:
    """G drawn from the distribution, divided by k independent uniform elements"""
    group = distribution.sample(rng)
    elements = tuple(_random_element(group, rng) for _ in range(k))
    return quotient(group, elements)


def sample_quotients(
    distribution: CLDistribution, k: int, n: int, seed: int
) -> Counter:
    logger.info(
        f"Sampling {n} quotients by {k} elements from mu^{distribution.u} "
        f"truncated at {distribution.bound}, seed={seed}"
    )
    rng = np.random.default_rng(seed)
    return Counter(sample_quotient(distribution, k, rng) for _ in range(n))


def constrained_sample(
    distribution: CLDistribution,
    exponents: Sequence[int],
    rng: np.random.Generator,
    max_attempts: int = 10**5,
) -> FiniteAbelianGroup:
    """
    G / <g_1, ..., g_k> with the g_i uniform subject to n_1 g_1 + ... + n_k g_k = 0,
    by rejection.
    """
    if any(n < 0 for n in exponents):
        raise ParameterError(f"exponents must be nonnegative, got {exponents}")
    group = distribution.sample(rng)
    for _ in range(max_attempts):
        elements = [_random_element(group, rng) for _ in exponents]
        relation = tuple(
            sum(n * element[i] for n, element in zip(exponents, elements)) % d
            for i, d in enumerate(group.invariant_factors)
        )
        if not any(relation):
            return quotient(group, tuple(elements))
    logger.error(
        f"Rejection sampling for exponents {tuple(exponents)} gave up on {group}"
    )
    raise CapacityError(
        f"no relation satisfied in {max_attempts} draws from {group}", max_attempts
    )


@lru_cache(maxsize=None)
def _primary_quotient_law(
    group: FiniteAbelianGroup,
) -> tuple[tuple[FiniteAbelianGroup, Fraction], ...]:
    counts: Counter = Counter(
        quotient(group, (element,)) for element in group.elements()
    )
    return tuple(
        (image, Fraction(count, group.order))
        for image, count in sorted(counts.items())
    )


def _quotient_law(group: FiniteAbelianGroup) -> Law:
    """law of G / <g> for uniform g, as a product over the primary parts"""
    law: Law = {FiniteAbelianGroup.trivial(): Fraction(1)}
    for p in group.prime_partitions():
        combined: Law = defaultdict(Fraction)
        for left, left_weight in law.items():
            for right, right_weight in _primary_quotient_law(group.primary_part(p)):
                combined[left.direct_sum(right)] += left_weight * right_weight
        law = dict(combined)
    return law


def quotient_distribution(distribution: CLDistribution, k: int) -> Law:
    """exact law of G / <g_1, ..., g_k> under the truncated distribution"""
    law = distribution.law()
    for _ in range(k):
        pushed: Law = defaultdict(Fraction)
        for group, weight in law.items():
            for image, image_weight in _quotient_law(group).items():
                pushed[image] += weight * image_weight
        law = dict(pushed)
    return law


def moment(distribution: CLDistribution, target: FiniteAbelianGroup) -> Fraction:
    """E[#Sur(G, A)] under the truncated distribution"""
    return sum(
        (
            weight * surjection_count(group, target)
            for group, weight in zip(distribution.groups, distribution.weights)
        ),
        Fraction(0),
    )


def empirical_law(counts: Counter) -> dict[FiniteAbelianGroup, float]:
    n = sum(counts.values())
    return {group: count / n for group, count in counts.items()}

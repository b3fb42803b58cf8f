from fractions import Fraction

import numpy as np
import pytest

from exceptions import CapacityError, ParameterError
from heuristics.abelian_groups import FiniteAbelianGroup
from heuristics.cohen_lenstra import (
    build_distribution,
    constrained_sample,
    empirical_law,
    moment,
    quotient_distribution,
    sample_quotients,
)
from metric_functions import total_variation

Z3 = FiniteAbelianGroup((3,))


def test_weights_are_normalized() -> None:
    distribution = build_distribution(0, 64)
    assert sum(distribution.weights) == 1
    assert distribution.probabilities.sum() == pytest.approx(1.0)
    elementary = distribution.weight_of(FiniteAbelianGroup((2, 2)))
    assert elementary < distribution.weight_of(FiniteAbelianGroup((4,)))


def test_weights_follow_automorphisms() -> None:
    distribution = build_distribution(1, 16)
    trivial = distribution.weight_of(FiniteAbelianGroup.trivial())
    assert distribution.weight_of(FiniteAbelianGroup((2,))) == trivial / 2
    assert distribution.weight_of(FiniteAbelianGroup((2, 2))) == trivial / (4 * 6)
    assert distribution.weight_of(FiniteAbelianGroup((32,))) == 0


def test_restricted_to_primes() -> None:
    distribution = build_distribution(0, 81, primes=(3,))
    assert all(set(group.prime_partitions()) <= {3} for group in distribution.groups)
    assert len(distribution.to_data_frame()) == len(distribution.groups)


@pytest.mark.parametrize("u, expected", [(0, 1.0), (1, 1 / 3)])
def test_three_moment(u: int, expected: float) -> None:
    distribution = build_distribution(u, 3**6, primes=(3,))
    assert float(moment(distribution, Z3)) == pytest.approx(expected, abs=0.02)


def test_pushforward_of_quotients() -> None:
    pushed = quotient_distribution(build_distribution(0, 64), 1)
    assert sum(pushed.values()) == 1
    assert all(group.order <= 64 for group in pushed)
    trivial = FiniteAbelianGroup.trivial()
    assert pushed[trivial] > build_distribution(1, 64).weight_of(trivial)


def test_pushforward_of_a_single_group() -> None:
    distribution = build_distribution(0, 1)
    expected = {FiniteAbelianGroup.trivial(): Fraction(1)}
    assert quotient_distribution(distribution, 3) == expected


def test_sampler_is_reproducible() -> None:
    distribution = build_distribution(0, 64)
    first = sample_quotients(distribution, 1, 500, seed=7)
    assert first == sample_quotients(distribution, 1, 500, seed=7)


def test_sampler_matches_exact_pushforward() -> None:
    distribution = build_distribution(0, 64)
    empirical = empirical_law(sample_quotients(distribution, 1, 20000, seed=1353))
    assert total_variation(empirical, quotient_distribution(distribution, 1)) < 0.02


def test_constrained_sample_with_one_trivial_exponent() -> None:
    distribution = build_distribution(0, 64)
    rng = np.random.default_rng(11)
    counts = {}
    for _ in range(20000):
        group = constrained_sample(distribution, (1, 2), rng)
        counts[group] = counts.get(group, 0) + 1
    empirical = {group: count / 20000 for group, count in counts.items()}
    assert total_variation(empirical, quotient_distribution(distribution, 1)) < 0.03


def test_bad_parameters() -> None:
    with pytest.raises(ParameterError):
        build_distribution(-1, 16)
    with pytest.raises(CapacityError):
        build_distribution(0, 0)
    with pytest.raises(ParameterError):
        constrained_sample(build_distribution(0, 4), (-1,), np.random.default_rng(0))


def test_truncation_bias_shrinks_with_the_bound() -> None:
    distances = [
        total_variation(
            quotient_distribution(build_distribution(0, bound), 1),
            build_distribution(1, bound).law(),
        )
        for bound in (8, 16, 64)
    ]
    assert distances[0] > distances[1] > distances[2]

"""Full scale checks of the census engine; run with pytest -m slow."""
import itertools
import os
from math import log

import numpy as np
import pytest
from sympy import isprime, primerange

from census.census_table import census
from census.class_tables import DefiniteClassTable
from census.densities import lattice_count_s_d, local_density
from census.totals import gauss_total, siegel_total
from classgroups.class_group import group_structure, oriented_elements
from classgroups.composition import compose
from config import DEFAULT_SEED, WORKERS_ENV_VAR
from forms.enumeration import enumerate_classes
from heuristics.abelian_groups import FiniteAbelianGroup, surjection_count
from heuristics.cohen_lenstra import (
    build_distribution,
    moment,
    quotient_distribution,
    sample_quotients,
)
from localization.knot_count import knot_count, orbit_id
from localization.local_ring import (
    LocalRing,
    kernel_generators,
    kernel_relation_holds,
    tau_quarter,
)
from localization.oracle import brute_force_localized_equivalent
from metric_functions import relative_error, total_variation
from seifert.seifert_matrix import (
    alexander_polynomial,
    random_seifert,
    s_equivalent,
    seifert_to_form,
)
from utils import is_squarefree

pytestmark = pytest.mark.slow

WORKERS = int(os.environ.get(WORKERS_ENV_VAR, "1"))
Z3 = FiniteAbelianGroup((3,))


def test_class_numbers_match_group_orders() -> None:
    table = DefiniteClassTable(2000)
    for m in range(1, 2001):
        value = 1 - 4 * m
        positive = [form for form in enumerate_classes(value) if form.a > 0]
        order = group_structure(value).structure.order
        assert len(positive) == table.class_number(m) == order, m


def test_prime_m_has_trivial_kernels() -> None:
    for p in primerange(2, 10**4 + 1):
        for m in (p, -p):
            result = knot_count(m)
            assert all(stratum.kernel_order == 1 for stratum in result.strata)
            assert result.total == sum(stratum.h_plus for stratum in result.strata)


def test_kernel_relation_and_squares() -> None:
    for m in range(2, 10**4 + 1):
        ring = LocalRing.from_m(m)
        assert kernel_relation_holds(ring)
        if m <= 2000:
            squares = {compose(x, x) for x in oriented_elements(ring.discriminant)}
            assert set(kernel_generators(ring, 1).generators) <= squares


def test_kernel_is_at_least_the_quarter_divisor_count() -> None:
    for m in range(1, 10**4 + 1):
        ring = LocalRing.from_m(m)
        assert kernel_generators(ring, 1).order >= tau_quarter(m) >= ring.omega - 3


def test_oracle_matches_orbits() -> None:
    for m in range(1, 201):
        for first, second in itertools.combinations(enumerate_classes(1 - 4 * m), 2):
            predicted = orbit_id(first, m) == orbit_id(second, m)
            found = bool(brute_force_localized_equivalent(first, second, m))
            assert found == predicted, (m, first, second)


def test_local_density_identity() -> None:
    for d in range(1, 10**4 + 1):
        if is_squarefree(d):
            result = local_density(d)
            assert result.count == result.expected_count


@pytest.mark.parametrize("x", [10**3, 10**4])
def test_lattice_count_is_the_content_weighted_total(x: int) -> None:
    expected = sum(
        stratum.h_plus // 2
        for m in range(x, 2 * x + 1)
        for stratum in knot_count(m).strata
    )
    assert lattice_count_s_d(x, 1) == expected


def test_lattice_counts_are_equidistributed() -> None:
    x = 10**5
    base = lattice_count_s_d(x, 1)
    for d in range(2, 31):
        if is_squarefree(d):
            ratio = lattice_count_s_d(x, d) / (float(local_density(d).density) * base)
            assert abs(ratio - 1) < 0.05, d


def test_gauss_and_siegel_trends() -> None:
    table = DefiniteClassTable(10**5)
    small = gauss_total(10**4, table) / 10**6
    large = gauss_total(10**5, table) / 10**7.5
    assert relative_error(large, small) < 0.1
    small, large = siegel_total(10**4) / 10**6, siegel_total(10**5) / 10**7.5
    assert relative_error(large, small) < 0.1


def test_aggregate_trend() -> None:
    table = census(-(10**5), 10**5, workers=WORKERS, with_structure=False)
    checkpoints = [10**3, 10**4, 10**5]
    normalized = [table.restrict(x).total() / x**1.5 for x in checkpoints]
    assert normalized[0] > normalized[1] > normalized[2]
    primes = [
        sum(row.total for row in table.restrict(x) if row.m > 0 and isprime(row.m))
        / (x**1.5 / log(x))
        for x in checkpoints
    ]
    assert max(primes) / min(primes) < 3


@pytest.mark.parametrize("u, expected", [(0, 1.0), (1, 1 / 3)])
def test_cohen_lenstra_moments(u: int, expected: float) -> None:
    distribution = build_distribution(u, 3**6, primes=(3,))
    exact = float(moment(distribution, Z3))
    assert exact == pytest.approx(expected, abs=0.05)
    samples = sample_quotients(distribution, 0, 10**5, seed=DEFAULT_SEED)
    values = np.repeat(
        [surjection_count(group, Z3) for group in samples],
        [count for count in samples.values()],
    ).astype(np.float64)
    sigma = values.std() / np.sqrt(len(values))
    assert abs(values.mean() - exact) < 3 * sigma


def test_quotients_follow_the_exact_pushforward() -> None:
    distribution = build_distribution(0, 64)
    counts = sample_quotients(distribution, 1, 10**5, seed=DEFAULT_SEED)
    empirical = {group: count / 10**5 for group, count in counts.items()}
    assert total_variation(empirical, quotient_distribution(distribution, 1)) < 0.02


def test_seifert_identities() -> None:
    rng = np.random.default_rng(DEFAULT_SEED)
    values = [int(m) for m in rng.integers(-500, 501, size=100) if m != 0]
    for index, m in enumerate(values):
        matrices = random_seifert(m, 10**4 // len(values) + 1, seed=index)
        for matrix in matrices:
            assert alexander_polynomial(matrix).coefficients == (m, 1 - 2 * m, m)
            assert seifert_to_form(matrix).discriminant() == 1 - 4 * m
        for first, second in itertools.combinations(matrices[:8], 2):
            first_id = orbit_id(seifert_to_form(first), m)
            expected = first_id == orbit_id(seifert_to_form(second), m)
            assert s_equivalent(first, second) == expected

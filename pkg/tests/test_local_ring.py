import pytest

from exceptions import CapacityError, DiscriminantError, ParameterError
from localization.local_ring import (
    LocalRing,
    divisor_kernel_classes,
    kernel_generators,
    kernel_relation_holds,
    quarter_root,
    tau_below,
    tau_quarter,
)


@pytest.mark.parametrize(
    "m, strata",
    [
        (6, [1]),
        (7, [1, 3]),
        (-2, [1, 3]),
        (-6, [1, 5]),
        (-20, [1, 3, 9]),
        (-11, [1, 3]),
        (14, [1]),
    ],
)
def test_content_strata(m: int, strata: list[int]) -> None:
    assert LocalRing.from_m(m).content_strata() == strata


def test_ring_data() -> None:
    ring = LocalRing.from_m(12)
    assert ring.discriminant == -47
    assert ring.primes == (2, 3)
    assert ring.omega == 2
    assert LocalRing.from_m(-11).stratum_discriminant(3) == 5
    assert LocalRing.from_m(-2).is_split_stratum(1)


def test_ring_rejects_bad_m() -> None:
    with pytest.raises(ParameterError):
        LocalRing.from_m(0)
    with pytest.raises(CapacityError):
        LocalRing.from_m(2**41)


@pytest.mark.parametrize("m, order", [(4, 1), (6, 3), (2, 1), (3, 1), (12, 5), (-5, 1)])
def test_kernel_orders(m: int, order: int) -> None:
    assert kernel_generators(LocalRing.from_m(m), 1).order == order


def test_kernel_of_split_stratum_is_rejected() -> None:
    with pytest.raises(DiscriminantError):
        kernel_generators(LocalRing.from_m(-2), 1)


@pytest.mark.parametrize("m", [2, 6, 10, 12, 15, 30, 60, 210, -5, -7, -10, -15])
def test_kernel_relation(m: int) -> None:
    assert kernel_relation_holds(LocalRing.from_m(m))


@pytest.mark.parametrize("m", [30, 60, 210, 1001, 2310])
def test_divisor_classes_lie_in_the_kernel_and_separate_small_divisors(m: int) -> None:
    ring = LocalRing.from_m(m)
    kernel = kernel_generators(ring, 1)
    classes = divisor_kernel_classes(ring)
    assert set(classes.values()) <= kernel.elements
    small = [classes[s] for s in classes if s**4 < m]
    assert len(set(small)) == len(small) == tau_quarter(m)
    assert kernel.order >= tau_quarter(m)


def test_divisor_counts() -> None:
    assert tau_below(12, 3.5) == 3
    assert tau_quarter(16) == 2
    assert tau_quarter(81) == 2
    assert tau_quarter(6) == 1
    assert quarter_root(16) == 2
    assert quarter_root(80) == 2
    assert quarter_root(81) == 3

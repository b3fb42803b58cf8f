import logging
from collections.abc import Callable
from dataclasses import asdict, dataclass
from math import isqrt

from sympy import totient

from enums import RowFlag
from exceptions import DiscriminantError
from forms.enumeration import oriented_class_number
from forms.quad_form import QuadForm
from forms.reduction import canonical_form
from localization.local_ring import (
    Factorizer,
    LocalRing,
    kernel_generators,
    tau_quarter,
)
from utils import is_square

logger = logging.getLogger(__name__)

ClassNumberLookup = Callable[[int], int]


@dataclass(frozen=True)
class StratumCount:
    d: int
    discriminant: int
    h_plus: int
    kernel_order: int
    orbits: int
    split: bool

    def to_dict(self) -> dict[str, int | bool]:
        return {
            "d": self.d,
            "disc": self.discriminant,
            "h_plus": self.h_plus,
            "kernel_order": self.kernel_order,
            "orbits": self.orbits,
            "split_flag": self.split,
        }


@dataclass(frozen=True)
class LocalizedCount:
    m: int
    strata: tuple[StratumCount, ...]
    omega: int
    tau_quarter: int

    @property
    def discriminant(self) -> int:
        return 1 - 4 * self.m

    @property
    def total(self) -> int:
        return sum(stratum.orbits for stratum in self.strata)

    @property
    def primitive(self) -> StratumCount:
        return self.strata[0]

    @property
    def flags(self) -> tuple[str, ...]:
        if any(stratum.split for stratum in self.strata):
            return (RowFlag.SPLIT_STRATUM_UNQUOTIENTED.value,)
        return ()

    def stratum(self, d: int) -> StratumCount:
        return next(stratum for stratum in self.strata if stratum.d == d)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "D": self.discriminant,
            "strata": [stratum.to_dict() for stratum in self.strata],
            "total": self.total,
            "omega": self.omega,
            "tau_quarter": self.tau_quarter,
            "flags": list(self.flags),
        }


def _count_stratum(
    ring: LocalRing, d: int, h_plus_lookup: ClassNumberLookup
) -> StratumCount:
    value = ring.stratum_discriminant(d)
    if is_square(value):
        classes = int(totient(isqrt(value)))
        logger.warning(
            f"m={ring.m}: stratum d={d} has square discriminant {value}, "
            "counted without quotient"
        )
        return StratumCount(d, value, classes, 1, classes, True)
    h_plus = h_plus_lookup(value)
    kernel_order = kernel_generators(ring, d).order
    assert (
        h_plus % kernel_order == 0
    ), f"|K| = {kernel_order} does not divide h+({value}) = {h_plus}"
    return StratumCount(d, value, h_plus, kernel_order, h_plus // kernel_order, False)


def knot_count(
    m: int,
    factorizer: Factorizer | None = None,
    h_plus_lookup: ClassNumberLookup | None = None,
) -> LocalizedCount:
    """
    Number of SL_2(Z[1/m])-classes of forms of discriminant 1 - 4m, split by content.

    :param m: nonzero integer, |m| <= 2^40
    :param factorizer: factorization routine, a sieve lookup in bulk runs
    :param h_plus_lookup: h+(D') for the strata, enumeration by default
    """
    ring = LocalRing.from_m(m, factorizer)
    lookup = h_plus_lookup or oriented_class_number
    strata = tuple(_count_stratum(ring, d, lookup) for d in ring.content_strata())
    return LocalizedCount(m, strata, ring.omega, tau_quarter(m))


@dataclass(frozen=True, order=True)
class OrbitId:
    content: int
    sign: int
    representative: QuadForm
    split: bool = False

    def to_dict(self) -> dict:
        return asdict(self) | {"representative": str(self.representative)}


def orbit_id(form: QuadForm, m: int) -> OrbitId:
    """
    Canonical label of the SL_2(Z[1/m])-orbit of a form of discriminant 1 - 4m:
    its content, its sign and the least canonical form in its kernel coset.
    Forms of square stratum discriminant keep their SL_2(Z) normal form.
    """
    ring = LocalRing.from_m(m)
    if form.discriminant() != ring.discriminant:
        raise DiscriminantError(
            f"{form} does not have discriminant {ring.discriminant}"
        )
    d = form.content()
    primitive = form.divide(d)
    if ring.is_split_stratum(d):
        return OrbitId(d, 1, canonical_form(primitive), True)
    kernel = kernel_generators(ring, d)
    sign = -1 if primitive.discriminant() < 0 and primitive.a < 0 else 1
    return OrbitId(d, sign, kernel.coset_minimum(primitive))

import logging
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property, lru_cache

from sympy import factorint, multiplicity

from classgroups.composition import compose, power, principal_form
from config import MAX_GROUP_DISC
from enums import FormKind
from exceptions import CapacityError, DiscriminantError
from forms.enumeration import (
    enumerate_classes,
    indefinite_classes,
    positive_definite_classes,
)
from forms.quad_form import Discriminant, QuadForm
from heuristics.abelian_groups import FiniteAbelianGroup

logger = logging.getLogger(__name__)


def generated_subgroup(
    generators: Iterable[QuadForm], identity: QuadForm
) -> frozenset[QuadForm]:
    """closure of the generators under composition, by breadth first search"""
    generators = list(generators)
    members = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for generator in generators:
            product = compose(current, generator)
            if product not in members:
                members.add(product)
                queue.append(product)
    return frozenset(members)


def structure_from_orders(orders: list[int]) -> FiniteAbelianGroup:
    """
    Invariant factors of a finite abelian group from the multiset of its element
    orders. The number of elements killed by p^j is p^(r_1 + ... + r_j) where r_j
    counts the cyclic p-factors of exponent at least j.
    """
    size = len(orders)
    partitions = {}
    for p, v in factorint(size).items():
        killed = [
            multiplicity(p, sum(1 for o in orders if p**j % o == 0))
            for j in range(v + 1)
        ]
        steps = [killed[j] - killed[j - 1] for j in range(1, v + 1)]
        partitions[p] = [
            sum(1 for r in steps if r >= i) for i in range(1, steps[0] + 1)
        ]
    return FiniteAbelianGroup.from_prime_partitions(partitions)


@dataclass(frozen=True)
class ClassGroup:
    """
    Classes of primitive forms of discriminant D under composition: positive definite
    classes for D < 0, all SL_2(Z)-classes (the narrow class group) for D > 0.
    """
    discriminant: int
    elements: tuple[QuadForm, ...]

    @cached_property
    def identity(self) -> QuadForm:
        return principal_form(self.discriminant)

    @property
    def order(self) -> int:
        return len(self.elements)

    def compose(self, first: QuadForm, second: QuadForm) -> QuadForm:
        return compose(first, second)

    def power(self, form: QuadForm, exponent: int) -> QuadForm:
        return power(form, exponent)

    def order_of(self, form: QuadForm) -> int:
        exponent = self.order
        for p in factorint(self.order):
            while (
                exponent % p == 0
                and self.power(form, exponent // p) == self.identity
            ):
                exponent //= p
        return exponent

    def subgroup(self, generators: Iterable[QuadForm]) -> frozenset[QuadForm]:
        return generated_subgroup(generators, self.identity)

    def squares(self) -> frozenset[QuadForm]:
        return frozenset(self.compose(x, x) for x in self.elements)

    @cached_property
    def structure(self) -> FiniteAbelianGroup:
        return structure_from_orders([self.order_of(x) for x in self.elements])

    @cached_property
    def generators(self) -> tuple[QuadForm, ...]:
        """greedy generating set, scanning classes in sorted order"""
        chosen: list[QuadForm] = []
        span = frozenset([self.identity])
        for candidate in self.elements:
            if len(span) == self.order:
                break
            if candidate not in span:
                chosen.append(candidate)
                span = self.subgroup(chosen)
        return tuple(chosen)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.structure.invariant_factors

    @property
    def two_rank(self) -> int:
        return self.structure.p_rank(2)

    def principal_genus_structure(self) -> FiniteAbelianGroup:
        """structure of the subgroup of squares"""
        squares = self.squares()
        return structure_from_orders([self.order_of(x) for x in squares])


@dataclass(frozen=True)
class OrientedClassGroup:
    """
    Cl+(D). For D < 0 this is Cl(D) x {+1, -1}, the sign being carried by the sign
    of a definite form; for D > 0 it coincides with the narrow class group.
    """

    class_group: ClassGroup

    @property
    def discriminant(self) -> int:
        return self.class_group.discriminant

    @property
    def order(self) -> int:
        factor = 2 if self.discriminant < 0 else 1
        return factor * self.class_group.order

    def elements(self) -> list[QuadForm]:
        if self.discriminant > 0:
            return list(self.class_group.elements)
        positive = list(self.class_group.elements)
        return sorted(positive + [x.negate() for x in positive])

    @property
    def structure(self) -> FiniteAbelianGroup:
        if self.discriminant < 0:
            return self.class_group.structure.direct_sum(FiniteAbelianGroup((2,)))
        return self.class_group.structure


def _check_group_discriminant(value: int) -> None:
    if abs(value) > MAX_GROUP_DISC:
        raise CapacityError(
            f"|D| = {abs(value)} exceeds the group bound {MAX_GROUP_DISC}",
            value,
            MAX_GROUP_DISC,
        )
    if Discriminant(value).kind == FormKind.SPLIT:
        raise DiscriminantError(
            f"{value} is a square; its forms do not carry a class group here"
        )


@lru_cache(maxsize=1024)
def group_structure(value: int) -> ClassGroup:
    """
    The class group of discriminant value with invariant factors and generators.

    Returns:
        for -23: invariant factors (3,), generator (2,-1,3)
    """
    _check_group_discriminant(value)
    if value < 0:
        elements = positive_definite_classes(value)
    else:
        elements = indefinite_classes(value)
    group = ClassGroup(value, tuple(elements))
    logger.debug(f"Cl({value}) = {group.structure}")
    return group


def oriented_class_group(value: int) -> OrientedClassGroup:
    _check_group_discriminant(value)
    return OrientedClassGroup(group_structure(value))


def oriented_elements(value: int) -> list[QuadForm]:
    """canonical signed forms, one per oriented class, without the group structure"""
    return enumerate_classes(value)

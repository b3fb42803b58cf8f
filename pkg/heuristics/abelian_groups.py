import itertools
from collections import defaultdict
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod

from sympy import Matrix, factorint
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import GF, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.utilities.iterables import partitions

from exceptions import ParameterError

Element = tuple[int, ...]


@dataclass(frozen=True, order=True)
class FiniteAbelianGroup:
    """
    Z/d_1 x ... x Z/d_r in invariant factor normal form, d_1 | d_2 | ... | d_r
    and d_1 > 1.
    """

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        factors = self.invariant_factors
        if any(d < 2 for d in factors) or any(
            b % a for a, b in zip(factors, factors[1:])
        ):
            raise ParameterError(f"{factors} is not an invariant factor sequence")

    @classmethod
    def trivial(cls) -> "FiniteAbelianGroup":
        return cls(())

    @classmethod
    def from_prime_partitions(
        cls, partitions_by_prime: Mapping[int, Sequence[int]]
    ) -> "FiniteAbelianGroup":
        exponents = {
            p: sorted((e for e in parts if e > 0), reverse=True)
            for p, parts in partitions_by_prime.items()
        }
        length = max((len(parts) for parts in exponents.values()), default=0)
        factors = []
        for i in range(length):
            factors.append(
                prod(p ** parts[i] for p, parts in exponents.items() if i < len(parts))
            )
        return cls(tuple(reversed(factors)))

    @classmethod
    def from_cyclic_orders(cls, orders: Sequence[int]) -> "FiniteAbelianGroup":
        """
        Normal form of a direct sum of cyclic groups.

        Returns:
            [2, 3, 4] -> Z/2 x Z/12
        """
        parts: dict[int, list[int]] = defaultdict(list)
        for order in orders:
            if order < 1:
                raise ParameterError(f"cyclic order {order} is not positive")
            for p, e in factorint(order).items():
                parts[p].append(e)
        return cls.from_prime_partitions(parts)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "1"
        return "x".join(f"Z/{d}" for d in self.invariant_factors)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def p_rank(self, p: int) -> int:
        return sum(1 for d in self.invariant_factors if d % p == 0)

    def prime_partitions(self) -> dict[int, tuple[int, ...]]:
        parts: dict[int, list[int]] = defaultdict(list)
        for d in self.invariant_factors:
            for p, e in factorint(d).items():
                parts[p].append(e)
        return {p: tuple(sorted(es, reverse=True)) for p, es in sorted(parts.items())}

    def primary_part(self, p: int) -> "FiniteAbelianGroup":
        parts = self.prime_partitions().get(p, ())
        return FiniteAbelianGroup.from_prime_partitions({p: parts})

    def restrict_to_primes(self, primes: Sequence[int]) -> "FiniteAbelianGroup":
        parts = self.prime_partitions()
        kept = {p: parts[p] for p in primes if p in parts}
        return FiniteAbelianGroup.from_prime_partitions(kept)

    def direct_sum(self, other: "FiniteAbelianGroup") -> "FiniteAbelianGroup":
        parts: dict[int, list[int]] = defaultdict(list)
        for group in (self, other):
            for p, es in group.prime_partitions().items():
                parts[p].extend(es)
        return FiniteAbelianGroup.from_prime_partitions(parts)

    def elements(self) -> Iterator[Element]:
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))


def aut_order(group: FiniteAbelianGroup) -> int:
    """|Aut G| as a product over primary parts of the closed form for p-groups"""
    total = 1
    for p, parts in group.prime_partitions().items():
        e = sorted(parts)
        n = len(e)
        indices = range(1, n + 1)
        upper = [max(j for j in indices if e[j - 1] == e[k - 1]) for k in indices]
        lower = [min(j for j in indices if e[j - 1] == e[k - 1]) for k in indices]
        total *= prod(p ** upper[k - 1] - p ** (k - 1) for k in range(1, n + 1))
        total *= prod(p ** (e[j] * (n - upper[j])) for j in range(n))
        total *= prod(p ** ((e[i] - 1) * (n - lower[i] + 1)) for i in range(n))
    return total


def _exponent_partitions(e: int) -> list[tuple[int, ...]]:
    result = []
    for partition in partitions(e):
        parts = (part for part, count in partition.items() for _ in range(count))
        result.append(tuple(sorted(parts, reverse=True)))
    return sorted(result)


def groups_of_order(n: int) -> list[FiniteAbelianGroup]:
    if n < 1:
        raise ParameterError(f"group order {n} is not positive")
    factorization = sorted(factorint(n).items())
    choices = [
        [(p, parts) for parts in _exponent_partitions(e)] for p, e in factorization
    ]
    groups = [
        FiniteAbelianGroup.from_prime_partitions(dict(combination))
        for combination in itertools.product(*choices)
    ]
    return sorted(groups)


def groups_up_to(
    bound: int, primes: Sequence[int] | None = None
) -> list[FiniteAbelianGroup]:
    """
    All finite abelian groups of order at most bound, optionally only those whose
    order is divisible by no prime outside primes.
    """
    groups = []
    for n in range(1, bound + 1):
        if primes is not None and any(p not in primes for p in factorint(n)):
            continue
        groups.extend(groups_of_order(n))
    return groups


@lru_cache(maxsize=None)
def quotient(
    group: FiniteAbelianGroup, elements: tuple[Element, ...]
) -> FiniteAbelianGroup:
    """
    G / <elements> from the Smith normal form of the relation matrix.
    Each element is given in the coordinates of the invariant factors of group.
    """
    r = group.rank
    if r == 0 or not elements:
        return group
    size = r + len(elements)
    rows = [
        [d if j == i else 0 for j in range(size)]
        for i, d in enumerate(group.invariant_factors)
    ]
    rows += [list(element) + [0] * len(elements) for element in elements]
    normal = smith_normal_form(Matrix(rows), domain=ZZ)
    diagonal = [abs(int(normal[i, i])) for i in range(size)]
    return FiniteAbelianGroup.from_cyclic_orders([d for d in diagonal if d > 1])


def hom_count(source: FiniteAbelianGroup, target: FiniteAbelianGroup) -> int:
    return prod(
        gcd(d, f) for d in source.invariant_factors for f in target.invariant_factors
    )


def surjection_count(source: FiniteAbelianGroup, target: FiniteAbelianGroup) -> int:
    """#Sur(source, target), multiplicative over the primes dividing |target|"""
    total = 1
    for p in target.prime_partitions():
        total *= _primary_surjections(
            source.primary_part(p), target.primary_part(p), p
        )
        if total == 0:
            return 0
    return total


@lru_cache(maxsize=None)
def _primary_surjections(
    source: FiniteAbelianGroup, target: FiniteAbelianGroup, p: int
) -> int:
    """
    Count images of the generators of a p-group; a tuple generates the target exactly
    when its reduction mod p spans target / p target.
    """
    if source.rank < target.rank:
        return 0
    field = GF(p)
    candidates = []
    for d in source.invariant_factors:
        reductions: dict[Element, int] = defaultdict(int)
        for x in target.elements():
            if all((d * xi) % f == 0 for xi, f in zip(x, target.invariant_factors)):
                reductions[tuple(xi % p for xi in x)] += 1
        candidates.append(list(reductions.items()))
    total = 0
    for combination in itertools.product(*candidates):
        rows = [[field(v) for v in vector] for vector, _ in combination]
        rank = DomainMatrix(rows, (len(rows), target.rank), field).rank()
        if rank == target.rank:
            total += prod(count for _, count in combination)
    return total

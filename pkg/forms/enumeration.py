import logging
from functools import lru_cache
from math import gcd, isqrt

from sympy import divisors

from enums import FormKind
from forms.quad_form import Discriminant, QuadForm
from forms.reduction import _cycle_key, reduction_cycle

logger = logging.getLogger(__name__)


def positive_definite_classes(
    value: int, primitive_only: bool = True
) -> list[QuadForm]:
    """
    Reduced positive definite forms of a negative discriminant, sorted.

    Returns:
        for -23: [(1,1,6), (2,-1,3), (2,1,3)]
    """
    forms = []
    b = value % 2
    while 3 * b * b <= -value:
        n = (b * b - value) // 4
        for a in divisors(n):
            c = n // a
            if a < max(b, 1) or a > c:
                continue
            forms.append(QuadForm(a, b, c))
            if 0 < b < a < c:
                forms.append(QuadForm(a, -b, c))
        b += 2
    if primitive_only:
        forms = [form for form in forms if form.is_primitive()]
    return sorted(forms)


def _reduced_indefinite_forms(value: int) -> list[QuadForm]:
    root = isqrt(value)
    forms = []
    for b in range(1, root + 1):
        if (b - value) % 2:
            continue
        n = (value - b * b) // 4
        for a in divisors(n):
            if 2 * a + b > root and 2 * a - b <= root:
                forms.append(QuadForm(a, b, -(n // a)))
                forms.append(QuadForm(-a, b, n // a))
    return forms


def indefinite_classes(value: int, primitive_only: bool = True) -> list[QuadForm]:
    """one canonical form per reduction cycle"""
    seen: set[QuadForm] = set()
    representatives = []
    for form in _reduced_indefinite_forms(value):
        if form in seen or (primitive_only and not form.is_primitive()):
            continue
        cycle = [member for member, _ in reduction_cycle(form)]
        seen.update(cycle)
        representatives.append(min(cycle, key=_cycle_key))
    return sorted(representatives)


def split_classes(value: int, primitive_only: bool = True) -> list[QuadForm]:
    k = isqrt(value)
    return [QuadForm(a, k, 0) for a in range(k) if not primitive_only or gcd(a, k) == 1]


def enumerate_classes(value: int, primitive_only: bool = True) -> list[QuadForm]:
    """
    One canonical representative per SL_2(Z)-class of forms of discriminant value.
    For negative discriminants both the positive and the negative definite classes
    are listed.

    :param value: the discriminant
    :param primitive_only: drop forms whose coefficients share a factor
    """
    discriminant = Discriminant(value)
    match discriminant.kind:
        case FormKind.NEGATIVE_DEFINITE:
            positive = positive_definite_classes(value, primitive_only)
            return sorted(positive + [form.negate() for form in positive])
        case FormKind.INDEFINITE_NON_SQUARE:
            return indefinite_classes(value, primitive_only)
        case FormKind.SPLIT:
            return split_classes(value, primitive_only)


@lru_cache(maxsize=65536)
def oriented_class_number(value: int) -> int:
    """h+(D): number of primitive SL_2(Z)-classes, counting both signs when D < 0"""
    count = len(enumerate_classes(value))
    logger.debug(f"h+({value}) = {count}")
    return count


def class_number(value: int) -> int:
    """h(D): positive definite classes for D < 0, SL_2(Z)-classes otherwise"""
    if value < 0:
        return oriented_class_number(value) // 2
    return oriented_class_number(value)

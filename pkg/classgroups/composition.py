import logging

from sympy import isprime, sqrt_mod
from sympy.core.intfunc import igcdex

from exceptions import (
    DiscriminantError,
    ImprimitiveFormError,
    InertPrimeError,
    ParameterError,
)
from forms.quad_form import Discriminant, QuadForm
from forms.reduction import canonical_form, reduction_cycle, reduce_form

logger = logging.getLogger(__name__)


def principal_form(discriminant: int) -> QuadForm:
    """canonical form of the identity class"""
    Discriminant(discriminant)
    parity = discriminant % 2
    return canonical_form(QuadForm(1, parity, (parity - discriminant) // 4))


def _positive_lead(form: QuadForm) -> QuadForm:
    """an equivalent form with positive first coefficient"""
    if form.a > 0:
        return form
    reduced, _ = reduce_form(form)
    if reduced.a > 0:
        return reduced
    return next(member for member, _ in reduction_cycle(reduced) if member.a > 0)


def _sign(form: QuadForm) -> int:
    """-1 for negative definite forms, 1 otherwise"""
    return -1 if form.discriminant() < 0 and form.a < 0 else 1


def compose(first: QuadForm, second: QuadForm) -> QuadForm:
    """
    Dirichlet composition in Shanks' formulation, followed by reduction.
    For negative discriminants signs multiply, so negative definite classes
    behave as the second coset of the oriented class group.

    :param first: primitive form
    :param second: primitive form of the same discriminant
    :return: canonical representative of the composite class
    """
    discriminant = first.discriminant()
    if second.discriminant() != discriminant:
        raise DiscriminantError(f"{first} and {second} have different discriminants")
    for form in (first, second):
        if not form.is_primitive():
            raise ImprimitiveFormError(f"{form} is not primitive")
    sign = _sign(first) * _sign(second)
    if discriminant < 0:
        first = first if first.a > 0 else first.negate()
        second = second if second.a > 0 else second.negate()
    first, second = _positive_lead(first), _positive_lead(second)
    if first.a > second.a:
        first, second = second, first

    s = (first.b + second.b) // 2
    n = second.b - s
    if second.a % first.a == 0:
        y1, d = 0, first.a
    else:
        u, _, d = (int(v) for v in igcdex(second.a, first.a))
        y1 = u
    if s % d == 0:
        x2, y2, d1 = 0, -1, d
    else:
        x2, y2, d1 = (int(v) for v in igcdex(s, d))
        y2 = -y2
    v1, v2 = first.a // d1, second.a // d1
    r = (y1 * y2 * n - x2 * second.c) % v1
    b3 = second.b + 2 * v2 * r
    a3 = v1 * v2
    numerator = b3 * b3 - discriminant
    assert (
        numerator % (4 * a3) == 0
    ), f"composition of {first} and {second} left the discriminant"
    composite = canonical_form(QuadForm(a3, b3, numerator // (4 * a3)))
    return composite.negate() if sign < 0 else composite


def inverse(form: QuadForm) -> QuadForm:
    return canonical_form(QuadForm(form.a, -form.b, form.c))


def power(form: QuadForm, exponent: int) -> QuadForm:
    """binary powering; negative exponents go through the inverse"""
    if exponent < 0:
        return power(inverse(form), -exponent)
    result = principal_form(form.discriminant())
    if _sign(form) < 0 and exponent % 2:
        result = result.negate()
    base = canonical_form(form if _sign(form) > 0 else form.negate())
    while exponent:
        if exponent & 1:
            result = compose(result, base)
        base = compose(base, base)
        exponent >>= 1
    return result


def prime_form(discriminant: int, p: int) -> QuadForm:
    """
    The form (p, b, c) of discriminant D with the least b in (0, 2p) such that
    b^2 = D mod 4p.

    :param discriminant: the discriminant D, coprime to p
    :param p: a prime that splits in the order of discriminant D
    """
    if not isprime(p):
        raise ParameterError(f"{p} is not prime")
    if discriminant % p == 0:
        raise InertPrimeError(f"{p} divides the discriminant {discriminant}")
    roots = sqrt_mod(discriminant, 4 * p, all_roots=True) or []
    candidates = sorted(int(b) for b in roots if 0 < b < 2 * p)
    if not candidates:
        raise InertPrimeError(f"{p} is inert for discriminant {discriminant}")
    b = candidates[0]
    return QuadForm(p, b, (b * b - discriminant) // (4 * p))

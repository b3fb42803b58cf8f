import logging
from math import gcd, isqrt

from sympy.core.intfunc import igcdex

from enums import FormKind
from exceptions import DiscriminantError, ZeroFormError
from forms.quad_form import Discriminant, GLTransform, QuadForm

logger = logging.getLogger(__name__)


def is_reduced(form: QuadForm) -> bool:
    discriminant = Discriminant(form.discriminant())
    match discriminant.kind:
        case FormKind.NEGATIVE_DEFINITE:
            return _is_reduced_definite(form if form.a > 0 else form.negate())
        case FormKind.INDEFINITE_NON_SQUARE:
            return _is_reduced_indefinite(form, discriminant.root_floor)
        case FormKind.SPLIT:
            k = discriminant.root_floor
            return form.c == 0 and form.b == k and 0 <= form.a < k


def _is_reduced_definite(form: QuadForm) -> bool:
    a, b, c = form.a, form.b, form.c
    if not abs(b) <= a <= c:
        return False
    return b >= 0 or (abs(b) != a and a != c)


def _is_reduced_indefinite(form: QuadForm, root: int) -> bool:
    """|sqrt(D) - 2|a|| < b < sqrt(D) in integer arithmetic, root = floor(sqrt(D))"""
    two_a = 2 * abs(form.a)
    return 0 < form.b <= root and two_a + form.b > root and two_a - form.b <= root


def _normalize_indefinite(b: int, c: int, root: int) -> int:
    """
    The representative of b mod 2|c| in (sqrt(D) - 2|c|, sqrt(D)) or, for large |c|,
    in (-|c|, |c|].
    """
    modulus = 2 * abs(c)
    if abs(c) <= root:
        return root - (root - b) % modulus
    return abs(c) - (abs(c) - b) % modulus


def rho(form: QuadForm) -> tuple[QuadForm, GLTransform]:
    """
    One reduction step for an indefinite form of non-square discriminant:
    (a, b, c) -> (c, b', (b'^2 - D) / 4c) with b' = -b mod 2|c| normalized.

    :param form: form with positive non-square discriminant
    :return: the next form and the step matrix [[0, -1], [1, t]]
    """
    discriminant = Discriminant(form.discriminant())
    if discriminant.kind != FormKind.INDEFINITE_NON_SQUARE:
        raise DiscriminantError(
            "rho is defined for non-square positive discriminants, "
            f"got {discriminant.value}"
        )
    new_b = _normalize_indefinite(-form.b, form.c, discriminant.root_floor)
    t = (new_b + form.b) // (2 * form.c)
    step = GLTransform(0, -1, 1, t)
    return form.apply(step), step


def reduction_cycle(form: QuadForm) -> list[tuple[QuadForm, GLTransform]]:
    """
    The cycle of reduced forms through a reduced indefinite form, each member paired
    with the product of step matrices carrying the starting form to it.
    The final step back to the start is not included in the list.
    """
    if not is_reduced(form):
        raise DiscriminantError(f"{form} is not a reduced indefinite form")
    cycle = [(form, GLTransform.identity())]
    current, transform = rho(form)
    while current != form:
        cycle.append((current, transform))
        current, step = rho(current)
        transform = transform @ step
    return cycle


def cycle_automorph(form: QuadForm) -> GLTransform:
    """product of the step matrices around the cycle of a reduced indefinite form"""
    last, transform = reduction_cycle(form)[-1]
    _, step = rho(last)
    return transform @ step


def _cycle_key(form: QuadForm) -> tuple[bool, int, int, int]:
    return form.a < 0, abs(form.a), form.b, form.c


def _reduce_definite(form: QuadForm) -> tuple[QuadForm, GLTransform]:
    if form.a < 0:
        reduced, transform = _reduce_definite(form.negate())
        return reduced.negate(), transform
    a, b = form.a, form.b
    transform = GLTransform(1, (a - b) // (2 * a), 0, 1)
    form = form.apply(transform)
    while form.a > form.c or (form.a == form.c and form.b < 0):
        s = (form.c + form.b) // (2 * form.c)
        step = GLTransform(0, -1, 1, s)
        form = form.apply(step)
        transform = transform @ step
    return form, transform


def _reduce_indefinite(form: QuadForm, root: int) -> tuple[QuadForm, GLTransform]:
    transform = GLTransform.identity()
    while not _is_reduced_indefinite(form, root):
        form, step = rho(form)
        transform = transform @ step
    best, best_transform = form, transform
    for member, member_transform in reduction_cycle(form)[1:]:
        if _cycle_key(member) < _cycle_key(best):
            best, best_transform = member, transform @ member_transform
    return best, best_transform


def _isotropic_vectors(form: QuadForm, k: int) -> list[tuple[int, int]]:
    if form.a == 0:
        candidates = [(1, 0), (-form.c, form.b)]
    else:
        candidates = [(-form.b + k, 2 * form.a), (-form.b - k, 2 * form.a)]
    vectors = []
    for x, y in candidates:
        g = gcd(x, y)
        vectors.append((x // g, y // g))
    return vectors


def _reduce_split(form: QuadForm, k: int) -> tuple[QuadForm, GLTransform]:
    for x, y in _isotropic_vectors(form, k):
        u, v, _ = igcdex(x, y)
        completion = GLTransform(x, -int(v), y, int(u))
        turned = form.apply(completion @ GLTransform.swap())
        if turned.b != k:
            continue
        shear = GLTransform(1, 0, -(turned.a // k), 1)
        return turned.apply(shear), completion @ GLTransform.swap() @ shear
    raise AssertionError(f"no isotropic vector of {form} gives middle coefficient {k}")


def reduce_form(form: QuadForm) -> tuple[QuadForm, GLTransform]:
    """
    Canonical representative of the SL_2(Z)-class of a form together with a witness.

    Definite forms reduce to |b| <= |a| <= |c| with the usual boundary convention,
    indefinite forms to the member of their reduction cycle with the least positive
    leading coefficient (ties broken by b then c), and forms of square discriminant k^2
    to (A, k, 0) with 0 <= A < k.

    :param form: nonzero form of nonzero discriminant
    :return: (canonical form, M) with form.apply(M) == canonical form
    """
    if form.is_zero():
        raise ZeroFormError("the zero form has no equivalence class")
    discriminant = Discriminant(form.discriminant())
    match discriminant.kind:
        case FormKind.NEGATIVE_DEFINITE:
            return _reduce_definite(form)
        case FormKind.INDEFINITE_NON_SQUARE:
            return _reduce_indefinite(form, discriminant.root_floor)
        case FormKind.SPLIT:
            return _reduce_split(form, isqrt(discriminant.value))


def canonical_form(form: QuadForm) -> QuadForm:
    return reduce_form(form)[0]


def equivalent(first: QuadForm, second: QuadForm) -> tuple[bool, GLTransform | None]:
    """
    Decide SL_2(Z)-equivalence.

    :return: (True, M) with first.apply(M) == second, or (False, None)
    """
    if first.discriminant() != second.discriminant():
        raise DiscriminantError(f"{first} and {second} have different discriminants")
    first_reduced, first_transform = reduce_form(first)
    second_reduced, second_transform = reduce_form(second)
    if first_reduced != second_reduced:
        return False, None
    return True, first_transform @ second_transform.inverse()

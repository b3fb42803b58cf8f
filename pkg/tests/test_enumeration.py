import itertools

import pytest

from forms.enumeration import (
    class_number,
    enumerate_classes,
    oriented_class_number,
    positive_definite_classes,
)
from forms.quad_form import QuadForm
from forms.reduction import canonical_form, is_reduced


def test_positive_definite_classes_of_minus_23() -> None:
    assert positive_definite_classes(-23) == [
        QuadForm(1, 1, 6),
        QuadForm(2, -1, 3),
        QuadForm(2, 1, 3),
    ]


def test_enumerate_includes_negative_definite_classes() -> None:
    classes = enumerate_classes(-23)
    assert len(classes) == 6
    assert QuadForm(-2, 1, -3) in classes


@pytest.mark.parametrize(
    "value, expected",
    [
        (-3, 1),
        (-7, 1),
        (-11, 1),
        (-15, 2),
        (-19, 1),
        (-23, 3),
        (-47, 5),
        (-71, 7),
        (-84, 4),
        (-4, 1),
        (-20, 2),
    ],
)
def test_class_numbers(value: int, expected: int) -> None:
    assert class_number(value) == expected
    assert oriented_class_number(value) == 2 * expected


@pytest.mark.parametrize(
    "value, expected", [(5, 1), (13, 1), (17, 1), (21, 2), (12, 2), (8, 1)]
)
def test_oriented_class_numbers_of_real_discriminants(
    value: int, expected: int
) -> None:
    assert oriented_class_number(value) == expected


def test_indefinite_representatives() -> None:
    assert enumerate_classes(5) == [QuadForm(1, 1, -1)]
    assert enumerate_classes(21) == [QuadForm(1, 3, -3), QuadForm(3, 3, -1)]


def test_split_classes() -> None:
    assert enumerate_classes(9) == [QuadForm(1, 3, 0), QuadForm(2, 3, 0)]
    assert len(enumerate_classes(9, primitive_only=False)) == 3
    assert enumerate_classes(1) == [QuadForm(0, 1, 0)]


def test_imprimitive_forms_are_listed_on_request() -> None:
    assert QuadForm(3, 3, 3) in positive_definite_classes(-27, primitive_only=False)
    assert QuadForm(3, 3, 3) not in positive_definite_classes(-27)


@pytest.mark.parametrize("value", [-23, -39, -55, 21, 33, 45, 9, 25])
def test_enumeration_is_complete_and_canonical(value: int) -> None:
    classes = set(enumerate_classes(value))
    assert all(is_reduced(form) for form in classes)
    for a, b, c in itertools.product(range(-8, 9), repeat=3):
        form = QuadForm(a, b, c)
        if form.discriminant() != value or not form.is_primitive():
            continue
        assert canonical_form(form) in classes

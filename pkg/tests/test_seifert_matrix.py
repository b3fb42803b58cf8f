import itertools
from fractions import Fraction

import pytest

from exceptions import AlexanderMismatchError, ParameterError, SeifertMatrixError
from forms.quad_form import QuadForm
from seifert.seifert_matrix import (
    SeifertMatrix,
    alexander_polynomial,
    random_seifert,
    s_equivalence_witness,
    s_equivalent,
    seifert_to_form,
    trotter_trace,
)

TREFOIL = SeifertMatrix.from_rows([[1, 1], [0, 1]])


@pytest.mark.parametrize(
    "rows, coefficients",
    [
        ([[1, 1], [0, 1]], (1, -1, 1)),
        ([[-1, 1], [0, -1]], (1, -1, 1)),
        ([[1, 1], [0, -1]], (-1, 3, -1)),
        ([[2, 1], [0, 3]], (6, -11, 6)),
    ],
)
def test_genus_one_polynomials(
    rows: list[list[int]], coefficients: tuple[int, ...]
) -> None:
    polynomial = alexander_polynomial(SeifertMatrix.from_rows(rows))
    assert polynomial.coefficients == coefficients
    assert polynomial.is_symmetric()


def test_genus_two_polynomial() -> None:
    matrix = SeifertMatrix.from_rows(
        [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]
    )
    polynomial = alexander_polynomial(matrix)
    assert matrix.genus == 2
    assert polynomial.coefficients == (1, -2, 3, -2, 1)
    assert polynomial.degree == 4


def test_singular_matrix_drops_powers_of_t() -> None:
    matrix = SeifertMatrix.from_rows([[0, 1], [0, 0]])
    assert matrix.determinant == 0
    assert alexander_polynomial(matrix).coefficients == (1,)


def test_forms() -> None:
    assert seifert_to_form(TREFOIL) == QuadForm(1, 1, 1)
    upper = SeifertMatrix.from_rows([[2, 1], [0, 3]])
    assert seifert_to_form(upper) == QuadForm(2, 1, 3)
    lower = SeifertMatrix.from_rows([[2, 0], [1, 3]])
    assert seifert_to_form(lower) == QuadForm(3, 1, 2)


@pytest.mark.parametrize(
    "rows",
    [
        [[1, 1]],
        [[1, 0], [0, 1]],
        [[1, 2], [0, 1]],
        [[1, 2, 3], [4, 5, 6], [7, 8, 9]],
    ],
)
def test_invalid_matrices(rows: list[list[int]]) -> None:
    with pytest.raises(SeifertMatrixError):
        SeifertMatrix.from_rows(rows)


def test_form_needs_genus_one() -> None:
    matrix = SeifertMatrix.from_rows(
        [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]
    )
    with pytest.raises(SeifertMatrixError):
        seifert_to_form(matrix)


@pytest.mark.parametrize("m", [1, 6, -5, 12, 500, -499])
def test_random_matrices(m: int) -> None:
    matrices = random_seifert(m, 40, seed=3)
    assert matrices == random_seifert(m, 40, seed=3)
    for matrix in matrices:
        assert matrix.determinant == m
        assert alexander_polynomial(matrix).coefficients == (m, 1 - 2 * m, m)
        assert seifert_to_form(matrix).discriminant() == 1 - 4 * m


def test_s_equivalence_for_six() -> None:
    matrices = random_seifert(6, 20, seed=5)
    for first, second in itertools.combinations(matrices, 2):
        same_sign = (seifert_to_form(first).a > 0) == (seifert_to_form(second).a > 0)
        assert s_equivalent(first, second) == same_sign


def test_witness_agrees() -> None:
    first = SeifertMatrix.from_rows([[1, 0], [-1, 6]])
    second = SeifertMatrix.from_rows([[2, 1], [0, 3]])
    assert s_equivalent(first, second)
    result = s_equivalence_witness(first, second)
    assert result
    assert result.witness.apply(seifert_to_form(first)) == seifert_to_form(second)


def test_s_equivalence_errors() -> None:
    with pytest.raises(AlexanderMismatchError):
        s_equivalent(TREFOIL, SeifertMatrix.from_rows([[2, 1], [0, 3]]))
    singular = SeifertMatrix.from_rows([[0, 1], [0, 0]])
    with pytest.raises(ParameterError):
        s_equivalent(singular, singular)


def test_trotter_trace() -> None:
    assert trotter_trace((3, 4), 6) == Fraction(2, 3)
    assert trotter_trace((1, 0), 11) == 0
    assert trotter_trace((0, 1), 5) == Fraction(1, 5)
    assert trotter_trace((3, 7), 7) == 1
    with pytest.raises(ParameterError):
        trotter_trace((1, 1), 0)


def test_random_seifert_rejects_negative_count() -> None:
    with pytest.raises(ParameterError):
        random_seifert(6, -1, seed=0)

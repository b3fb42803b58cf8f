from dataclasses import dataclass
from math import gcd, isqrt

from enums import FormKind
from exceptions import DiscriminantError, NotUnimodularError, ZeroFormError
from utils import check_int128, is_square


@dataclass(frozen=True)
class Discriminant:
    value: int

    def __post_init__(self):
        if self.value == 0 or self.value % 4 not in (0, 1):
            raise DiscriminantError(
                f"{self.value} is not a discriminant (must be nonzero, 0 or 1 mod 4)"
            )

    @property
    def kind(self) -> FormKind:
        if self.value < 0:
            return FormKind.NEGATIVE_DEFINITE
        if is_square(self.value):
            return FormKind.SPLIT
        return FormKind.INDEFINITE_NON_SQUARE

    @property
    def root_floor(self) -> int:
        """floor of sqrt(D) for D > 0"""
        return isqrt(self.value)

    @classmethod
    def from_m(cls, m: int) -> "Discriminant":
        return cls(1 - 4 * m)

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class GLTransform:
    """
    Integer matrix [[p, q], [r, s]] acting on forms by Q(x, y) -> Q(px + qy, rx + sy).
    Witnesses of equivalence always have determinant 1; other determinants only
    appear in the localization search.
    """
    p: int
    q: int
    r: int
    s: int

    @classmethod
    def identity(cls) -> "GLTransform":
        return cls(1, 0, 0, 1)

    @classmethod
    def swap(cls) -> "GLTransform":
        return cls(0, -1, 1, 0)

    @property
    def det(self) -> int:
        return self.p * self.s - self.q * self.r

    @property
    def trace(self) -> int:
        return self.p + self.s

    def __matmul__(self, other: "GLTransform") -> "GLTransform":
        return GLTransform(
            self.p * other.p + self.q * other.r,
            self.p * other.q + self.q * other.s,
            self.r * other.p + self.s * other.r,
            self.r * other.q + self.s * other.s,
        )

    def inverse(self) -> "GLTransform":
        if self.det != 1:
            raise NotUnimodularError(f"{self} has determinant {self.det}")
        return GLTransform(self.s, -self.q, -self.r, self.p)

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.p, self.q), (self.r, self.s)


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    def __post_init__(self):
        check_int128(self.a, self.b, self.c)

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"

    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def content(self) -> int:
        if self.is_zero():
            raise ZeroFormError("the zero form has no content")
        return gcd(self.a, self.b, self.c)

    def is_primitive(self) -> bool:
        return self.content() == 1

    def is_zero(self) -> bool:
        return self.a == self.b == self.c == 0

    def evaluate(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def negate(self) -> "QuadForm":
        return QuadForm(-self.a, -self.b, -self.c)

    def divide(self, n: int) -> "QuadForm":
        assert self.content() % n == 0, f"{n} does not divide {self}"
        return QuadForm(self.a // n, self.b // n, self.c // n)

    def substitute(self, transform: GLTransform) -> "QuadForm":
        """Q(px + qy, rx + sy) for a matrix of any determinant"""
        p, q, r, s = transform.p, transform.q, transform.r, transform.s
        return QuadForm(
            self.evaluate(p, r),
            2 * self.a * p * q + self.b * (p * s + q * r) + 2 * self.c * r * s,
            self.evaluate(q, s),
        )

    def apply(self, transform: GLTransform) -> "QuadForm":
        """
        Act on the form by an element of SL_2(Z).

        :param transform: matrix of determinant 1
        :return: the substituted form, which has the same discriminant
        """
        if self.is_zero():
            raise ZeroFormError("the zero form has no equivalence class")
        if transform.det != 1:
            raise NotUnimodularError(
                f"{transform} has determinant {transform.det}, expected 1"
            )
        return self.substitute(transform)

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from mpmath import iv, mp

from classgroups.composition import principal_form
from config import MAX_REGULATOR_M
from enums import FormKind
from exceptions import CapacityError, DiscriminantError
from forms.quad_form import Discriminant, GLTransform, QuadForm
from forms.reduction import canonical_form, cycle_automorph

logger = logging.getLogger(__name__)

PRECISION_DIGITS = 40


@dataclass(frozen=True)
class Regulator:
    """
    r(D) = log of the fundamental unit of the order of discriminant D.
    The unit is stored exactly as (t + u sqrt(D)) / 2; value and its enclosure come
    from interval arithmetic.
    """
    discriminant: int
    value: float
    lower: float
    upper: float
    t: int
    u: int
    norm: int

    def automorph(self, form: QuadForm) -> GLTransform:
        """proper automorph of a form of discriminant D for the totally positive unit"""
        t, u = self.t, self.u
        if self.norm < 0:
            t, u = (t * t + self.discriminant * u * u) // 2, t * u
        return GLTransform(
            (t - form.b * u) // 2, -form.c * u, form.a * u, (t + form.b * u) // 2
        )

    def unit_value(self) -> float:
        with mp.workdps(PRECISION_DIGITS):
            return float((self.t + self.u * mp.sqrt(self.discriminant)) / 2)


@lru_cache(maxsize=65536)
def regulator(value: int) -> Regulator:
    """
    Regulator from the automorph accumulated once around the principal reduction cycle.

    :param value: a positive non-square discriminant
    """
    discriminant = Discriminant(value)
    if discriminant.kind != FormKind.INDEFINITE_NON_SQUARE:
        raise DiscriminantError(
            f"the regulator needs a positive non-square discriminant, got {value}"
        )
    limit = 4 * MAX_REGULATOR_M + 1
    if value > limit:
        raise CapacityError(f"D = {value} exceeds the regulator bound", value, limit)

    principal = principal_form(value)
    automorph = cycle_automorph(principal)
    t = abs(automorph.trace)
    u = abs(automorph.r // principal.a)
    norm = 1
    if canonical_form(principal.negate()) == principal:
        norm = -1
        t, u = isqrt(t - 2), isqrt((t + 2) // value)
    saved_dps = iv.dps
    iv.dps = PRECISION_DIGITS
    try:
        enclosure = iv.log((iv.mpf(t) + iv.mpf(u) * iv.sqrt(iv.mpf(value))) / 2)
        lower, upper = float(enclosure.a), float(enclosure.b)
        mid = float(enclosure.mid)
    finally:
        iv.dps = saved_dps
    logger.debug(
        f"r({value}) = {mid} with unit ({t} + {u} sqrt({value}))/2 of norm {norm}"
    )
    return Regulator(value, mid, lower, upper, t, u, norm)

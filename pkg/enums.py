from enum import Enum


class FormKind(str, Enum):
    NEGATIVE_DEFINITE = "negative_definite"
    INDEFINITE_NON_SQUARE = "indefinite_non_square"
    SPLIT = "split"

    @classmethod
    def list(cls):
        return list(map(lambda c: c.value, cls))


class Stratum(str, Enum):
    UNIT = "unit"
    PRIME = "prime"
    NEGATIVE_PRIME = "negative_prime"
    PRIME_POWER = "prime_power"
    TWO_PRIMES = "two_primes"
    MANY_PRIMES = "many_primes"
    NEGATIVE_COMPOSITE = "negative_composite"

    @classmethod
    def list(cls):
        return list(map(lambda c: c.value, cls))


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"

    @classmethod
    def list(cls):
        return list(map(lambda c: c.value, cls))


class RowFlag(str, Enum):
    SPLIT_STRATUM_UNQUOTIENTED = "split_stratum_unquotiented"

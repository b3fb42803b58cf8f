class KnotCensusError(ValueError):
    """Base class for every error raised by the census engine."""


class ParameterError(KnotCensusError):
    """An argument is outside the domain of the requested quantity."""


class DiscriminantError(KnotCensusError):
    pass


class ZeroFormError(KnotCensusError):
    pass


class NotUnimodularError(KnotCensusError):
    pass


class ImprimitiveFormError(KnotCensusError):
    pass


class InertPrimeError(KnotCensusError):
    pass


class SeifertMatrixError(KnotCensusError):
    pass


class AlexanderMismatchError(KnotCensusError):
    pass


class UsageError(KnotCensusError):
    pass


class CapacityError(KnotCensusError):
    def __init__(
        self, message: str, value: int | None = None, bound: int | None = None
    ):
        """
        :param message: human readable description
        :param value: the offending value, if there is one
        :param bound: the bound that was exceeded
        """
        super().__init__(message)
        self.value = value
        self.bound = bound

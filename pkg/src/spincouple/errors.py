"""Exception hierarchy shared by all spincouple modules."""


class SpincoupleError(Exception):
    """Base class for every error raised by this package."""


class StructuralError(SpincoupleError):
    """A malformed object: row length mismatch, missing context, bad pattern."""


class DomainError(SpincoupleError):
    """An input value outside its documented domain (probability out of
    [0, 1], correlation out of [-1, 1], zero condition probability, non-unit
    setting vector, irrational target where an exact rational is required)."""


class SamplerExhausted(SpincoupleError):
    """Rejection sampling hit its draw cap before accepting a sample."""

    def __init__(self, message: str, draws: int):
        super().__init__(message)
        self.draws = draws

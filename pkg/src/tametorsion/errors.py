"""Exception types raised across the package."""


class TameTorsionError(Exception):
    """Base class for every error raised by this package."""


class ConflictingConstraints(TameTorsionError, ValueError):
    pass


class NonCoprimeModuli(TameTorsionError, ValueError):
    """Consistent congruences whose moduli share a factor; merge them first."""


class NotAUnit(TameTorsionError, ValueError):
    pass


class DegreeTooSmall(TameTorsionError, ValueError):
    pass


class ZeroPolynomial(TameTorsionError, ValueError):
    pass


class GenusZero(TameTorsionError, ValueError):
    pass


class RamifiedCase(TameTorsionError, ValueError):
    pass


class UnsupportedPrime(TameTorsionError, ValueError):
    pass


class ConstructionFailed(TameTorsionError, RuntimeError):
    pass


class WrongPrime(TameTorsionError, ValueError):
    pass


class IncompleteSpec(TameTorsionError, ValueError):
    pass


class BadReduction(TameTorsionError, ValueError):
    pass


class BudgetExceeded(TameTorsionError, ValueError):
    pass


class InsufficientData(TameTorsionError, ValueError):
    pass

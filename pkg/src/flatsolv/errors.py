"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Matrix shapes are incompatible with the requested operation."""


class DomainError(ValueError):
    """Input lies outside the domain of the operation (singular, non-monic, ...)."""


class NonCoprimeError(DomainError):
    """Characteristic polynomials share a factor, so psi is not injective."""


class CapExceeded(RuntimeError):
    """An enumeration would exceed its configured size cap."""


class NonCommuting(DomainError):
    pass


class InfiniteOrder(DomainError):
    pass


class NonUnimodular(DomainError):
    pass

"""Exception types raised across the package."""


class ProlateError(Exception):
    """Base class for all package errors."""


class DimensionError(ProlateError, ValueError):
    """Grid shapes or per-axis parameter lists do not line up."""


class DomainError(ProlateError, ValueError):
    """A scalar argument lies outside the domain of a formula."""


class ParameterError(ProlateError, ValueError):
    """Invalid (N, M, K) geometry; the message names the violated bound."""


class CapacityError(ProlateError):
    """A dense object would exceed the configured size cap."""


class ContractError(ProlateError):
    """A numerical post-condition did not hold (e.g. asymmetric input)."""

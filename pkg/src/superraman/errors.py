"""Exception hierarchy shared by every module of the package."""


class SuperRamanError(Exception):
    """Base class for all package errors."""


class InvalidInputError(SuperRamanError, ValueError):
    """An argument violates a documented precondition."""


class DegenerateInputError(SuperRamanError, ValueError):
    """The input is valid but the requested result does not exist (e.g. zero vector)."""


class ResourceLimitError(SuperRamanError):
    """A brute-force computation would exceed the configured size cap."""


class SingularDenominatorError(SuperRamanError, ZeroDivisionError):
    """An energy denominator of the perturbation sum vanishes."""


class NoTransitionError(SuperRamanError, ValueError):
    """The state has no atom that can absorb, so the Raman rate is identically zero."""

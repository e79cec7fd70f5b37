"""Exception hierarchy shared by every module."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class UnsupportedOrderError(DomainError):
    """Polygamma order outside {1, 2, 3}."""


class NumericalError(RuntimeError):
    """A numerical procedure failed to produce a result."""


class BracketError(NumericalError):
    """No sign change could be located for a bracketed root search."""


class CapExceededError(NumericalError):
    """A scan ran past its hard cap without terminating."""

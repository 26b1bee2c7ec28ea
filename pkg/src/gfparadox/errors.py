"""Exception hierarchy shared by every module of the package."""


class GFPError(ValueError):
    """Base class for all domain errors raised by gfparadox."""


class ParseError(GFPError):
    """A text input could not be parsed."""


class GraphError(GFPError):
    """A graph could not be constructed from the given input."""


class BindingError(GFPError):
    """An attribute table does not fit the graph it is bound to."""


class DomainError(GFPError):
    """A statistic is undefined for the given input (zero variance, k=0, ...)."""

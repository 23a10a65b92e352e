class CutGameError(Exception):
    """Base class for all errors raised by cutgame."""


class DomainError(CutGameError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class ResourceLimitError(CutGameError):
    """A request would grow a table or search beyond its configured cap."""

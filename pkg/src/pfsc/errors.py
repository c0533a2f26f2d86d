"""Exception types raised throughout the package."""


class PFSCError(Exception):
    """Base class for all package errors."""


class ParameterError(PFSCError, ValueError):
    """Invalid polynomial or problem parameters."""


class DomainError(PFSCError, ValueError):
    """Argument outside the domain of a function."""


class AssemblyError(PFSCError):
    """A collocation or coefficient system could not be assembled."""


class SingularMatrixError(AssemblyError):
    """A dense factorization hit an (exactly) zero pivot."""


class NumericalFailure(PFSCError):
    """An iterative procedure failed to converge."""


class UsageError(PFSCError, ValueError):
    """An operation was called with inconsistent arguments."""

"""Exception types shared across the package."""


class MclabError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(MclabError):
    pass


class ExactArithmeticUnsupported(MclabError):
    """Raised when an exact-mode computation would need irrational values."""


class UniqueMidpointUndefined(MclabError):
    """Raised when a unique midpoint is requested on a space whose midpoint
    sets are not singletons (the sup and taxicab metrics, and the function
    spaces)."""


class EmptySetError(MclabError):
    pass


class MembershipError(MclabError):
    """A point failed a membership precondition."""


class NestingError(MclabError):
    """A family of sets violates its nesting or shrinkage preconditions."""


class SolverFailure(MclabError):
    """Iterative solver exhausted its budget without meeting tolerance."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate or {}


class DomainEscape(MclabError):
    """A mapping produced a point outside its declared domain."""


class InternalInconsistency(MclabError):
    """A geometric construction violated an invariant it must satisfy."""


class ConfigError(MclabError):
    pass

"""Exception hierarchy shared by every conelab module."""


class ConeLabError(Exception):
    """Base class for all conelab errors."""


class ShapeMismatch(ConeLabError, ValueError):
    pass


class InvalidRange(ConeLabError, ValueError):
    pass


class DomainError(ConeLabError, ValueError):
    """Functional calculus applied outside the function's domain."""


class SingularError(ConeLabError, ValueError):
    """Inverse (or negative power) requested for a singular element."""


class NoConvergence(ConeLabError, RuntimeError):
    pass


class UnsupportedElement(ConeLabError, ValueError):
    """Spectral quantity requested for an element with no usable structure hint."""


class WitnessNotFound(ConeLabError, RuntimeError):
    pass


class Inconclusive(ConeLabError, RuntimeError):
    """A witness is known to exist but the search budget ran out."""


class NumericalHealthFailure(ConeLabError, RuntimeError):
    """Two independent computations of the same quantity disagree."""


class HarnessFailure(ConeLabError, AssertionError):
    """A negative control did not produce the expected verdict."""


class ParseError(ConeLabError, ValueError):
    pass


class UsageError(ConeLabError, ValueError):
    pass

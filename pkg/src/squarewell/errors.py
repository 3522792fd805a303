"""Exception classes raised by the square-well solvers."""


class SquareWellError(Exception):
    """Base class for every error raised by this package."""


class ZeroOffPrincipal(SquareWellError, ValueError):
    """W_k(0) was requested on a branch k != 0, where it diverges."""


class NonConvergence(SquareWellError, ArithmeticError):
    """Halley refinement did not reach the residual tolerance."""


class DomainError(SquareWellError, ValueError):
    pass


class BranchRangeTooSmall(SquareWellError):
    """The w-plane search found fewer crossings than the z-plane count."""


class UndersampledCurve(SquareWellError):
    pass


class DegenerateTangent(SquareWellError, ArithmeticError):
    """A tangent vector vanished, so no intersection angle is defined."""

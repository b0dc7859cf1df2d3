"""Exception and warning taxonomy shared across the package."""


class BallharmonicsError(Exception):
    """Base class for all package-specific errors."""


class DomainError(BallharmonicsError, ValueError):
    """A point lies outside the domain an operation requires."""


class PreconditionError(BallharmonicsError, ValueError):
    """A documented precondition of an operation is violated."""


class EvaluationError(BallharmonicsError, ArithmeticError):
    """A user-supplied function produced a non-finite value."""

    def __init__(self, message, argument=None):
        super().__init__(message)
        self.argument = argument


class ConfigError(BallharmonicsError, ValueError):
    """Suite configuration failed validation; ``fields`` lists offenders."""

    def __init__(self, message, fields=()):
        super().__init__(message)
        self.fields = tuple(fields)


class DegreeError(BallharmonicsError, RuntimeError):
    """Base class for failures of the topological degree engine."""


class BoundaryClearanceError(DegreeError):
    """Target is closer to the boundary image than the clearance tolerance."""


class NonRegularValueError(DegreeError):
    """A preimage has a near-singular Jacobian even after target perturbation."""


class UnstableDegreeError(DegreeError):
    """Degree changed under seed-grid refinement; preimage set is suspect."""


class NoExistenceCertificateError(DegreeError):
    """Degree is zero, so no preimage can be certified."""


class NearBoundaryWarning(UserWarning):
    """Evaluation close to the unit sphere; quadrature accuracy degrades."""


class DimensionWarning(UserWarning):
    """Calculator invoked outside the dimension range it was derived for."""

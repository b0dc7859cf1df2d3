"""Numerical verification toolkit for harmonic maps on the unit ball.

Subpackages cover: geometry and quadrature, majorant weight functions,
harmonic functions and Poisson-kernel machinery, Lipschitz-type empirical
constants, Schwarz-Pick growth bounds, Landau-Bloch radius calculators,
Brouwer topological degree, and Poisson-equation experiments.
"""

__version__ = "0.1.0"

from .errors import (
    BallharmonicsError,
    BoundaryClearanceError,
    ConfigError,
    DegreeError,
    DomainError,
    EvaluationError,
    NearBoundaryWarning,
    NoExistenceCertificateError,
    NonRegularValueError,
    PreconditionError,
    UnstableDegreeError,
)
from .geometry import Ball, QuadratureRule, ball_rule, distance_to_boundary, spawn_rng, sphere_rule
from .harmonic import (
    HarmonicMap,
    HarmonicScalar,
    det_jacobian,
    gradient,
    hardy_norm,
    harmonic_polynomial_basis,
    jacobian,
    poisson_extend,
    poisson_kernel,
    poisson_kernel_gradient,
)
from .majorants import Majorant, check_majorant, check_regular, get_majorant, power_majorant
from .polynomials import Polynomial, harmonic_basis
from .reports import CheckReport, RunReport

__all__ = [
    "__version__",
    "Ball",
    "BallharmonicsError",
    "BoundaryClearanceError",
    "CheckReport",
    "ConfigError",
    "DegreeError",
    "DomainError",
    "EvaluationError",
    "HarmonicMap",
    "HarmonicScalar",
    "Majorant",
    "NearBoundaryWarning",
    "NoExistenceCertificateError",
    "NonRegularValueError",
    "Polynomial",
    "PreconditionError",
    "QuadratureRule",
    "RunReport",
    "UnstableDegreeError",
    "ball_rule",
    "check_majorant",
    "check_regular",
    "det_jacobian",
    "distance_to_boundary",
    "get_majorant",
    "gradient",
    "hardy_norm",
    "harmonic_basis",
    "harmonic_polynomial_basis",
    "jacobian",
    "poisson_extend",
    "poisson_kernel",
    "poisson_kernel_gradient",
    "power_majorant",
    "spawn_rng",
    "sphere_rule",
]

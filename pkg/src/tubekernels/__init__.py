"""Weighted Bergman kernels on tube domains and their model domains.

The closed forms live in ``kernels``; ``weights`` describes the spaces and
their Laplace symbols; ``verify`` checks the identities that tie them together.
"""

from .errors import (
    BranchCutError,
    ConvergenceError,
    DegenerateSamplerError,
    DimensionError,
    DomainError,
    InadmissibleProfileError,
    KernelError,
    PoleError,
    UnsupportedFamilyError,
)
from .kernels import (
    KernelHandle,
    TestProfile,
    constant,
    kernel_closed,
    kernel_integral,
    kernel_numeric,
    laplace_transform,
)
from .quadrature import IntegrationResult, QuadratureConfig
from .transforms import Biholomorphism, cayley_ball_to_siegel, compose, phi_siegel_to_paraboloid_tube, pullback_kernel
from .verify import CheckReport, run_space, run_suite
from .weights import Family, SpaceSpec, rho, symbol_closed, symbol_integral, symbol_numeric

__all__ = [
    "Biholomorphism",
    "BranchCutError",
    "CheckReport",
    "ConvergenceError",
    "DegenerateSamplerError",
    "DimensionError",
    "DomainError",
    "Family",
    "InadmissibleProfileError",
    "IntegrationResult",
    "KernelError",
    "KernelHandle",
    "PoleError",
    "QuadratureConfig",
    "SpaceSpec",
    "TestProfile",
    "UnsupportedFamilyError",
    "cayley_ball_to_siegel",
    "compose",
    "constant",
    "kernel_closed",
    "kernel_integral",
    "kernel_numeric",
    "laplace_transform",
    "phi_siegel_to_paraboloid_tube",
    "pullback_kernel",
    "rho",
    "run_space",
    "run_suite",
    "symbol_closed",
    "symbol_integral",
    "symbol_numeric",
]

"""Exception hierarchy shared by every module of the package."""


class KernelError(Exception):
    """Base class for all package errors."""


class DimensionError(KernelError, ValueError):
    """A point or vector has the wrong length for the object it is used with."""


class DomainError(KernelError, ValueError):
    """A point lies outside the domain (or support set) an operation requires."""


class BranchCutError(DomainError):
    """A principal power was requested at a point of the cut (-inf, 0]."""


class PoleError(DomainError):
    """A biholomorphic map was evaluated at one of its poles."""


class UnsupportedFamilyError(KernelError):
    """The operation is not defined for the requested space family."""


class InadmissibleProfileError(KernelError, ValueError):
    """A test profile has infinite weighted L2 norm for the given space."""


class DegenerateSamplerError(KernelError):
    """A Monte Carlo sampler produced no usable samples."""


class ConvergenceError(KernelError):
    """A quadrature did not reach its tolerance within the evaluation budget.

    The best estimate found so far is kept on the exception.
    """

    def __init__(self, message, value=None, error_estimate=None):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate

"""Exception and warning types shared across the solver."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class QuadratureError(ValueError):
    """Ill-posed quadrature request (pole outside window, non-finite samples)."""


class SpectralProximityError(ValueError):
    """Resolvent requested on or too close to the spectrum."""


class SingularOperatorError(ArithmeticError):
    """Perturbation determinant vanished; the resolvent system is singular."""


class RefinementError(RuntimeError):
    """Adaptive refinement exhausted without meeting its resolution target."""


class DegenerateDataError(RuntimeError):
    """Coefficient extraction hit a vanishing normalization integral."""


class TimeStepError(RuntimeError):
    """Time integrator produced non-finite stage values."""


class AccuracyWarning(UserWarning):
    """Requested evaluation is under-resolved; result may lose accuracy."""


class SmoothnessWarning(UserWarning):
    """Input data failed the local smoothness screen."""

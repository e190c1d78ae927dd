"""Exception and warning types shared across the package."""


class ConfigError(ValueError):
    """Bad configuration file or invalid parameter value."""


class ValidationError(ValueError):
    """Input violates an operation precondition."""


class SingularityError(ArithmeticError):
    """A denominator collapsed below the representable floor."""


class EmptyWindowError(ValidationError):
    """A spectral window captured no weight from the two-photon state."""


class NumericalError(RuntimeError):
    """A computation failed to converge or produced unusable values."""


class ConvergenceWarning(UserWarning):
    """A series or quadrature stopped short of its target accuracy."""


class BoundaryLeakWarning(UserWarning):
    """Grid edges carry non-negligible spectral weight."""


class RegimeWarning(UserWarning):
    """Parameters sit outside a validity region of the model."""

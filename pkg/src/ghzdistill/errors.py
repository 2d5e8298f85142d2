"""Exception types raised across the package."""


class ContractViolationError(ValueError):
    """An input broke a numerical precondition (hermiticity, unitarity, ...)."""


class DegenerateEquationError(ValueError):
    """All coefficients of a homogeneous quadratic vanish."""


class NotGghzError(ValueError):
    """The state is not a generalized GHZ state in any product basis."""


class DegenerateFormError(ValueError):
    """A generalized GHZ form with vanishing weight (the state was a product)."""


class NonDistillableError(ValueError):
    """No single-copy local filtering reaches the GHZ state.

    The offending classification is kept on ``state_class``.
    """

    def __init__(self, state_class, message=None):
        self.state_class = state_class
        super().__init__(message or f"state is not GHZ-distillable ({state_class})")


class WClassError(NonDistillableError):
    """A filter was requested for a qubit whose smaller Wootters parameter is zero."""

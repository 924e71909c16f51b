"""Exception types shared across the package."""


class PoleError(ValueError):
    """Evaluation at a pole of the gamma function or of a series denominator."""


class DomainError(ValueError):
    """Argument outside the slit plane or outside an operation's stated domain."""


class UnsupportedParams(ValueError):
    """Parameter combination outside the supported evaluation range."""


class HypothesisError(ValueError):
    """Inputs violate the hypotheses required by the requested construction."""


class DegenerateError(ValueError):
    """The construction degenerates for these parameters and must be handled upstream."""


class NearZeroDerivative(ArithmeticError):
    """f' is (numerically) zero at the evaluation point."""

    def __init__(self, message, point=None, value=None):
        super().__init__(message)
        self.point = point
        self.value = value


class DivisionBreakdown(ArithmeticError):
    """Leading denominator coefficient vanished during truncated series division."""


class DivisionByZero(ZeroDivisionError):
    """A handle transform hit a zero of its denominator; carries the witness point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class EvaluationError(RuntimeError):
    """Evaluation failed to converge to tolerance; carries the offending point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point

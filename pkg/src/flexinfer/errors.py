"""Exception hierarchy.

Validation errors (bad declarations) and inference errors (a method cannot
produce a conclusion) are kept apart so the CLI can map them to distinct
exit statuses.
"""


class FlexError(Exception):
    """Base class for all package errors."""


class ValidationError(FlexError, ValueError):
    """A declaration violates a structural invariant."""


class OrderingViolation(ValidationError):
    pass


class OutOfUniverse(ValidationError):
    pass


class BadBeta(ValidationError):
    pass


class BadCount(ValidationError):
    pass


class BetaMismatch(ValidationError):
    pass


class MultiCondition(ValidationError):
    pass


class ArityMismatch(ValidationError):
    pass


class UniverseMismatch(ValidationError):
    pass


class GridMismatch(ValidationError):
    pass


class NonFiniteSample(ValidationError):
    pass


class ParseError(ValidationError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DanglingReference(ValidationError):
    def __init__(self, name: str, where: str = ""):
        self.name = name
        msg = f"undeclared reference {name!r}"
        if where:
            msg += f" in {where}"
        super().__init__(msg)


class InferenceError(FlexError):
    """An inference or evaluation method cannot produce a result."""


class NotNearTrue(InferenceError):
    pass


class OutsideExtendedCore(InferenceError):
    pass


class NoFiredRule(InferenceError):
    pass


class OutOfRange(InferenceError):
    pass


class EmptySet(InferenceError):
    pass


class EvaluatorFailure(InferenceError):
    def __init__(self, x: float, cause: Exception):
        self.x = x
        self.cause = cause
        super().__init__(f"evaluator failed at x={x!r}: {cause}")

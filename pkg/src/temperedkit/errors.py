"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input data violates an invariant of the structure being built."""


class TorsionError(ValidationError):
    """A construction would need a group envelope with torsion."""


class ResourceExhausted(RuntimeError):
    """A bounded search or enumeration ran past its configured limit."""


class UnsupportedInput(ValueError):
    """Input outside the class of objects an algorithm handles."""


class CommutingSquareError(ValidationError):
    """A diagram that must commute does not."""

    def __init__(self, message: str, level=None):
        super().__init__(message if level is None else f"level {level}: {message}")
        self.level = level

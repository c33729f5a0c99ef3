"""Exception types shared across the kernel."""


class TowerMismatch(ValueError):
    """Operands live in incompatible fields."""


class NotAPthPower(ValueError):
    """The element has a nonzero component off the p-th power subfield."""


class InsufficientPrecision(ArithmeticError):
    """A truncated series does not carry enough terms to answer."""


class DecisionUnavailable(Exception):
    """No decision procedure exists for this base field.

    Carries the reduced representative so callers can still report it.
    """

    def __init__(self, message, representative=None):
        super().__init__(message)
        self.representative = representative


class TruncationTooSmall(ValueError):
    """The requested construction needs a larger truncation order."""


class NotSimpleRoot(ValueError):
    """Newton lifting needs a unit derivative at the approximate root."""


class ParseError(ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position

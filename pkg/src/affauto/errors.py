"""Exception hierarchy.

The CLI maps ``DomainError`` to exit code 1, ``ParseError`` to 2 and
``BoundError`` to 3.
"""


class AffautoError(Exception):
    exit_code = 1


class DomainError(AffautoError):
    exit_code = 1


class ParseError(AffautoError, ValueError):
    exit_code = 2

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class BoundError(AffautoError):
    exit_code = 3


class DimensionMismatch(DomainError, ValueError):
    pass


class NotAPower(DomainError):
    pass


class ScalarNotDthPower(DomainError):
    def __init__(self, message, constant=None):
        self.constant = constant
        super().__init__(message)


class NotInvertible(DomainError):
    pass


class Unsupported(DomainError):
    pass


class NotAutomorphism(DomainError):
    pass


class NotEquivariant(DomainError):
    pass


class NotLiftable(DomainError):
    pass


class NotLND(DomainError):
    pass


class NotInvariant(DomainError):
    pass


class NotDescendable(DomainError):
    pass


class NotDeterminantOne(DomainError):
    pass


class BoundTooSmall(BoundError):
    pass


class DegreeCapExceeded(BoundError):
    pass

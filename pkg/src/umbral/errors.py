"""Exception hierarchy shared by every module of the package."""


class UmbralError(Exception):
    """Base class for all errors raised by this package."""


class ConstructionError(UmbralError, ValueError):
    pass


class NotInvertible(UmbralError, ArithmeticError):
    """The series has a zero constant term and no multiplicative inverse."""


class NotDelta(UmbralError, ValueError):
    """The series does not have order exactly one."""


class CompositionUndefined(UmbralError, ValueError):
    """The inner series of a composition has a nonzero constant term."""


class TruncationError(UmbralError, ValueError):
    """A series is stored to too low an order for the requested operation."""


class NotDivisible(UmbralError, ArithmeticError):
    """A polynomial with nonzero constant term cannot be divided by x."""


class UnknownName(UmbralError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class BadParams(UmbralError, ValueError):
    pass

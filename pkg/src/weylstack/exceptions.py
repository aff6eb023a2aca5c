"""Exception hierarchy shared by all weylstack modules."""


class WeylStackError(Exception):
    pass


class InvalidWeights(WeylStackError, ValueError):
    pass


class NotCoprime(WeylStackError, ValueError):
    """Raised by Frobenius/gap queries when the weights share a common factor."""


class ZeroElement(WeylStackError, ValueError):
    pass


class NotHomogeneous(WeylStackError, ValueError):
    pass


class WindowTooSmall(WeylStackError, ValueError):
    pass


class NoWitnessApplicable(WeylStackError):
    pass


class VerificationFailed(WeylStackError):
    def __init__(self, message, *, degree=None, eigenvalue=None):
        super().__init__(message)
        self.degree = degree
        self.eigenvalue = eigenvalue


class WeylParseError(WeylStackError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position

"""Exception hierarchy shared by every module of the package."""


class NttError(ValueError):
    """Base class for all errors raised by nttpoly."""


class ParameterError(NttError):
    """The (q, n) parameters cannot support the requested operation."""


class InvalidModulus(ParameterError):
    pass


class NotInvertible(ParameterError):
    pass


class FactorTooLarge(ParameterError):
    pass


class NoRoot(ParameterError):
    pass


class NotFriendly(ParameterError):
    pass


class MissingPsi(ParameterError):
    pass


class NotPowerOfTwo(ParameterError):
    pass


class ShapeError(NttError):
    """Operands disagree in length, modulus, tags or context."""


class LengthMismatch(ShapeError):
    pass


class ModulusMismatch(ShapeError):
    pass


class FlavorMismatch(ShapeError):
    pass


class OrderingMismatch(ShapeError):
    pass


class ContextMismatch(ShapeError):
    pass


class DimensionMismatch(ShapeError):
    pass


class EmptyList(ShapeError):
    pass

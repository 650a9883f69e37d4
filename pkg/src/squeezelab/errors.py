"""Exception types raised across squeezelab."""


class SqueezeLabError(ValueError):
    """Base class for all library errors."""


class InvalidDimension(SqueezeLabError):
    pass


class InvalidParameter(SqueezeLabError):
    pass


class NumericalError(SqueezeLabError):
    pass


class NotHermitian(SqueezeLabError):
    pass


class TruncationError(SqueezeLabError):
    """The state does not fit inside the truncated Fock basis."""


class GridResolutionError(SqueezeLabError):
    """The position grid cannot resolve the requested eigenfunctions."""

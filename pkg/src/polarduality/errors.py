"""Exception hierarchy shared by all modules."""


class PolarDualityError(ValueError):
    """Base class; every precondition violation raised by the library."""


class InvalidBodyError(PolarDualityError):
    pass


class NotInteriorError(PolarDualityError):
    pass


class DimensionError(PolarDualityError):
    pass


class UnsupportedError(PolarDualityError):
    """Requested capability lies outside what is implemented."""


class TruncationError(PolarDualityError):
    """Sampling grid too small or too coarse for the requested state."""


class ConvergenceError(PolarDualityError):
    """Iterative search exhausted its budget.

    The best iterate found so far is kept on ``best``.
    """

    def __init__(self, message, best=None, value=None):
        super().__init__(message)
        self.best = best
        self.value = value

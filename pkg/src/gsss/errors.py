"""Exception types raised across the package."""


class GSSSError(Exception):
    """Base class for all errors raised by :mod:`gsss`."""


class ZeroVector(GSSSError, ValueError):
    pass


class InvalidDimension(GSSSError, ValueError):
    pass


class DimensionMismatch(GSSSError, ValueError):
    pass


class ZeroDensityAtState(GSSSError, ValueError):
    pass


class RejectionBudgetExceeded(GSSSError, RuntimeError):
    pass


class InvalidAlpha(GSSSError, ValueError):
    pass


class OutOfRange(GSSSError, ValueError):
    pass


class InvalidRange(GSSSError, ValueError):
    pass


class SizeMismatch(GSSSError, ValueError):
    pass


class TooLarge(GSSSError, ValueError):
    pass


class ConstantSeries(GSSSError, ValueError):
    pass


class TooShort(GSSSError, ValueError):
    pass


class ChainStepError(GSSSError):
    """A transition failed inside :func:`gsss.sampler.run_chain`.

    The original exception is chained as ``__cause__``; ``iteration`` is the
    index of the row that could not be produced.
    """

    def __init__(self, iteration, cause):
        self.iteration = iteration
        self.cause = cause
        super().__init__(f"step {iteration} failed: {type(cause).__name__}: {cause}")

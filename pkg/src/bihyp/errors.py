"""Exception hierarchy shared by every module.

The CLI reports ``type(err).__name__`` so class names are part of the
external interface.
"""


class BihypError(Exception):
    """Base class for all domain errors."""

    @property
    def name(self):
        return type(self).__name__


class InvalidInput(BihypError, ValueError):
    pass


class NotInvertible(BihypError, ArithmeticError):
    pass


class EmptySet(BihypError, ValueError):
    pass


class DimensionMismatch(BihypError, ValueError):
    pass


class BadIndex(BihypError, IndexError):
    pass


class UnsupportedSet(BihypError, TypeError):
    pass


class SamplingFailure(BihypError, RuntimeError):
    pass


class PreconditionFailed(BihypError, ValueError):
    pass


class OriginNotInterior(BihypError, ValueError):
    def __init__(self, msg="origin is not interior to the body", component=None):
        super().__init__(msg)
        self.component = component


class LPInfeasible(BihypError, RuntimeError):
    pass


class NumericalStall(BihypError, RuntimeError):
    pass


class UnknownProperty(BihypError, KeyError):
    pass


class BadInstance(BihypError, ValueError):
    pass


class ConfigError(BihypError, ValueError):
    pass

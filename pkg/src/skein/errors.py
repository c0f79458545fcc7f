"""Exception types raised across the package."""


class SkeinError(Exception):
    """Base class for all computation errors."""


class DivisionByZero(SkeinError, ZeroDivisionError):
    pass


class MixedEtaParity(SkeinError):
    """Two values whose eta powers differ by an odd integer were added."""


class InvalidParameters(SkeinError):
    pass


class AmbiguousFactorization(InvalidParameters):
    pass


class NoFramingParameter(SkeinError):
    pass


class CalibrationFailure(SkeinError):
    def __init__(self, message, survivors=()):
        super().__init__(message)
        self.survivors = list(survivors)


class EtaMismatch(SkeinError):
    pass


class ModulusParity(SkeinError):
    pass


class BadLensParameters(SkeinError):
    pass


class NotBlowdownable(SkeinError):
    pass


class WouldCreateCycle(SkeinError):
    pass


class InvalidForest(SkeinError):
    pass


class InvalidStructure(SkeinError):
    pass


class NonIntegerDimension(SkeinError):
    pass


class TooLarge(SkeinError):
    pass

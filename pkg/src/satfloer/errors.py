"""Exception types raised across the package."""


class SatFloerError(Exception):
    """Base class for every error raised by this package."""


class NonGenericInput(SatFloerError):
    pass


class PointOnCurve(SatFloerError):
    pass


class DegeneratePath(SatFloerError):
    pass


class PunctureCollision(SatFloerError):
    pass


class BadHomology(SatFloerError):
    pass


class NotEmbedded(SatFloerError):
    pass


class BasepointOnCurve(SatFloerError):
    pass


class WrongHomologyClass(SatFloerError):
    pass


class NotCoprime(SatFloerError):
    pass


class InvalidSpec(SatFloerError):
    pass


class NoWrappingComponent(SatFloerError):
    pass


class MultipleWrappingComponents(SatFloerError):
    pass


class NotInnermost(SatFloerError):
    pass


class NotTrivial(SatFloerError):
    pass


class NotNullHomologous(SatFloerError):
    pass


class AsymmetricSpectrum(SatFloerError):
    pass


class NotUnit(SatFloerError):
    pass


class ParseError(SatFloerError):
    """Malformed curve or corpus file; the message carries file:line context."""

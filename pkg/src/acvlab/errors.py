"""Exception hierarchy shared by every acvlab module."""


class AcvError(Exception):
    """Base class for all acvlab errors."""


class NotSquare(AcvError):
    pass


class NonSplitSpectrum(AcvError):
    """A characteristic polynomial has a root outside the rationals."""


class SpaceMismatch(AcvError):
    pass


class NotInSp(AcvError):
    """Matrix fails ``m^T J + J m == 0``."""


class NotRegular(AcvError):
    pass


class NotRegularCartan(AcvError):
    pass


class NoSolution(AcvError):
    pass


class NotOnVariety(AcvError):
    pass


class RankTooHigh(AcvError):
    pass


class NotCommonEigenvector(AcvError):
    pass


class NotCommuting(AcvError):
    pass


class NotSemisimple(AcvError):
    pass


class NotFound(AssertionError):
    """A common eigenvector was expected to exist but none was found.

    Rank <= 1 commutators with split spectra always admit one, so hitting this
    means either a bug or a counterexample worth reporting; it is deliberately
    an ``AssertionError`` rather than a recoverable condition.
    """


class UnknownSuite(AcvError):
    pass


class InvalidConfig(AcvError):
    pass


class ParseError(AcvError):
    pass


class SchemaError(AcvError):
    pass

"""Exception hierarchy.

Precondition and domain failures derive from :class:`FregierError`;
numerical breakdowns (fits or classifications that cannot be decided)
derive from :class:`NumericalInstability`.
"""


class FregierError(Exception):
    """Base class for all errors raised by this package."""


class NumericalInstability(FregierError):
    """A numerical decision could not be made reliably."""


class CoincidentPoints(FregierError):
    pass


class CoincidentLines(FregierError):
    pass


class NotReal(FregierError):
    pass


class SingularConic(FregierError):
    pass


class LineOnConic(FregierError):
    pass


class NotDegenerate(FregierError):
    pass


class NoRealPoints(FregierError):
    pass


class OnAbsolute(FregierError):
    pass


class IsotropicTangent(FregierError):
    pass


class DegenerateChord(FregierError):
    pass


class UnsupportedAbsolute(FregierError):
    pass


class DomainViolation(FregierError):
    pass


class ProportionalConics(FregierError):
    pass


class FitUnstable(NumericalInstability):
    pass


class ClassificationAmbiguous(NumericalInstability):
    pass


class IsotropicLineWarning(UserWarning):
    """Perpendicularity was queried for a self-perpendicular line."""

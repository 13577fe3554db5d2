"""Exception types shared across the toolkit.

Every error raised by the library derives from :class:`PgtoolError`.
Errors that indicate bad input (rather than a violated geometric
property) additionally derive from :class:`UsageError`; the CLI maps
these to exit code 2, property violations to exit code 1.
"""


class PgtoolError(Exception):
    """Base class for all toolkit errors."""


class UsageError(PgtoolError):
    """Invalid input, parameters, or file content."""


# finite fields

class NonPrimeP(UsageError):
    pass


class DegreeZero(UsageError):
    pass


class SizeCapExceeded(UsageError):
    pass


class ZeroInverse(UsageError):
    pass


class FieldMismatch(UsageError):
    pass


# projective spaces

class SpaceMismatch(UsageError):
    pass


class NotAFrame(UsageError):
    pass


class SingularSystem(PgtoolError):
    pass


class SingularMatrix(UsageError):
    pass


class PointNotInSubspace(UsageError):
    pass


class NotALine(UsageError):
    pass


class PointInBase(UsageError):
    pass


class DimensionMismatch(UsageError):
    pass


# quadrics and closure

class OracleSizeCap(UsageError):
    pass


# arcs and conics

class PointOutsidePlane(UsageError):
    pass


class PointNotOnArc(UsageError):
    pass


class NoUniqueUnisecant(PgtoolError):
    pass


class ParallelLinesImpossible(PgtoolError):
    """Unreachable in a projective plane; raised only on internal inconsistency."""


class SigmaFixesLine(UsageError):
    pass


class SigmaFixesP0(UsageError):
    pass


# embedding analysis

class ModeInfeasible(UsageError):
    pass


class NotTotal(UsageError):
    pass


class InvalidPointMap(UsageError):
    """Malformed map table: duplicate sources or a non-injective table."""


class NotIncident(UsageError):
    pass


class NotComplementary(UsageError):
    pass


class ImageNotAPoint(PgtoolError):
    """A punctured-hyperplane image failed to cut the complement in a point."""


class LinesNotConcurrent(PgtoolError):
    """Candidate extension lines do not share a point."""


class NotACollineation(PgtoolError):
    pass


class BetaUnavailable(PgtoolError):
    pass


class FrameCheckFailed(PgtoolError):
    pass


class NoAutomorphismMatch(PgtoolError):
    pass


class VerificationFailed(PgtoolError):
    """Pointwise certificate failed; carries the first counterexample point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class NotRegular(PgtoolError):
    pass


class ForeignTarget(UsageError):
    """Reconstruction requires source and target over the same field."""


# harness

class ParamOutOfRange(UsageError):
    pass


class UnknownSuite(UsageError):
    pass

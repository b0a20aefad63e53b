"""Exception hierarchy. Every error names the invariant it violates."""


class ToricfolError(Exception):
    """Base class for all domain errors raised by this package."""


class FanError(ToricfolError):
    """Fan invariant violated (malformed cone, non-simplicial, bad ray)."""


class GradingError(ToricfolError):
    """Picard/grading invariant violated (torsion, failed precondition)."""


class PicardError(ToricfolError):
    """Cone or maximal-divisor computation invariant violated."""


class DegreeError(ToricfolError):
    """Homogeneity or multidegree bookkeeping violated."""


class IdealError(ToricfolError):
    """Ideal/Groebner invariant violated."""


class FoliationError(ToricfolError):
    """Split-distribution invariant violated (zero form, failed division...)."""


class PullbackError(ToricfolError):
    """Equivariant projection or recognition invariant violated."""


class UsageError(ToricfolError):
    """Malformed input file or argument (CLI exit code 2)."""

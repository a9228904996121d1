"""Exception hierarchy. Every validation error reports the measured deviation."""


class QuditEpiError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(QuditEpiError):
    """A state, spectrum or measurement failed one of its invariants."""


class NotHermitian(ValidationError):
    pass


class NotUnitTrace(ValidationError):
    pass


class NotPositive(ValidationError):
    pass


class NotDistribution(ValidationError):
    """A probability vector has negative entries or does not sum to one."""


class DimensionMismatch(QuditEpiError):
    pass


class BadSubsystemIndex(QuditEpiError):
    pass


class BadPermutation(QuditEpiError):
    pass


class BadDimension(QuditEpiError):
    pass


class BadRank(QuditEpiError):
    pass


class BadIndex(QuditEpiError):
    pass


class EigenSolverFailure(QuditEpiError):
    """The Hermitian eigensolver did not converge."""


class DegenerateSample(QuditEpiError):
    """A random draw failed its self-check repeatedly."""


class NotUnitary(ValidationError):
    pass


class IncompleteMeasurement(ValidationError):
    """Kraus elements do not sum to the identity."""


class NegligibleOutcome(QuditEpiError):
    """The outcome probability is below the floor; no conditional state exists."""


class TotalMismatch(QuditEpiError):
    """Majorization inputs do not share the same total."""


class EmptyInput(QuditEpiError):
    pass


class IoFailure(QuditEpiError):
    """Could not write an output file; carries path and OS detail."""


class UsageError(QuditEpiError):
    """Bad command line or configuration."""

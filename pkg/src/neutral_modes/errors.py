"""Exception hierarchy shared by every module."""


class NeutralModesError(Exception):
    """Base class for all library errors."""


class SingularPoint(NeutralModesError):
    """Evaluation point lies within the exclusion radius of a singularity."""


class DomainViolation(NeutralModesError):
    """A point (or finite-difference stencil) falls outside its domain."""


class ZeroCrossing(NeutralModesError):
    """A function vanishes on a path along which its argument is continued."""


class PathBlocked(NeutralModesError):
    """No admissible integration/continuation path exists."""


class InvalidParams(NeutralModesError):
    """Construction parameters are inconsistent."""


class NotNeutral(InvalidParams):
    """The conformal map fails the neutrality equation on the probes."""


class NotHolomorphic(InvalidParams):
    """An assembled Weierstrass function fails the Cauchy-Riemann check."""


class DegenerateMoebius(InvalidParams):
    """Möbius coefficients with ad - bc = 0."""


class HierarchyViolation(NeutralModesError):
    """Residuals contradict the stretching => drilling => bending hierarchy."""


class ConfigError(NeutralModesError):
    """A job configuration could not be parsed or validated."""


class IoFailure(NeutralModesError, OSError):
    """A mesh or report file could not be written or parsed."""

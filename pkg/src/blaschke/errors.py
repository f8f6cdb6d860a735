"""Exception types raised across the package."""


class BlaschkeError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(BlaschkeError, ValueError):
    """A value violates a type invariant (zero outside the disk, non-unimodular constant, ...)."""


class PoleProximity(BlaschkeError, ZeroDivisionError):
    pass


class RootFindingDivergence(BlaschkeError, ArithmeticError):
    pass


class OffCircleRoot(BlaschkeError, ArithmeticError):
    """A preimage of a unimodular value landed visibly off the unit circle."""


class ZeroInput(InvalidInput):
    pass


class DegenerateEllipse(InvalidInput):
    pass


class NotTangent(BlaschkeError):
    pass


class CoincidentPoints(InvalidInput):
    pass


class NoIntersectionInDisk(BlaschkeError):
    pass


class IdenticalGeodesics(BlaschkeError):
    pass


class PointNotOnGeodesic(InvalidInput):
    pass


class CollinearPoints(InvalidInput):
    pass


class CoalescedFiber(BlaschkeError):
    """Two points of a fiber are numerically indistinguishable."""


class TooManySkips(BlaschkeError):
    pass


class OddDegree(InvalidInput):
    pass


class NearSingularDenominator(BlaschkeError, ZeroDivisionError):
    pass


class InterleavingViolated(InvalidInput):
    pass


class PoleAtOne(InvalidInput):
    pass


class ConsistencyError(BlaschkeError, AssertionError):
    """Two independent computations of the same quantity disagree."""


class DecomposabilityWarning(UserWarning):
    """The caller-asserted decomposition of a degree-4 product could not be confirmed."""

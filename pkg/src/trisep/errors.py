"""Exception types raised across the package."""


class TrisepError(ValueError):
    """Base class for all domain errors."""


class NotHermitian(TrisepError):
    pass


class BadDimension(TrisepError):
    pass


class NotXShaped(TrisepError):
    pass


class BadParameter(TrisepError):
    pass


class NonRealPairing(TrisepError):
    pass


class ZeroVector(TrisepError):
    pass


class BadTriple(TrisepError):
    pass


class SingularGram(TrisepError):
    """The ten-state Gram matrix could not be inverted; the basis is broken."""


class NotAState(TrisepError):
    pass


class BadEndpoints(TrisepError):
    pass


class EmptyFacet(TrisepError):
    pass

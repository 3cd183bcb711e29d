"""Exception types raised by fidpath operations."""


class FidpathError(Exception):
    """Base class for all fidpath errors."""


class NonHermitian(FidpathError):
    """Input matrix deviates from Hermitian symmetry beyond tolerance."""


class NotPSD(FidpathError):
    """Input matrix has an eigenvalue below the negativity floor."""


class NumericalFailure(FidpathError):
    """A numerical routine failed to converge or produced inconsistent results."""


class InvalidState(FidpathError):
    """State construction violated an invariant; the message names it."""


class DimensionMismatch(FidpathError):
    """Operands have unequal dimensions."""


class OutOfRange(FidpathError):
    """A scalar argument lies outside its admissible interval."""


class LambdaOutOfRange(OutOfRange):
    """Mixing weight outside [0, 1]."""


class InvalidSpec(FidpathError):
    """A sampling or run specification is malformed."""


class InfiniteLambda0(FidpathError):
    """The support of rho is not contained in the support of sigma."""


class DegenerateDecomposition(FidpathError):
    """lambda0 is numerically 1 (states equal); the residual state is undefined."""


class ParseError(FidpathError):
    """A state or report file could not be parsed; the message carries context."""

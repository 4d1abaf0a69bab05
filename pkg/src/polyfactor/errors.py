"""Exception types shared across the package.

Outcomes that are part of normal control flow (a division that leaves a
remainder, a rejected candidate, a failed table lookup) are reported as
``None`` returns, not exceptions.
"""


class PolyfactorError(Exception):
    """Base class for all package errors."""


class WidthExceeded(PolyfactorError):
    """The pattern width n is beyond what the selected backend supports."""


class NonConvergence(PolyfactorError):
    """Root iteration failed to reach the requested tolerance."""


class UnpairedComplexRoot(PolyfactorError):
    """A complex root has no conjugate partner within tolerance."""


class PolynomialParseError(PolyfactorError, ValueError):
    """Input text could not be parsed as a polynomial."""

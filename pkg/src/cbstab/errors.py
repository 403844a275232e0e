"""Exception types shared by all cbstab modules."""


class CbstabError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CbstabError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class QuadratureFailure(CbstabError, RuntimeError):
    """Panel doubling exhausted without meeting the error tolerance."""


class NonFiniteSample(CbstabError, ArithmeticError):
    """An integrand returned NaN or infinity at a quadrature node."""


class InvalidBand(CbstabError, ValueError):
    """A spectral band violates its invariants (multiplicity < 1 or eigenvalue < 0)."""


class IncompleteSpectrum(CbstabError, ValueError):
    """A band list declared complete does not cover [0, cutoff]."""


class BoundViolation(CbstabError, ValueError):
    """Strict validation found a band below the Lichnerowicz-Obata or Killing bound."""

    def __init__(self, message, band=None):
        super().__init__(message)
        self.band = band


class ParseError(CbstabError, ValueError):
    """A spectrum file is malformed."""


class MissingField(ParseError):
    """A required field is absent from a spectrum file."""


class StepTooSmall(CbstabError, ArithmeticError):
    """Quadrature noise dominates a finite-difference step; results unreliable."""


class SpectrumCompletenessWarning(UserWarning):
    """Band list used without a declared completeness bound; counts may be low."""

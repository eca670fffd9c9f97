"""Exception taxonomy shared across the package.

Two broad families matter to callers (and to the CLI exit-code mapping):
``InputError`` for bad or insufficient data, ``NumericalError`` for failures
of the math itself (degenerate systems, non-realizable models).
"""


class FruitzError(Exception):
    """Base class for all package-specific errors."""


class InputError(FruitzError):
    """Invalid, malformed or insufficient input data."""


class NumericalError(FruitzError):
    """Numerical or synthesis failure on otherwise valid input."""


class ParseError(InputError):
    """Malformed file content; carries the offending line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(InputError):
    """Data violates a structural invariant (ordering, ranges, duplicates)."""


class InsufficientData(InputError):
    """Too few usable samples for the requested operation."""


class MissingFrequency(InputError):
    """A required measurement frequency is absent from a spectrum."""


class InconsistentSeries(InputError):
    """Spectra in a series do not share the same frequency grid."""


class SingularSystem(NumericalError):
    """Fitting system is numerically singular; carries the condition estimate."""

    def __init__(self, condition):
        super().__init__(f"system condition estimate {condition:.3e} exceeds threshold")
        self.condition = condition


class PoleAtFrequency(NumericalError):
    """Impedance evaluation hit a pole (vanishing denominator)."""

    def __init__(self, omega_rad_s):
        super().__init__(f"pole at omega = {omega_rad_s!r} rad/s")
        self.omega_rad_s = omega_rad_s


class SynthesisError(NumericalError):
    """Model cannot be realized as the requested topology; carries pole data."""

    def __init__(self, message, poles=()):
        super().__init__(message)
        self.poles = tuple(poles)


class ComplexPoles(SynthesisError):
    """Denominator roots are not all real."""


class UnstablePoles(SynthesisError):
    """A denominator root lies in the closed right half-plane."""


class NonDistinctPoles(SynthesisError):
    """Denominator roots coincide within tolerance."""


class DegenerateExpansion(NumericalError):
    """Continued-fraction expansion terminated early (vanishing leading term)."""


class DegeneratePhase(NumericalError):
    """High-frequency phase too close to zero for a phase ratio."""

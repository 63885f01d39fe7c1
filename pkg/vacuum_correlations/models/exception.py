class VacuumCorrelationError(Exception):
    """Base class for every error raised by the calculator."""

    def __init__(self, message="Vacuum correlation error!"):
        self.message = message
        super().__init__(self.message)


class InvalidMode(VacuumCorrelationError):
    """Physical mode parameters outside their domain (alpha >= 0, k <= 0, ...)."""


class InvalidParameter(VacuumCorrelationError):
    """Effective parameter or truncation level outside its domain."""


class BasisMismatch(VacuumCorrelationError):
    """A density matrix was handed to an operation expecting another basis."""


class InvalidSpectrum(VacuumCorrelationError):
    """Spectrum is not a (sub)probability distribution."""


class NumericalError(VacuumCorrelationError):
    """Eigensolver failure or a PSD-expected matrix with clearly negative eigenvalues."""


class DegenerateMeasurement(VacuumCorrelationError):
    """A measurement outcome has (numerically) zero probability."""


class MinimizerFailure(VacuumCorrelationError):
    """Refinement ended above the best coarse-grid value."""


class ConfigError(VacuumCorrelationError):
    """Bad sweep configuration."""


class IoError(VacuumCorrelationError):
    """Output path cannot be written."""


class TruncationWarning(UserWarning):
    """Truncation level clamped at n_cap before the tail tolerance was met."""

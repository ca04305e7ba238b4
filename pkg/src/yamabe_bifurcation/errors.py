"""Exception hierarchy shared by all modules."""


class YamabeError(Exception):
    """Base class for all library errors."""


class SpectrumFormatError(YamabeError):
    """Malformed custom spectrum file; carries the offending line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class IncompleteSpectrumError(YamabeError):
    """A result would need eigenvalues beyond the spectrum's completeness bound."""


class FamilyError(YamabeError):
    """Invalid factor combination for a product family."""


class DegeneratePairError(YamabeError):
    """The pair attains both thresholds exactly, so 0 is an eigenvalue for every s."""


class DegeneracyInstantError(YamabeError):
    """Morse index requested exactly at a degeneracy instant."""


class ConfigError(YamabeError):
    """Bad CLI flags or config file."""

"""Exception hierarchy for the ptgpe package."""


class PtgpeError(Exception):
    """Base class for all package-specific errors."""


class NoRealAmplitude(PtgpeError):
    """The amplitude constraint has no real solution for the requested mode."""


class InconsistentConstraints(PtgpeError):
    """The two component instances of the amplitude constraint disagree.

    Carries the relative mismatch so callers can decide whether to
    downgrade to a warning (the CLI does this below 5e-2).
    """

    def __init__(self, message: str, mismatch: float):
        super().__init__(message)
        self.mismatch = mismatch


class ConvergenceFailure(PtgpeError):
    """The dense eigensolver did not converge within its iteration cap."""


class StabilityGuardError(PtgpeError):
    """Requested time step violates the RK4 imaginary-axis stability bound."""


class BlowUpError(PtgpeError):
    """Field values became non-finite (or astronomically large) during stepping."""


class ConfigError(PtgpeError):
    """Base class for configuration problems (CLI exit code 2)."""


class MissingField(ConfigError):
    """A mode-required configuration field is absent."""


class InvalidValue(ConfigError):
    """A configuration field has a value outside its allowed range."""


class UnknownKey(ConfigError):
    """A configuration key is not recognized."""

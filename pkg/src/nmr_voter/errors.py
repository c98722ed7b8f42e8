"""Exception hierarchy for the voter library."""


class VoterError(Exception):
    """Base class for every error raised by nmr_voter."""


class ConfigError(VoterError, ValueError):
    """A designer parameter violates its bound.

    The message always starts with the offending field name.
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class ProfileError(VoterError, ValueError):
    """A fault-injection profile is inconsistent with the configuration."""


class MissingUnit(VoterError, ValueError):
    """The set of unit outputs does not match the configured uid list."""


class UidMismatch(VoterError, ValueError):
    """A unit output was paired with the data of another unit."""


class InitError(VoterError):
    """The voter cannot be initialised from the first cycle's outputs."""


class NoHealthyUnit(InitError):
    """No unit provides healthy data in the first cycle."""


class TraceMismatch(VoterError, ValueError):
    """A trace does not line up with its scenario."""


class BudgetExceeded(VoterError, ValueError):
    """An exhaustive enumeration request is larger than the allowed budget."""


class ScenarioParseError(VoterError, ValueError):
    """A scenario or trace file could not be parsed."""


class MutationError(VoterError, ValueError):
    """A trace offers no site where the requested mutation applies."""

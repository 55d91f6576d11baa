"""Exception types shared across the package.

The CLI maps these to exit codes: configuration problems exit 2,
numerical failures exit 3.
"""


class LapLabError(Exception):
    """Base class for package-specific errors."""


class ConfigError(LapLabError):
    """Invalid or inconsistent configuration (unknown key, out-of-range value)."""


class NumericalError(LapLabError):
    """A numerical routine failed; the message names the module and operation."""

# SPDX-License-Identifier: CC-BY-SA-4.0

"""Root of the exception hierarchy."""


class LabError(Exception):
    """Base class for every error raised by relanosov-lab."""


class ConfigError(LabError):
    """Raised when a run configuration or group definition is unusable."""

"""Exception types shared across the package."""

from __future__ import annotations


class QpathsError(Exception):
    """Base class for all package errors."""


class InvalidArgument(QpathsError, ValueError):
    """A contract precondition was violated by the caller."""


class UnsupportedConfiguration(QpathsError):
    """The input is well-formed but outside the supported envelope."""


class SizeLimitExceeded(UnsupportedConfiguration):
    """An exact enumeration was requested beyond its guard rails."""


class SingularPoint(QpathsError):
    """A curve evaluation hit a parameter where the map degenerates."""


class NumericalFailure(QpathsError):
    """A numerical routine could not reach its accuracy target."""


class ConfigError(QpathsError):
    """Invalid run configuration; carries the full list of violations."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))

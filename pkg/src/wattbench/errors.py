"""Exception hierarchy shared by all wattbench modules."""

from __future__ import annotations


class WattbenchError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(WattbenchError):
    """An experiment configuration is malformed; the message names the key path."""


# -- powercap ---------------------------------------------------------------

class EmptyTreeError(WattbenchError):
    """No energy domains found under the powercap root (energy measurement unavailable)."""


class CounterPermissionError(WattbenchError):
    """An energy counter exists but is not readable by the current user."""

    def __init__(self, path, hint: str) -> None:
        super().__init__(f"cannot read {path}: {hint}")
        self.path = path
        self.hint = hint


class CounterReadError(WattbenchError):
    """A counter read failed transiently (I/O error or unparseable content)."""


class RangeViolationError(WattbenchError):
    """A counter value exceeds the domain's declared wraparound range."""


class DomainMismatchError(WattbenchError):
    """Two energy snapshots do not cover the same set of package domains."""


# -- procsample -------------------------------------------------------------

class ProcessGoneError(WattbenchError):
    """The target process has exited; the sampling session ends normally."""


class NonMonotonicClockError(WattbenchError):
    """Wall clock went backwards between two reads; the sample is discarded."""


# -- tagstream --------------------------------------------------------------

class MalformedTagError(WattbenchError):
    """A tag line does not match the ``<epoch_ns>\\t<name>`` protocol."""


class MissingStartError(WattbenchError):
    """No ``start_<region>`` event found in the run's tag stream."""


class MissingFinishError(WattbenchError):
    """No ``finish_<region>`` event found after the region's start event."""


# -- regions ----------------------------------------------------------------

class RegionNotFoundError(WattbenchError):
    """The requested region cannot be resolved from the run's tags."""


# -- ratiostats -------------------------------------------------------------

class NonPositiveInputError(WattbenchError):
    """A ratio input was zero or negative; the pair is excluded."""


class InvalidDofError(WattbenchError):
    """Degrees of freedom must be a positive integer."""


class InsufficientPairsError(WattbenchError):
    """Fewer than two valid pairs; no confidence interval can be formed."""


# -- report -----------------------------------------------------------------

class UnmappedScenarioError(WattbenchError):
    """A scenario has no category assigned in the summary mapping."""


# -- runner -----------------------------------------------------------------

class SpawnFailureError(WattbenchError):
    """A child process could not be started at all (configuration bug)."""

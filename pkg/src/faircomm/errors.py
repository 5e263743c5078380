"""Exception types shared across the package.

The CLI maps these onto exit codes: input problems (parse, coverage,
config) exit with 2, undefined-metric situations with 3, anything else
with 4.
"""


class FaircommError(Exception):
    """Base class for all errors raised by this package."""


class EdgeListParseError(FaircommError):
    """Malformed or empty edge-list input."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class PartitionCoverageError(FaircommError):
    """A partition file does not cover the node set exactly once."""

    def __init__(self, message, offending_ids=()):
        ids = sorted(offending_ids)
        if ids:
            shown = ", ".join(str(i) for i in ids[:20])
            if len(ids) > 20:
                shown += f", ... ({len(ids)} total)"
            message = f"{message}: {shown}"
        super().__init__(message)
        self.offending_ids = ids


class NodeSetMismatchError(FaircommError):
    """Two partitions that must cover the same node set do not."""


class UndefinedValueError(FaircommError):
    """A quantity is mathematically undefined for the given input."""


class NoVariationError(FaircommError):
    """A regression or normalization input has zero spread."""


class InsufficientDataError(FaircommError):
    """Fewer data points than the operation requires."""


class ConfigError(FaircommError):
    """Invalid generator or experiment configuration."""

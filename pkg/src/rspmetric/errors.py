"""Typed errors raised by the library.

Every precondition failure maps to one of these, so callers (and the CLI)
can distinguish usage problems from genuine bugs.
"""


class RspMetricError(Exception):
    """Base class for all library errors."""


class DisconnectedGraphError(RspMetricError):
    """The operation requires a connected graph (or finite metric)."""


class SizeCapExceededError(RspMetricError):
    """Instance is larger than the exact algorithm's configured cap."""


class NotEnoughEdgesError(RspMetricError):
    """Asked for more edges than the graph has."""


class OddVertexCountError(RspMetricError):
    """Perfect matchings need an even number of vertices."""


class InfiniteDistanceError(RspMetricError):
    """Heuristics and exact baselines refuse metrics with infinite entries."""


class TooFewVerticesError(RspMetricError):
    """The operation needs more vertices than the instance has."""


class EmptyCenterSetError(RspMetricError):
    """k-median cost is undefined for an empty center set."""


class NTooSmallError(RspMetricError):
    """The bound is only stated for sufficiently many vertices."""


class ParameterOutOfRangeError(RspMetricError):
    """A formula parameter is outside the range where the bound holds."""


class ConfigInvalidError(RspMetricError):
    """Experiment configuration failed validation."""


class EmptySelectionError(RspMetricError):
    """A summary was requested over an empty selection of values."""

"""
Exceptions raised by minimax-olo.
All of them are ValueErrors so callers validating input can catch one type.
"""


class MinimaxError(ValueError):
    """Base class for every library error."""


class OddHorizonError(MinimaxError):
    """The closed form requires an even horizon."""


class HorizonError(MinimaxError):
    """A round index lies outside the game."""


class NonFiniteValueError(MinimaxError):
    """A conditional value or expectation came out infinite or NaN."""


class UnsupportedBenchmarkError(MinimaxError):
    """The operation is not defined for this benchmark kind."""


class GradientRangeError(MinimaxError):
    """An adversary produced a gradient outside [-1, 1]."""


class ReplayExhaustedError(MinimaxError):
    """A replayed gradient sequence ran out."""


class IncompleteTranscriptError(MinimaxError):
    """The transcript holds fewer rounds than the horizon."""


class EmptyGridError(MinimaxError):
    """A search grid contains no points."""


class GridBracketError(MinimaxError):
    """Grid induction hit an endpoint of its x-range."""


class OracleMismatchError(MinimaxError):
    """Two independent oracle paths disagree."""

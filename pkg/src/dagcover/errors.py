"""Exception hierarchy shared by all dagcover modules.

The CLI maps these onto exit codes (invalid input -> 2, size or
feasibility limits -> 3), so library code should raise the most
specific class that applies.
"""


class DagCoverError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(DagCoverError, ValueError):
    """Malformed or out-of-contract input (bad permutation, self-loop, ...)."""


class SizeLimitError(DagCoverError):
    """Instance exceeds the documented size bound of an exact algorithm."""


class UndefinedParameterError(DagCoverError):
    """The requested parameter is undefined for this input (e.g. density of an edgeless graph)."""


class InfeasibleSizeError(DagCoverError):
    """The ground set is too small for the requested construction (n < r**x)."""

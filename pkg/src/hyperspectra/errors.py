"""Exception hierarchy shared by all modules."""


class HyperspectraError(Exception):
    pass


class InputError(HyperspectraError, ValueError):
    """Malformed or invalid hypergraph input."""


class EdgeTooSmall(InputError):
    pass


class NonPositiveWeight(InputError):
    pass


class DuplicateEdge(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class ZeroDegreeVertex(InputError):
    pass


class TooLarge(HyperspectraError):
    """A brute-force search would exceed its configured cap."""


class InvalidEll(HyperspectraError, ValueError):
    pass


class ZeroVector(HyperspectraError, ValueError):
    pass


class NotEvenOrder(HyperspectraError):
    pass


class OddOrder(HyperspectraError):
    pass


class NoDuplicates(HyperspectraError):
    pass


class OrderMismatch(HyperspectraError):
    pass


class MissingReference(HyperspectraError):
    pass


class NotNonnegative(HyperspectraError):
    pass


class NotConnected(HyperspectraError):
    pass


class NoConvergence(HyperspectraError):
    pass


class PathBudgetExceeded(HyperspectraError):
    pass


class Inconclusive(HyperspectraError):
    """Two independently seeded slicing runs disagreed."""

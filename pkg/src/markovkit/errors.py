"""Exception hierarchy.

Everything raised on purpose by the library derives from :class:`MarkovError`.
:class:`InputError` marks malformed user input (the CLI maps it to exit
code 2); every other :class:`MarkovError` is a domain error (exit code 1).
"""


class MarkovError(ValueError):
    """Base class for library errors."""


class InputError(MarkovError):
    """Malformed or invalid external input."""


class ParseError(InputError):
    pass


class ValidationError(InputError):
    pass


class UnknownSubcommand(InputError):
    pass


# graph construction
class SizeTooSmall(MarkovError):
    pass


class InvalidProbability(MarkovError):
    pass


class InvalidEdge(MarkovError):
    pass


class Disconnected(MarkovError):
    pass


# transition matrices
class NotSquare(MarkovError):
    pass


class NegativeEntry(MarkovError):
    pass


class RowSumInvalid(MarkovError):
    def __init__(self, row, total):
        super().__init__(f"row {row} sums to {total!r}, expected 1")
        self.row = row
        self.total = total


class IsolatedVertex(MarkovError):
    pass


class LoopUnsupported(MarkovError):
    pass


class EmptyBoundary(MarkovError):
    pass


class BoundaryIsEverything(MarkovError):
    pass


class ProbabilitySumInvalid(MarkovError):
    pass


class BoundaryLeak(MarkovError):
    pass


class DimensionMismatch(MarkovError):
    pass


class NotIrreducible(MarkovError):
    pass


class StateOutOfRange(MarkovError):
    pass


# stationary / reversal
class NonPositivePi(MarkovError):
    pass


class NotStationary(MarkovError):
    pass


class NotReversible(MarkovError):
    pass


# absorption
class BoundaryUnreachable(MarkovError):
    def __init__(self, state):
        super().__init__(f"no boundary state is reachable from state {state}")
        self.state = state


class StartOutOfRange(MarkovError):
    pass


# spectral
class NoConvergence(MarkovError):
    pass


class DegenerateGap(MarkovError):
    pass


# samplers
class RatioExceedsOne(MarkovError):
    def __init__(self, x, ratio):
        super().__init__(f"target/(M*base) = {ratio!r} > 1 at {x!r}; the bound M is violated")
        self.x = x
        self.ratio = ratio


class MaxProposalsExceeded(MarkovError):
    pass


class InvalidThinning(MarkovError):
    pass


# models / martingales
class StateSpaceTooLarge(MarkovError):
    pass


class ZeroEigenvalue(MarkovError):
    pass

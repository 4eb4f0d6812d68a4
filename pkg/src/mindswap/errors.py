"""Exception hierarchy shared by the mindswap modules."""


class MindswapError(Exception):
    """Base class for every error raised by this package."""


class MalformedCycleError(MindswapError, ValueError):
    """A cycle is too short or repeats a label."""


class DisjointnessError(MindswapError, ValueError):
    """Two cycles passed to ``from_cycles`` share a label."""


class ParseError(MindswapError, ValueError):
    """Cycle notation or a swap log could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NothingToUndoError(MindswapError, ValueError):
    """The permutation is the identity, so there is nothing to restore."""


class NeedHelpersError(MindswapError, ValueError):
    """A single transposition needs outside bodies to be factored."""

    def __init__(self, required, available=0):
        self.required = required
        self.available = available
        super().__init__(
            f"need {required} helper bodies outside the support, got {available}"
        )


class InvalidProblemError(MindswapError, ValueError):
    """A search problem is malformed or above the universe size cap."""


class SearchBudgetExceededError(MindswapError, RuntimeError):
    """The restoration search gave up before finding a plan."""

    def __init__(self, message, explored_depth=None):
        self.explored_depth = explored_depth
        super().__init__(message)


class InvalidRosterError(MindswapError, ValueError):
    """A machine was created with no bodies, or a strict roster was violated."""


class PairReusedError(MindswapError, ValueError):
    """The machine was asked to swap a pair it has already swapped."""

    def __init__(self, pair, index=None):
        self.pair = pair
        self.index = index
        where = "" if index is None else f" at swap #{index + 1}"
        super().__init__(f"pair ({pair.a} {pair.b}) was already used{where}")

"""Exception types shared across the package."""


class WngtError(Exception):
    """Base class for all package errors."""


class InvalidSystem(WngtError):
    pass


class NotARoot(WngtError):
    pass


class NotInLattice(WngtError):
    pass


class NonReduced(WngtError):
    """A word has a cancellation; ``position`` is the 1-based event index."""

    def __init__(self, position):
        super().__init__(f"word is not reduced at event {position}")
        self.position = position


class InvalidSequence(WngtError):
    def __init__(self, position, reason=""):
        super().__init__(f"not a lambda-sequence at position {position}: {reason}".rstrip(": "))
        self.position = position


class CapExceeded(WngtError):
    def __init__(self, cap):
        super().__init__(f"search exceeded the node cap {cap}")
        self.cap = cap


class TripleAbsent(WngtError):
    pass


class InvalidTriple(WngtError):
    pass


class RankTooSmall(WngtError):
    pass


class NotAlmostDominant(WngtError):
    pass


class BarNotAlmostDominant(WngtError):
    pass


class ConditionsFailed(WngtError):
    def __init__(self, failed, data=None):
        super().__init__("conditions failed: " + ", ".join(failed))
        self.failed = list(failed)
        self.data = data


class BetaNegative(WngtError):
    pass


class InvalidData(WngtError):
    pass


class ParityViolation(WngtError):
    def __init__(self, side):
        super().__init__(f"odd number of {side} reflections")
        self.side = side


class InvalidConfiguration(WngtError):
    pass

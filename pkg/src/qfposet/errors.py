"""Exception hierarchy for qfposet."""


class QFError(Exception):
    """Base class for all qfposet errors."""


# sequence construction and indexing

class LevelTooSmall(QFError, ValueError):
    pass


class SeedCountMismatch(QFError, ValueError):
    pass


class SeedDominanceViolated(QFError, ValueError):
    def __init__(self, k, seed, earlier_sum):
        self.k = k
        super().__init__(
            f"seed A_{k} = {seed} does not exceed the sum of earlier seeds ({earlier_sum})"
        )


class IndexBelowRange(QFError, ValueError):
    pass


class BelowFirstTerm(QFError, ValueError):
    pass


# representation arithmetic

class SupportOverlap(QFError, ValueError):
    def __init__(self, position):
        self.position = position
        super().__init__(f"supports overlap at position {position}")


class SupportNotContained(QFError, ValueError):
    def __init__(self, position):
        self.position = position
        super().__init__(f"subtrahend has a 1 at position {position} where the minuend has 0")


class LengthExceedsK(QFError, ValueError):
    pass


# posets

class VertexNotFound(QFError, KeyError):
    pass


class EmptyPoset(QFError, ValueError):
    pass


class NotALattice(QFError, ValueError):
    def __init__(self, a, b, which):
        self.a, self.b = a, b
        super().__init__(f"{which} of {a} and {b} does not exist")


class NotDisjoint(QFError, ValueError):
    pass


class BridgeNotCover(QFError, ValueError):
    def __init__(self, a, b):
        self.a, self.b = a, b
        super().__init__(f"bridge pair {a} -> {b} is not a local move")


class BridgeNotBijective(QFError, ValueError):
    pass


class BaseCase(QFError, ValueError):
    pass


# coefficient recursions

class OddLevel(QFError, ValueError):
    pass


class EvenLevel(QFError, ValueError):
    pass


class InvariantViolation(QFError, AssertionError):
    """A structural property that should always hold was observed to fail.

    These are findings about the mathematics, not recoverable states; the
    verification sweep counts them as failures.
    """


class CharacterizationViolated(InvariantViolation):
    pass


class IntervalGap(InvariantViolation):
    pass


class IntervalOverlap(InvariantViolation):
    pass


class BoundViolated(InvariantViolation):
    pass

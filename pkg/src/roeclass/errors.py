"""Exception types shared across the library.

The CLI maps these onto exit codes: MalformedInput -> 2, DepthExhausted -> 3,
PreconditionViolation and its subclasses -> 4.
"""


class RoeclassError(Exception):
    pass


class MalformedInput(RoeclassError):
    """Input file or argument does not parse or violates its schema."""


class DepthExhausted(RoeclassError):
    """A bounded search ran out of levels before meeting its goal."""


class PreconditionViolation(RoeclassError):
    """An operation was called outside its contract."""


class NotEquivalent(PreconditionViolation):
    """The two towers are not bijectively coarsely equivalent."""


class NotBlockDiagonal(PreconditionViolation):
    """Operator propagation exceeds the requested block level."""


class NotProjection(PreconditionViolation):
    """An operator expected to satisfy p*p = p = p* does not."""


class UnsupportedEntries(PreconditionViolation):
    """Exact construction is only implemented for a restricted entry shape."""

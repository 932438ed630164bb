"""Exception hierarchy shared by all modules."""


class NonlocalityError(Exception):
    """Base class for all errors raised by this package."""


class ShapeMismatch(NonlocalityError):
    """An operation received a model or relabelling of an incompatible shape."""


class NotPossible(NonlocalityError):
    """A grid extension was requested for an impossible table entry."""


class TooLarge(NonlocalityError):
    """A size guard tripped (grid enumeration or qubit cap)."""


class InvalidWitness(NonlocalityError):
    """A witness does not hold in the model it was evaluated against."""


class Commuting(NonlocalityError):
    """The two projections commute, so the paradox construction is undefined."""


class DegenerateParams(NonlocalityError):
    """State-family parameter hit a degenerate point (product or excluded value)."""


class InvalidStars(NonlocalityError):
    """A star cell lies on or below the diagonal, or out of range."""


class ParseError(NonlocalityError):
    """A model file could not be parsed."""


class ValidationError(NonlocalityError):
    """A model file parsed but violates the format's validity rules."""

"""Exception types shared across the toolkit."""


class ReductorsError(Exception):
    """Base class for all toolkit errors."""


class DimensionError(ReductorsError):
    """Operands live in groups/spaces of different rank or dimension."""


class DomainError(ReductorsError):
    """Operation applied outside its domain (e.g. negating infinity)."""


class ParseError(ReductorsError):
    """Syntax error in an element or relation string."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class PresentationError(ReductorsError):
    """Ill-formed presentation (bad weights, duplicate rules, ...)."""


class OrientationError(PresentationError):
    """A rewrite rule's left side does not dominate its right side."""


class StepLimitExceeded(ReductorsError):
    """Rewriting ran past the per-element step budget."""


class NotIntegralError(ReductorsError):
    """Residue requested for an element of negative value."""


class NotALatticeError(ReductorsError):
    """A module fails the lattice condition (deficient span)."""


class RankError(ReductorsError):
    """Residue vectors do not form a basis of the residue space."""


class CoefficientEscape(ReductorsError):
    """A normal form of a word with integral coefficients acquired a
    coefficient outside the valuation ring.

    Carries the first offending degree, word and coefficient; raised
    eagerly while building a reductor, in degree-then-lex word order.
    """

    def __init__(self, degree, word_str, coefficient_str):
        self.degree = degree
        self.word = word_str
        self.coefficient = coefficient_str
        super().__init__(
            f"coefficient {coefficient_str} outside the valuation ring "
            f"in the normal form of {word_str} (degree {degree})"
        )


class DegreeOverflowError(ReductorsError):
    """Element lies outside the filtration window the reductor covers."""


class PreconditionError(ReductorsError):
    """An operation was called before its prerequisite check passed."""


class UnsupportedShapeError(ReductorsError):
    """The algebra shape is outside what this check can decide."""


class InconclusiveError(ReductorsError):
    """A desk-scale computation failed to stabilize; no verdict."""


class ConfigError(ReductorsError):
    """Invalid run configuration."""

    def __init__(self, message, section=None, key=None):
        self.section = section
        self.key = key
        where = ""
        if section is not None:
            where = f" [{section}]" + (f".{key}" if key else "")
        super().__init__(message + where)

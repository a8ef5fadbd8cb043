"""Exception types raised by the library."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InvalidConfigError(ValueError):
    """A match configuration violates the round/bonus constraints."""


class DegenerateInputError(ArithmeticError):
    """A quantity is undefined because a denominator vanishes."""


class BracketError(ArithmeticError):
    """A root-finding bracket does not straddle zero."""

"""Exception types shared across the package."""


class EndpointNotRepresentable(ValueError):
    """The value 1 has no fixed-length binary-word preimage on any level grid."""


class NotOnGrid(ValueError):
    """A dyadic is not of the form k/2^n for the requested level n."""


class LengthMismatch(ValueError):
    """Interleaving requires words of equal length."""


class EmptyTreeError(ValueError):
    """Path search requires the root to be a member."""


class PrefixClosureError(ValueError):
    """A word set contains a word whose parent is missing."""

    def __init__(self, word: str):
        self.word = word
        super().__init__(f'prefix-closure violated at "{word}"')


class ExpressionSyntaxError(ValueError):
    """Parse failure; carries the offending position and what was expected."""

    def __init__(self, message: str, position: int, expected: str | None = None):
        self.position = position
        self.expected = expected
        detail = f"{message} at position {position}"
        if expected is not None:
            detail += f" (expected {expected})"
        super().__init__(detail)


class UnknownFunctionError(ExpressionSyntaxError):
    """A function name outside the supported set (or disabled by configuration)."""

    def __init__(self, name: str, position: int):
        self.name = name
        ValueError.__init__(self, f"unknown function {name!r} at position {position}")
        self.position = position
        self.expected = None


class DivisionByPossibleZero(ArithmeticError):
    """A denominator enclosure failed to exclude zero at the working precision."""


class DomainError(ValueError):
    """Argument enclosure outside the supported range of a transcendental."""


class RefinementBudgetExceeded(RuntimeError):
    """Precision refinement hit the configured cap before deciding a comparison."""


class DepthExhausted(RuntimeError):
    """A bounded search ran out of depth without reaching its goal."""

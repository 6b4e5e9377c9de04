"""Exception types shared across the package."""


class OrdalgError(Exception):
    """Base class for every error this package raises deliberately."""


class InputError(OrdalgError, ValueError):
    """Malformed or out-of-contract input: unknown element, partial table, ..."""


class ResourceBudgetError(OrdalgError, RuntimeError):
    """An enumeration would exceed its configured budget.

    Raised eagerly, before work starts where possible.  Budgets never cause
    silent truncation; exceeding one is always an explicit failure.
    """


class ParseError(OrdalgError, ValueError):
    """Syntax or well-formedness error in a text input, with position."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(str(self))

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        if self.col is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, col {self.col}: {self.message}"


class RecMorphismError(OrdalgError):
    """Synthesising the canonical morphism out of an initial algebra failed.

    ``cause`` is ``"target-not-algebra"`` when the target fails its own
    inequalities (the failure is the caller's), or ``"saturation-incomplete"``
    when the target is fine and the saturated relation must be missing pairs
    (raise the depth bound).
    """

    def __init__(self, message: str, cause: str):
        self.cause = cause
        super().__init__(f"{message} [{cause}]")

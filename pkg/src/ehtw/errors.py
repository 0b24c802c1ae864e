class InputError(ValueError):
    """Malformed or out-of-contract input (CLI exit code 2)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class GuardrailError(RuntimeError):
    """Instance exceeds the size limit of an exhaustive routine (exit code 3)."""


class BudgetExhausted(RuntimeError):
    """Raised internally when a search runs out of nodes."""

class InstanceError(ValueError):
    """Malformed instance text. ``code`` is one of E_RANK, E_LETTER, E_COEF, E_SECTION, E_SYNTAX."""

    def __init__(self, code: str, line: int, message: str):
        super().__init__(f"line {line}: {code}: {message}")
        self.code = code
        self.line = line
        self.message = message


class BudgetExceeded(RuntimeError):
    """Raised by the brute-force routines when their work cap is hit."""


class RankMismatch(ValueError):
    pass

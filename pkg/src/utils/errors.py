from __future__ import annotations


class ZeroDenominatorError(ZeroDivisionError):
    pass


class PoleError(ArithmeticError):
    """Raised when a substitution sends a denominator to zero."""

    def __init__(self, message: str = "pole at assignment", witness=None):
        super().__init__(message)
        self.witness = witness


class NoExactRootError(ValueError):
    pass


class LegMismatchError(ValueError):
    pass


class DegreeOverflowError(ValueError):
    pass


class RewriteBudgetError(RuntimeError):
    def __init__(self, budget: int, word=None, check_id: str | None = None):
        self.budget = budget
        self.word = word
        self.check_id = check_id
        super().__init__(f"rule budget of {budget} applications exceeded while reducing {word}")


class ConfigError(ValueError):
    pass

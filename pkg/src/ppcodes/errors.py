class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured enumeration budget."""

    def __init__(self, what: str, needed: int, budget: int):
        super().__init__(f"{what}: needs {needed}, budget is {budget}")
        self.what = what
        self.needed = needed
        self.budget = budget


class TheoremViolation(AssertionError):
    """A proven identity or inequality failed on computed numbers (always a bug)."""

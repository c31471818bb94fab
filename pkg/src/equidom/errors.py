class IntegrityError(RuntimeError):
    """An internal invariant that the theory guarantees was observed to fail."""


class BudgetExceeded(RuntimeError):
    """A brute-force routine refused to run past its configured budget."""

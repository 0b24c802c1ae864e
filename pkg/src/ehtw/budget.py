from .errors import BudgetExhausted

DEFAULT_BUDGET = 10**7


class Budget:
    """Node counter shared by the pieces of one search call."""

    __slots__ = ("limit", "used")

    def __init__(self, limit=DEFAULT_BUDGET):
        self.limit = limit
        self.used = 0

    def tick(self, k=1):
        self.used += k
        if self.limit is not None and self.used > self.limit:
            raise BudgetExhausted(self.used)

    @property
    def remaining(self):
        if self.limit is None:
            return None
        return max(0, self.limit - self.used)


def as_budget(budget):
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)

"""Exception types raised across the package."""


class BeeColonyError(Exception):
    """Base class for package errors."""


class BudgetExhausted(BeeColonyError):
    """The evaluation cap has been reached; no further objective calls are allowed."""


class DimensionMismatch(BeeColonyError, ValueError):
    pass


class DegenerateFitness(BeeColonyError, ValueError):
    """Fitness values sum to zero (or are not finite), so no selection distribution exists."""


class UnknownProblem(BeeColonyError, KeyError):
    pass


class UnknownVariant(BeeColonyError, ValueError):
    pass


class MissingVariant(BeeColonyError, KeyError):
    pass

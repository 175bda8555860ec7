"""Exception types shared across the package."""


class SyndgapError(Exception):
    """Base class for all errors raised by this package."""


class NotPrimePower(SyndgapError, ValueError):
    pass


class DivisionByZero(SyndgapError, ZeroDivisionError):
    pass


class DimensionMismatch(SyndgapError, ValueError):
    pass


class NotInRowSpace(SyndgapError, ValueError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"given vector {index} is not in the row space")


class NotExpressible(SyndgapError, ValueError):
    pass


class BudgetExceeded(SyndgapError):
    def __init__(self, estimate, budget, what=""):
        self.estimate = estimate
        self.budget = budget
        super().__init__(f"{what} cost estimate {estimate} exceeds budget {budget}".strip())


class TableTooLarge(SyndgapError, ValueError):
    pass


class DegenerateDirection(SyndgapError, ValueError):
    pass


class RankTooLow(SyndgapError, ValueError):
    pass


class DesignDegenerate(SyndgapError, ValueError):
    pass


class DegenerateTarget(SyndgapError, ValueError):
    pass


class NotAWitness(SyndgapError, ValueError):
    pass


class ThresholdUnderflow(SyndgapError, ValueError):
    pass


class MissingDistance(SyndgapError, ValueError):
    pass


class InfeasibleBudget(SyndgapError):
    pass


class HypothesisUnmet(SyndgapError):
    pass


class ParameterViolation(SyndgapError, ValueError):
    pass


class DistanceTooSmall(SyndgapError, ValueError):
    def __init__(self, distance, codeword=None):
        self.distance = distance
        self.codeword = codeword
        super().__init__(f"code distance {distance} is below the required bound")


class NotFound(SyndgapError):
    def __init__(self, best, message=None):
        self.best = best
        super().__init__(message or f"no code found; best distance seen {best}")


class DomainError(SyndgapError, ValueError):
    pass


class AdmissibilityViolation(SyndgapError, ValueError):
    pass


class HypothesisViolation(SyndgapError, ValueError):
    pass


class ConfigError(SyndgapError, ValueError):
    pass

"""Exception hierarchy shared by all mvred modules."""


class MvredError(Exception):
    """Base class for every error raised by this package."""


class LatticeError(MvredError):
    pass


class ParseError(MvredError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)


class GroundingError(MvredError):
    pass


class StratificationError(MvredError):
    pass


class EvaluationError(MvredError):
    """Unknown atom, world or operator during evaluation."""


class BudgetExceeded(MvredError):
    def __init__(self, what, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(f"{what}: {required} required, budget is {budget}")

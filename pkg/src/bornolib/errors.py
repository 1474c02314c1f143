"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`BornoError`.
The CLI maps :class:`ParseError` to exit status 2 and every other
:class:`BornoError` to exit status 1.
"""


class BornoError(Exception):
    """Base class of all library errors."""


class ContractViolation(BornoError, ValueError):
    """An argument does not satisfy the documented precondition."""


class ParseError(BornoError, ValueError):
    """An input document could not be parsed or validated."""


class UniverseTooLarge(ContractViolation):
    pass


class NotCovering(ContractViolation):
    pass


class InvalidBornology(ContractViolation):
    pass


class NotDirected(ContractViolation):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetZero(ContractViolation):
    pass


class EmptyCloud(ContractViolation):
    pass


class TooManyPoints(ContractViolation):
    pass


class HypothesisNotMet(BornoError):
    """The premise of a verified statement does not hold for the input.

    This is not a failure of the statement itself.
    """


class UnknownSuite(BornoError, KeyError):
    pass

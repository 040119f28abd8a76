"""Exception hierarchy shared by every module."""


class NormliftError(Exception):
    """Base class for all library errors."""


class FieldMismatch(NormliftError):
    pass


class ZeroSeries(NormliftError):
    pass


class InsufficientPrecision(NormliftError):
    pass


class PrecisionTooLow(NormliftError):
    pass


class NotAMultiple(NormliftError):
    pass


class DimensionMismatch(NormliftError):
    pass


class NotSmoothEnough(NormliftError):
    pass


class PrecisionExhausted(NormliftError):
    pass


class EmptyDecomposition(NormliftError):
    pass


class SearchBudgetExceeded(NormliftError):
    pass


# the pointfinder spells the same condition differently
BudgetExceeded = SearchBudgetExceeded


class RegimeError(NormliftError):
    """Inputs fall outside the d <= n regime a harness is restricted to."""


class TrivialExtension(NormliftError):
    pass


class PreconditionViolated(NormliftError):
    pass


class DuplicateCoefficientClass(NormliftError):
    pass


class Infeasible(NormliftError):
    pass


class RefusedNonMember(NormliftError):
    pass


class NotFoundWithinBound(NormliftError):
    pass


class ParseError(NormliftError):
    pass

"""Exception hierarchy.

Every domain error derives from :class:`KakeyaError`; the CLI reports the
class name and exits with status 1.
"""


class KakeyaError(ValueError):
    pass


class NonPrimeCharacteristic(KakeyaError):
    pass


class OrderTooLarge(KakeyaError):
    pass


class ZeroInverse(KakeyaError, ZeroDivisionError):
    pass


class NotASquareOrder(KakeyaError):
    pass


class InvalidLineIndex(KakeyaError):
    pass


class ParseError(KakeyaError):
    pass


class AxiomViolation(KakeyaError):
    pass


class SelectionClassMismatch(KakeyaError):
    pass


class PointNotMaxKnot(KakeyaError):
    pass


class DomainError(KakeyaError):
    pass


class OddOrder(KakeyaError):
    pass


class EvenOrder(KakeyaError):
    pass


class InvalidChoice(KakeyaError):
    pass


class BudgetExceeded(KakeyaError):
    pass

"""Exception hierarchy shared by all geocards modules."""


class GeoCardsError(Exception):
    """Base class for every error raised by this package."""


class NotPrimePower(GeoCardsError, ValueError):
    pass


class FieldMismatch(GeoCardsError, ValueError):
    pass


class DivisionByZero(GeoCardsError, ZeroDivisionError):
    pass


class IndexOutOfRange(GeoCardsError, IndexError):
    pass


class SizeGuard(GeoCardsError):
    """An operation would materialize more points or hands than the budget allows."""


class PreconditionViolated(GeoCardsError, ValueError):
    pass


class BadParams(GeoCardsError, ValueError):
    pass


class BadHandSize(GeoCardsError, ValueError):
    pass


class EmptyCath(GeoCardsError, ValueError):
    """The excluding-hand construction needs at least one of Cath's cards."""


class Ambiguous(GeoCardsError):
    """Zero or several announced hands are consistent with a player's view."""

    def __init__(self, count, message=None):
        self.count = count
        super().__init__(message or f"expected exactly one consistent hand, found {count}")

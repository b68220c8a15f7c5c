"""Exceptions and warnings shared across the package."""


class CongroupError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInput(CongroupError):
    pass


class RingMismatch(CongroupError):
    pass


class SeriesSyntaxError(CongroupError):
    """Series text does not conform to the grammar; carries the offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class WindowTooSmall(CongroupError):
    """A declared finite window (bits, parameter sequence) cannot support
    the requested evaluation; ``needed`` describes what would suffice.

    When the partial evaluation still determines a sound (if empty) value,
    it is attached as ``sound_zero`` so that compositions may continue at
    reduced precision instead of failing outright."""

    def __init__(self, message, needed=None, sound_zero=None):
        super().__init__(message)
        self.needed = needed
        self.sound_zero = sound_zero


class SpecMismatch(CongroupError):
    pass


class InsufficientPrecision(CongroupError):
    pass


class BadParams(CongroupError):
    pass


class NotExact(CongroupError):
    pass


class OrderMismatch(CongroupError):
    pass


class NotContractive(CongroupError):
    def __init__(self, place, poly, test):
        super().__init__(f"{poly} fails the {test} test at place {place}")
        self.place = place
        self.poly = poly
        self.test = test


class DegreeZero(CongroupError):
    pass


class EmptyWindowWarning(UserWarning):
    """An evaluation produced no known coefficient; the returned value is a
    zero at the sound precision."""

"""Exception hierarchy shared by all modules."""


class AlgSeriesError(Exception):
    """Base class for library errors."""


class MismatchedRadicand(AlgSeriesError):
    pass


class ArityMismatch(AlgSeriesError):
    pass


class ZeroPolynomial(AlgSeriesError):
    pass


class NonRationalRoots(AlgSeriesError):
    """An edge polynomial has roots outside the rationals.

    ``cofactor`` holds the (dense, ascending) coefficient list of the part
    that did not split over Q.
    """

    def __init__(self, cofactor, message=None):
        self.cofactor = list(cofactor)
        super().__init__(message or f"polynomial has non-rational roots (cofactor coefficients {[str(c) for c in self.cofactor]})")


class UnsupportedDimension(AlgSeriesError):
    pass


class NotAdmissible(AlgSeriesError):
    pass


class NotLineFree(AlgSeriesError):
    pass


class NotTotal(AlgSeriesError):
    pass


class NoCompatiblePath(AlgSeriesError):
    pass


class BudgetExceeded(AlgSeriesError):
    pass


class ZeroRoot(AlgSeriesError):
    pass


class ParseError(AlgSeriesError):
    """Syntax error in an expression; ``pos`` is the 0-based column."""

    def __init__(self, message, pos=None, text=None):
        self.pos = pos
        self.text = text
        loc = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{loc}")


class UnknownVariable(ParseError):
    pass

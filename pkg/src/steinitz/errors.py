"""Exception hierarchy.  Each class carries a short ``code`` used by the CLI
and by callers that need to tell rejection reasons apart."""


class SteinitzError(Exception):
    code = "ERROR"


class DomainError(SteinitzError, ValueError):
    code = "DOMAIN"


class UnsupportedError(DomainError):
    code = "UNSUPPORTED"


class NotASquare(SteinitzError, ValueError):
    code = "NOT_A_SQUARE"


class CapacityError(SteinitzError, RuntimeError):
    code = "CAPACITY"


class DegenerateExtension(DomainError):
    """The proposed extension collapses (alpha, or a product, is a square)."""

    code = "DEGENERATE_SQUARE"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class WildRamification(DomainError):
    code = "WILD"


class PreconditionError(DomainError):
    code = "PRECONDITION"


class InconsistencyError(SteinitzError, AssertionError):
    """Two computation routes that must agree did not."""

    code = "INCONSISTENT"


class TheoremContradiction(InconsistencyError):
    """An observed Steinitz class falls outside a proven upper bound."""

    code = "THEOREM_CONTRADICTION"

# core/errors.py
from typing import Optional, Tuple


class QcvError(Exception):
    """Base class for every error raised by the kernel and the checks."""


# ---- arithmetic ----

class ArithmeticDomainError(QcvError):
    pass


class PoleError(ArithmeticDomainError):
    pass


class NotInvertible(ArithmeticDomainError):
    pass


class NonNilpotentArgument(ArithmeticDomainError):
    pass


class NotNilpotent(ArithmeticDomainError):
    pass


class NonIntegralPhase(ArithmeticDomainError):
    pass


class NoExactRoot(ArithmeticDomainError):
    pass


# ---- structure ----

class StructureError(QcvError):
    pass


class ContextMismatch(StructureError):
    pass


class RingMismatch(StructureError):
    pass


class IndexOutOfRange(StructureError):
    pass


class NonHalfIntegerEntry(StructureError):
    pass


class SkewIncompatible(StructureError):

    def __init__(self, pair: Tuple[str, str], expected: int, actual: int):
        self.pair = pair
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"Substitution is not skew-compatible on ({pair[0]}, {pair[1]}): "
            f"source phase q^{expected}, images commute with q^{actual}"
        )


class RelationCheckFailed(StructureError):

    def __init__(self, relation: str, location: Optional[str] = None):
        self.relation = relation
        self.location = location
        where = f" at {location}" if location else ""
        super().__init__(f"Relation violated: {relation}{where}")


# ---- numerics ----

class NumericalError(QcvError):
    pass


class ConvergenceFailure(NumericalError):

    def __init__(self, terms: int, last_term: str):
        self.terms = terms
        self.last_term = last_term
        super().__init__(
            f"Partial sums did not stabilize after {terms} terms (last term {last_term})"
        )


class ParameterError(QcvError, ValueError):
    pass

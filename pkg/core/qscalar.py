# core/qscalar.py
from fractions import Fraction
from typing import Optional, Tuple, Union

from sympy import Poly, QQ, Rational, Symbol

from core.errors import PoleError
from core.laurent import LaurentPoly, ONE_POLY, ZERO_POLY
from core.log import get_logger

logger = get_logger("qscalar")

_V = Symbol("v")

Scalarish = Union["QScalar", int, Fraction]


# ---- sympy bridge (gcd only) ----

def _to_sympy(p: LaurentPoly) -> Poly:
    return Poly.from_dict({(k,): Rational(a.numerator, a.denominator) for k, a in p.items()}, _V, domain=QQ)


def _from_sympy(p: Poly) -> LaurentPoly:
    coeffs = {}
    for (k,), c in p.terms():
        coeffs[k] = Fraction(int(c.p), int(c.q))
    return LaurentPoly(coeffs)


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd of two polynomials with non-negative exponents."""
    g = _to_sympy(a).gcd(_to_sympy(b))
    return _from_sympy(g.monic())


class QScalar:
    """
    Element of Q(v), v = q^{1/2}.

    Canonical form: numerator/denominator with gcd 1, the denominator monic
    with zero minimal exponent (any power of v lives in the numerator).
    Construction always canonicalizes, so == is structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly, den: Optional[LaurentPoly] = None):
        if den is None or den.is_one():
            self.num, self.den = num, ONE_POLY
        else:
            self.num, self.den = _canonical(num, den)
        self._hash = None

    @classmethod
    def _poly(cls, num: LaurentPoly) -> "QScalar":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = ONE_POLY
        obj._hash = None
        return obj

    # ---- constructors ----

    @classmethod
    def from_number(cls, a: Union[int, Fraction]) -> "QScalar":
        return cls._poly(LaurentPoly.constant(a))

    @classmethod
    def v_power(cls, k: int, a: Union[int, Fraction] = 1) -> "QScalar":
        return cls._poly(LaurentPoly.monomial(k, a))

    @classmethod
    def q_power(cls, k: Union[int, Fraction], a: Union[int, Fraction] = 1) -> "QScalar":
        doubled = Fraction(k) * 2
        if doubled.denominator != 1:
            raise ValueError(f"q^{k} is not an integer power of v = q^(1/2)")
        return cls._poly(LaurentPoly.monomial(int(doubled), a))

    @classmethod
    def coerce(cls, a: Scalarish) -> "QScalar":
        if isinstance(a, QScalar):
            return a
        if isinstance(a, (int, Fraction)):
            return cls.from_number(a)
        raise TypeError(f"Cannot interpret {a!r} as a QScalar")

    # ---- inspection ----

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def as_fraction(self) -> Optional[Fraction]:
        if self.den.is_one() and self.num.is_constant():
            return self.num.coefficient(0)
        return None

    def v_monomial(self) -> Optional[Tuple[Fraction, int]]:
        """(coefficient, exponent) when the value is c*v^k."""
        if self.den.is_one() and self.num.is_monomial():
            (k, a), = self.num.items()
            return a, k
        return None

    # ---- arithmetic ----

    def __add__(self, other: Scalarish) -> "QScalar":
        other = QScalar.coerce(other)
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den.is_one() and other.den.is_one():
            return QScalar._poly(self.num + other.num)
        if self.den == other.den:
            return QScalar(self.num + other.num, self.den)
        return QScalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "QScalar":
        obj = QScalar.__new__(QScalar)
        obj.num = -self.num
        obj.den = self.den
        obj._hash = None
        return obj

    def __sub__(self, other: Scalarish) -> "QScalar":
        return self + (-QScalar.coerce(other))

    def __rsub__(self, other: Scalarish) -> "QScalar":
        return QScalar.coerce(other) + (-self)

    def __mul__(self, other: Scalarish) -> "QScalar":
        other = QScalar.coerce(other)
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return QScalar._poly(self.num * other.num)
        if other.den.is_one() and other.num.is_monomial() or self.den.is_one() and self.num.is_monomial():
            # monomial factors never share a factor with a canonical denominator
            obj = QScalar.__new__(QScalar)
            obj.num = self.num * other.num
            obj.den = self.den if other.den.is_one() else other.den
            obj._hash = None
            return obj
        return QScalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "QScalar":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(v)")
        return QScalar(self.den, self.num)

    def __truediv__(self, other: Scalarish) -> "QScalar":
        other = QScalar.coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero in Q(v)")
        if other.den.is_one() and other.num.is_monomial():
            (k, a), = other.num.items()
            obj = QScalar.__new__(QScalar)
            obj.num = self.num.shift(-k).scale(1 / a)
            obj.den = self.den
            obj._hash = None
            return obj
        return QScalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: Scalarish) -> "QScalar":
        return QScalar.coerce(other) / self

    def __pow__(self, n: int) -> "QScalar":
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift_v(self, k: int) -> "QScalar":
        """Multiply by v^k."""
        if k == 0:
            return self
        obj = QScalar.__new__(QScalar)
        obj.num = self.num.shift(k)
        obj.den = self.den
        obj._hash = None
        return obj

    # ---- evaluation ----

    def evaluate(self, v0):
        if self.den.is_one():
            return self.num.evaluate(v0)
        d = self.den.evaluate(v0)
        if d == 0:
            raise PoleError(f"denominator {self.den.to_text()} vanishes at v = {v0}")
        return self.num.evaluate(v0) / d

    # ---- comparison / text ----

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QScalar.from_number(other)
        if not isinstance(other, QScalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def to_text(self) -> str:
        if self.den.is_one():
            return self.num.to_text()
        return f"({self.num.to_text()})/({self.den.to_text()})"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"QScalar({self.to_text()})"


def _canonical(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero():
        raise ZeroDivisionError("zero denominator in Q(v)")
    if num.is_zero():
        return ZERO_POLY, ONE_POLY

    if den.is_monomial():
        (k, a), = den.items()
        return num.shift(-k).scale(1 / a), ONE_POLY

    k = den.valuation
    den = den.shift(-k)
    num = num.shift(-k)

    quotient = num.divide_exact(den)
    if quotient is not None:
        return quotient, ONE_POLY

    vn = num.valuation
    g = poly_gcd(num.shift(-vn), den)
    if not g.is_constant():
        logger.debug("cancelling common factor %s", g.to_text())
        num = num.divide_exact(g)
        den = den.divide_exact(g)
        if den.is_monomial():
            (e, a), = den.items()
            return num.shift(-e).scale(1 / a), ONE_POLY

    lc = den.leading_coefficient
    if lc != 1:
        num = num.scale(1 / lc)
        den = den.scale(1 / lc)
    return num, den


def evaluate(s: QScalar, v0):
    """Exact substitution v -> v0; v0 = 1 is the classical limit q -> 1."""
    return s.evaluate(v0)


ZERO = QScalar._poly(ZERO_POLY)
ONE = QScalar._poly(ONE_POLY)
V = QScalar.v_power(1)
Q = QScalar.v_power(2)

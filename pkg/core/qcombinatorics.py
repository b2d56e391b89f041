# core/qcombinatorics.py
from enum import Enum
from functools import lru_cache

from core.laurent import LaurentPoly, ONE_POLY, ZERO_POLY
from core.qscalar import QScalar, ONE, ZERO

__all__ = [
    "q_int",
    "q_factorial",
    "q_binomial",
    "q_binomial_factorial_formula",
    "q_pochhammer_difference",
    "QBase",
]


@lru_cache(maxsize=None)
def _q_int_poly(n: int) -> LaurentPoly:
    if n == 0:
        return ZERO_POLY
    if n < 0:
        return -_q_int_poly(-n)
    # q^{n-1} + q^{n-3} + ... + q^{1-n}, exponents in v are doubled
    return LaurentPoly({2 * (n - 1 - 2 * j): 1 for j in range(n)})


def q_int(n: int) -> QScalar:
    """Symmetric q-integer [n] = (q^n - q^-n) / (q - q^-1)."""
    return QScalar._poly(_q_int_poly(n))


@lru_cache(maxsize=None)
def _q_factorial_poly(n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError(f"q-factorial of a negative integer: {n}")
    if n == 0:
        return ONE_POLY
    return _q_factorial_poly(n - 1) * _q_int_poly(n)


def q_factorial(n: int) -> QScalar:
    return QScalar._poly(_q_factorial_poly(n))


@lru_cache(maxsize=None)
def _q_binomial_poly(n: int, k: int) -> LaurentPoly:
    if k < 0 or k > n:
        return ZERO_POLY
    if k == 0 or k == n:
        return ONE_POLY
    # [n,k] = q^k [n-1,k] + q^{k-n} [n-1,k-1]
    return _q_binomial_poly(n - 1, k).shift(2 * k) + _q_binomial_poly(n - 1, k - 1).shift(2 * (k - n))


def q_binomial(n: int, k: int) -> QScalar:
    """Symmetric q-binomial [n]! / ([k]! [n-k]!); zero outside 0 <= k <= n."""
    if n < 0:
        return ZERO
    return QScalar._poly(_q_binomial_poly(n, k))


def q_binomial_factorial_formula(n: int, k: int) -> QScalar:
    if n < 0 or k < 0 or k > n:
        return ZERO
    return q_factorial(n) / (q_factorial(k) * q_factorial(n - k))


@lru_cache(maxsize=None)
def q_pochhammer_difference(s: int) -> QScalar:
    """prod_{t=1..s} (q^t - q^-t) = (q - q^-1)^s [s]!"""
    result = ONE
    for t in range(1, s + 1):
        result = result * QScalar._poly(LaurentPoly({2 * t: 1, -2 * t: -1}))
    return result


class QBase(Enum):
    """Base of a q-exponential: e_q or e_{1/q}."""
    Q = "q"
    INV_Q = "1/q"

    @classmethod
    def parse(cls, text: str) -> "QBase":
        for base in cls:
            if base.value == text or base.name.lower() == text.lower():
                return base
        raise ValueError(f"Unknown q-exponential base: {text}. Known: q, 1/q")

    def coefficient(self, n: int) -> QScalar:
        """base^{-n(n-1)/2} / [n]!"""
        return _qexp_coefficient(self, n)


@lru_cache(maxsize=None)
def _qexp_coefficient(base: "QBase", n: int) -> QScalar:
    sign = -1 if base is QBase.Q else 1
    return QScalar.q_power(sign * n * (n - 1) // 2) / q_factorial(n)

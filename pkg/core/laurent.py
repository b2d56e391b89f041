# core/laurent.py
from fractions import Fraction
from typing import Dict, Iterator, Optional, Tuple, Union

from core.errors import PoleError

Number = Union[int, Fraction]


class LaurentPoly:
    """
    Laurent polynomial in v = q^{1/2} with rational coefficients.

    Stored as {exponent: Fraction}; zero coefficients are never stored,
    so the empty map is 0. Instances are immutable.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Optional[Dict[int, Number]] = None):
        c = {}
        if coeffs:
            for k, a in coeffs.items():
                if a:
                    c[int(k)] = Fraction(a)
        self._c = c
        self._hash = None

    @classmethod
    def _trusted(cls, c: Dict[int, Fraction]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, a: Number) -> "LaurentPoly":
        return cls._trusted({0: Fraction(a)} if a else {})

    @classmethod
    def monomial(cls, exponent: int, a: Number = 1) -> "LaurentPoly":
        return cls._trusted({int(exponent): Fraction(a)} if a else {})

    # ---- inspection ----

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(self._c.items())

    def coefficient(self, exponent: int) -> Fraction:
        return self._c.get(exponent, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_one(self) -> bool:
        return len(self._c) == 1 and self._c.get(0) == 1

    @property
    def degree(self) -> int:
        if not self._c:
            raise ValueError("degree of the zero polynomial")
        return max(self._c)

    @property
    def valuation(self) -> int:
        if not self._c:
            raise ValueError("valuation of the zero polynomial")
        return min(self._c)

    @property
    def leading_coefficient(self) -> Fraction:
        return self._c[self.degree]

    def __len__(self):
        return len(self._c)

    # ---- arithmetic ----

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for k, a in other._c.items():
            s = c.get(k, 0) + a
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return LaurentPoly._trusted(c)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._trusted({k: -a for k, a in self._c.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self._c or not other._c:
            return LaurentPoly._trusted({})
        if len(other._c) == 1:
            (k, a), = other._c.items()
            return self.shift(k).scale(a)
        if len(self._c) == 1:
            (k, a), = self._c.items()
            return other.shift(k).scale(a)
        c: Dict[int, Fraction] = {}
        for k1, a1 in self._c.items():
            for k2, a2 in other._c.items():
                k = k1 + k2
                c[k] = c.get(k, 0) + a1 * a2
        return LaurentPoly._trusted({k: a for k, a in c.items() if a})

    def scale(self, a: Number) -> "LaurentPoly":
        if not a:
            return LaurentPoly._trusted({})
        if a == 1:
            return self
        return LaurentPoly._trusted({k: b * a for k, b in self._c.items()})

    def shift(self, k: int) -> "LaurentPoly":
        if k == 0:
            return self
        return LaurentPoly._trusted({e + k: a for e, a in self._c.items()})

    def divide_exact(self, divisor: "LaurentPoly") -> Optional["LaurentPoly"]:
        """Quotient in the Laurent ring when divisor divides self, else None."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._c:
            return self
        if len(divisor._c) == 1:
            (k, a), = divisor._c.items()
            return self.shift(-k).scale(1 / a)

        vn, vd = self.valuation, divisor.valuation
        rem = {e - vn: a for e, a in self._c.items()}
        den = {e - vd: a for e, a in divisor._c.items()}
        deg_d = max(den)
        lc = den[deg_d]
        top = max(rem)
        if top < deg_d:
            return None

        quot: Dict[int, Fraction] = {}
        for k in range(top, deg_d - 1, -1):
            c = rem.get(k)
            if not c:
                continue
            f = c / lc
            s = k - deg_d
            quot[s] = f
            for e, a in den.items():
                t = e + s
                r = rem.get(t, 0) - f * a
                if r:
                    rem[t] = r
                else:
                    rem.pop(t, None)
        if rem:
            return None
        return LaurentPoly._trusted(quot).shift(vn - vd)

    # ---- evaluation ----

    def evaluate(self, v0):
        if not self._c:
            return Fraction(0) if not isinstance(v0, float) else 0.0
        if v0 == 0:
            if min(self._c) < 0:
                raise PoleError("negative power of v evaluated at v = 0")
            return self._c.get(0, Fraction(0)) if not isinstance(v0, float) else float(self._c.get(0, 0))
        if isinstance(v0, float):
            return sum(float(a) * v0 ** k for k, a in self._c.items())
        x = Fraction(v0)
        return sum((a * x ** k for k, a in self._c.items()), Fraction(0))

    # ---- comparison / text ----

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def to_text(self, var: str = "v") -> str:
        if not self._c:
            return "0"
        parts = []
        for k in sorted(self._c, reverse=True):
            a = self._c[k]
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if k == 0:
                body = str(mag)
            else:
                power = var if k == 1 else f"{var}^{k}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPoly({self.to_text()})"


ZERO_POLY = LaurentPoly()
ONE_POLY = LaurentPoly.constant(1)

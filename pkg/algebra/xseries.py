# algebra/xseries.py
from typing import Dict, Optional

from core.qscalar import ONE, QScalar, ZERO


class XSeries:
    """
    Truncated Laurent series in x^{1/2} over Q(v); x is central.

    Keys are doubled x-degrees. precision = None means the value is an exact
    Laurent polynomial; otherwise only degrees < precision are known.
    """

    __slots__ = ("terms", "precision")

    def __init__(self, terms: Optional[Dict[int, QScalar]] = None, precision: Optional[int] = None):
        self.precision = precision
        self.terms: Dict[int, QScalar] = {
            d: c for d, c in (terms or {}).items()
            if not c.is_zero() and (precision is None or d < precision)
        }

    @classmethod
    def zero(cls) -> "XSeries":
        return cls()

    @classmethod
    def scalar(cls, c) -> "XSeries":
        return cls({0: QScalar.coerce(c)})

    @classmethod
    def one(cls) -> "XSeries":
        return cls({0: ONE})

    @classmethod
    def monomial(cls, doubled_degree: int, c=ONE) -> "XSeries":
        return cls({doubled_degree: QScalar.coerce(c)})

    # ---- inspection ----

    def is_zero(self) -> bool:
        return not self.terms

    def is_exact(self) -> bool:
        return self.precision is None

    def coefficient(self, doubled_degree: int) -> QScalar:
        return self.terms.get(doubled_degree, ZERO)

    @property
    def valuation(self) -> Optional[int]:
        return min(self.terms) if self.terms else None

    @property
    def degree(self) -> Optional[int]:
        return max(self.terms) if self.terms else None

    def truncate(self, precision: int) -> "XSeries":
        if self.precision is not None:
            precision = min(precision, self.precision)
        return XSeries(self.terms, precision)

    # ---- arithmetic ----

    @staticmethod
    def _min_precision(a: Optional[int], b: Optional[int]) -> Optional[int]:
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other) -> "XSeries":
        if not isinstance(other, XSeries):
            other = XSeries.scalar(other)
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = terms[d] + c if d in terms else c
        return XSeries(terms, self._min_precision(self.precision, other.precision))

    __radd__ = __add__

    def __neg__(self) -> "XSeries":
        return XSeries({d: -c for d, c in self.terms.items()}, self.precision)

    def __sub__(self, other) -> "XSeries":
        if not isinstance(other, XSeries):
            other = XSeries.scalar(other)
        return self + (-other)

    def scale(self, c) -> "XSeries":
        c = QScalar.coerce(c)
        return XSeries({d: x * c for d, x in self.terms.items()}, self.precision)

    def __mul__(self, other) -> "XSeries":
        if not isinstance(other, XSeries):
            return self.scale(other)
        precision = None
        # an unknown tail of one factor is shifted by the other's lowest term
        if self.precision is not None and other.terms:
            precision = self.precision + other.valuation
        if other.precision is not None and self.terms:
            bound = other.precision + self.valuation
            precision = bound if precision is None else min(precision, bound)
        if self.precision is not None and not other.terms and other.precision is not None:
            precision = min(self.precision, other.precision)

        acc: Dict[int, QScalar] = {}
        for d1, a in self.terms.items():
            for d2, b in other.terms.items():
                d = d1 + d2
                if precision is not None and d >= precision:
                    continue
                acc[d] = acc[d] + a * b if d in acc else a * b
        return XSeries(acc, precision)

    __rmul__ = scale

    # ---- comparison / text ----

    def __eq__(self, other) -> bool:
        if not isinstance(other, XSeries):
            if isinstance(other, (int, QScalar)):
                other = XSeries.scalar(other)
            else:
                return NotImplemented
        return self.terms == other.terms and self.precision == other.precision

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.precision))

    def to_text(self) -> str:
        if not self.terms:
            body = "0"
        else:
            pieces = []
            for d in sorted(self.terms):
                c = self.terms[d]
                if d == 0:
                    mono = "1"
                elif d == 2:
                    mono = "x"
                elif d % 2 == 0:
                    mono = f"x^{d // 2}"
                else:
                    mono = f"x^({d}/2)"
                if c.is_one():
                    pieces.append(mono)
                elif mono == "1":
                    pieces.append(f"({c.to_text()})")
                else:
                    pieces.append(f"({c.to_text()})*{mono}")
            body = " + ".join(pieces)
        if self.precision is not None:
            body += f" + O(x^({self.precision}/2))"
        return body

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"XSeries({self.to_text()})"

# algebra/skew_series.py
from dataclasses import dataclass
from typing import Dict, List, Tuple

from core.errors import ContextMismatch, NonNilpotentArgument, NotInvertible
from core.qcombinatorics import QBase
from core.qscalar import ONE, QScalar, ZERO

Key = Tuple[int, int, int]  # (psi-degree, Q-power, chi-degree)


@dataclass(frozen=True)
class SeriesContext:
    """
    Normal-ordered series psi^a Q^m chi^b, truncated at a + b <= degree.

    Relations (q-exponents): Q psi = q^{q_psi} psi Q, Q chi = q^{q_chi} chi Q,
    chi psi = q^{chi_psi} psi chi.
    """
    degree: int
    q_psi: int = 1
    q_chi: int = 1
    chi_psi: int = 0

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"Truncation degree must be at least 1, got {self.degree}")

    def truncated(self, degree: int) -> "SeriesContext":
        return SeriesContext(degree, self.q_psi, self.q_chi, self.chi_psi)


def quantum_plane(degree: int, xy_phase: int) -> SeriesContext:
    """Two-variable plane with x y = q^{xy_phase} y x, using psi = y and chi = x."""
    return SeriesContext(degree=degree, q_psi=0, q_chi=0, chi_psi=xy_phase)


class SkewSeries:

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: SeriesContext, terms: Dict[Key, QScalar] = None):
        self.ctx = ctx
        self.terms: Dict[Key, QScalar] = {
            k: c for k, c in (terms or {}).items()
            if not c.is_zero() and k[0] + k[2] <= ctx.degree
        }

    @classmethod
    def _trusted(cls, ctx: SeriesContext, terms: Dict[Key, QScalar]) -> "SkewSeries":
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.terms = terms
        return obj

    # ---- constructors ----

    @classmethod
    def zero(cls, ctx: SeriesContext) -> "SkewSeries":
        return cls._trusted(ctx, {})

    @classmethod
    def scalar(cls, ctx: SeriesContext, c) -> "SkewSeries":
        c = QScalar.coerce(c)
        return cls._trusted(ctx, {(0, 0, 0): c} if not c.is_zero() else {})

    @classmethod
    def one(cls, ctx: SeriesContext) -> "SkewSeries":
        return cls.scalar(ctx, ONE)

    @classmethod
    def monomial(cls, ctx: SeriesContext, a: int = 0, m: int = 0, b: int = 0, c=ONE) -> "SkewSeries":
        return cls(ctx, {(a, m, b): QScalar.coerce(c)})

    @classmethod
    def psi(cls, ctx: SeriesContext) -> "SkewSeries":
        return cls.monomial(ctx, a=1)

    @classmethod
    def chi(cls, ctx: SeriesContext) -> "SkewSeries":
        return cls.monomial(ctx, b=1)

    @classmethod
    def q_half_phi(cls, ctx: SeriesContext, power: int = 1) -> "SkewSeries":
        """Q^power with Q = q^{phi/2}."""
        return cls.monomial(ctx, m=power)

    # ---- inspection ----

    def is_zero(self) -> bool:
        return not self.terms

    def degree_zero_part(self) -> Dict[Key, QScalar]:
        return {k: c for k, c in self.terms.items() if k[0] == 0 and k[2] == 0}

    def coefficient(self, a: int, m: int, b: int) -> QScalar:
        return self.terms.get((a, m, b), ZERO)

    def truncate(self, degree: int) -> "SkewSeries":
        ctx = self.ctx.truncated(degree)
        return SkewSeries(ctx, self.terms)

    # ---- arithmetic ----

    def _check(self, other: "SkewSeries"):
        if self.ctx != other.ctx:
            raise ContextMismatch(f"Series contexts differ: {self.ctx} vs {other.ctx}")

    def __add__(self, other) -> "SkewSeries":
        if not isinstance(other, SkewSeries):
            other = SkewSeries.scalar(self.ctx, other)
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms[k] + c if k in terms else c
            if s.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = s
        return SkewSeries._trusted(self.ctx, terms)

    __radd__ = __add__

    def __neg__(self) -> "SkewSeries":
        return SkewSeries._trusted(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "SkewSeries":
        if not isinstance(other, SkewSeries):
            other = SkewSeries.scalar(self.ctx, other)
        return self + (-other)

    def __rsub__(self, other) -> "SkewSeries":
        return SkewSeries.scalar(self.ctx, other) - self

    def scale(self, c) -> "SkewSeries":
        c = QScalar.coerce(c)
        if c.is_zero():
            return SkewSeries.zero(self.ctx)
        return SkewSeries._trusted(self.ctx, {k: x * c for k, x in self.terms.items()})

    def __mul__(self, other) -> "SkewSeries":
        if isinstance(other, SkewSeries):
            return series_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "SkewSeries":
        return self.scale(other)

    def __pow__(self, k: int) -> "SkewSeries":
        if k < 0:
            return series_invert(self) ** (-k)
        result = SkewSeries.one(self.ctx)
        for _ in range(k):
            result = result * self
        return result

    def inverse(self) -> "SkewSeries":
        return series_invert(self)

    # ---- comparison / text ----

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkewSeries):
            if isinstance(other, (int, QScalar)):
                other = SkewSeries.scalar(self.ctx, other)
            else:
                return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def to_text(self) -> str:
        return series_to_text(self)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"SkewSeries({self.to_text()})"


def series_mul(A: SkewSeries, B: SkewSeries) -> SkewSeries:
    """
    (a,m,b)(c,n,d) = q^{q_psi m c - q_chi n b + chi_psi b c} (a+c, m+n, b+d),
    dropping terms beyond the truncation degree.
    """
    A._check(B)
    ctx = A.ctx
    D = ctx.degree
    acc: Dict[Key, QScalar] = {}
    for (a, m, b), x in A.terms.items():
        for (c, n, d), y in B.terms.items():
            if a + b + c + d > D:
                continue
            phase = ctx.q_psi * m * c - ctx.q_chi * n * b + ctx.chi_psi * b * c
            key = (a + c, m + n, b + d)
            value = (x * y).shift_v(2 * phase)
            acc[key] = acc[key] + value if key in acc else value
    return SkewSeries._trusted(ctx, {k: c for k, c in acc.items() if not c.is_zero()})


def series_invert(A: SkewSeries) -> SkewSeries:
    """(u (1 + N))^{-1} = sum_k (-N)^k u^{-1} for a monomial unit u = c Q^m."""
    ctx = A.ctx
    head = A.degree_zero_part()
    if len(head) != 1:
        raise NotInvertible(
            f"Degree-zero part must be a single unit monomial, found {len(head)} terms"
        )
    (key, c), = head.items()
    u_inv = SkewSeries._trusted(ctx, {(0, -key[1], 0): c.inverse()})

    rest = A - SkewSeries._trusted(ctx, {key: c})
    N = u_inv * rest
    minus_N = -N

    total = SkewSeries.one(ctx)
    power = SkewSeries.one(ctx)
    for _ in range(ctx.degree):
        power = power * minus_N
        if power.is_zero():
            break
        total = total + power
    return total * u_inv


def qexp_series(arg: SkewSeries, base: QBase = QBase.Q) -> SkewSeries:
    """e_base(arg) = sum_n arg^n / [n]! base^{-n(n-1)/2}, truncated."""
    if arg.degree_zero_part():
        raise NonNilpotentArgument("q-exponential argument has a degree-zero component")
    ctx = arg.ctx
    total = SkewSeries.one(ctx)
    power = SkewSeries.one(ctx)
    for n in range(1, ctx.degree + 1):
        power = power * arg
        if power.is_zero():
            break
        total = total + power.scale(base.coefficient(n))
    return total


def _key_text(a: int, m: int, b: int, names: Tuple[str, str, str]) -> str:
    parts: List[str] = []
    for name, p in zip(names, (a, m, b)):
        if p == 1:
            parts.append(name)
        elif p:
            parts.append(f"{name}^{p}")
    return "*".join(parts) if parts else "1"


def series_to_text(A: SkewSeries, names: Tuple[str, str, str] = ("psi", "Q", "chi")) -> str:
    if not A.terms:
        return "0"
    pieces = []
    for key in sorted(A.terms, key=lambda k: (k[0] + k[2], k)):
        c = A.terms[key]
        mono = _key_text(*key, names=names)
        if c.is_one():
            pieces.append(mono)
        elif (-c).is_one():
            pieces.append(f"-{mono}")
        elif mono == "1":
            pieces.append(f"({c.to_text()})")
        else:
            pieces.append(f"({c.to_text()})*{mono}")
    return " + ".join(pieces)

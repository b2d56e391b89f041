# algebra/torus.py
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy

from core.errors import ContextMismatch, NoExactRoot, NonIntegralPhase, NotInvertible, SkewIncompatible
from core.qscalar import ONE, QScalar, ZERO

Exponents = Tuple[int, ...]


# ============================================================
# CONTEXT
# ============================================================

@dataclass(frozen=True)
class TorusContext:
    """
    Quantum torus with generators z_a and z_a z_b = q^{omega[a][b]} z_b z_a.

    Monomials are kept in normal order: variables in declared order,
    exponents doubled so z^{1/2} is exponent 1.
    """
    variables: Tuple[str, ...]
    omega: Tuple[Tuple[int, ...], ...]
    _index: Dict[str, int] = field(default=None, init=False, repr=False, compare=False, hash=False)
    _lower: Tuple[Tuple[Tuple[int, int], ...], ...] = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n = len(self.variables)
        if len(set(self.variables)) != n:
            raise ValueError(f"Duplicate torus variables: {self.variables}")
        if len(self.omega) != n or any(len(row) != n for row in self.omega):
            raise ValueError("omega must be a square matrix matching the variables")
        for a in range(n):
            for b in range(n):
                if self.omega[a][b] != -self.omega[b][a]:
                    raise ValueError(
                        f"omega is not antisymmetric at ({self.variables[a]}, {self.variables[b]})"
                    )
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(self.variables)})
        object.__setattr__(self, "_lower", tuple(
            tuple((b, self.omega[a][b]) for b in range(a) if self.omega[a][b])
            for a in range(n)
        ))

    @classmethod
    def from_relations(cls, variables: Sequence[str], relations: Mapping[Tuple[str, str], int]) -> "TorusContext":
        """relations[(a, b)] = k means z_a z_b = q^k z_b z_a; unspecified pairs commute."""
        names = tuple(variables)
        index = {name: i for i, name in enumerate(names)}
        omega = [[0] * len(names) for _ in names]
        for (a, b), k in relations.items():
            omega[index[a]][index[b]] = k
            omega[index[b]][index[a]] = -k
        return cls(names, tuple(tuple(row) for row in omega))

    @property
    def size(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"Unknown torus variable: {name}. Known: {', '.join(self.variables)}")

    def relation(self, a: str, b: str) -> int:
        return self.omega[self.index(a)][self.index(b)]

    def phase(self, e: Exponents, f: Exponents) -> int:
        """v-exponent picked up by normal-ordering M(e) M(f)."""
        total = 0
        for a, rows in enumerate(self._lower):
            ea = e[a]
            if not ea or not rows:
                continue
            s = 0
            for b, w in rows:
                fb = f[b]
                if fb:
                    s += w * fb
            total += ea * s
        if total % 2:
            raise NonIntegralPhase(
                f"Reordering phase q^({total}/4) is not an integer power of v; "
                f"exponents {e} and {f} are incompatible with omega"
            )
        return total // 2

    def commutation(self, e: Exponents, f: Exponents) -> Fraction:
        """Omega with M(e) M(f) = q^Omega M(f) M(e)."""
        s = 0
        n = len(self.variables)
        for a in range(n):
            if e[a]:
                row = self.omega[a]
                s += e[a] * sum(row[b] * f[b] for b in range(n) if f[b])
        return Fraction(s, 4)

    def scaled(self, factor: Union[int, Fraction]) -> "TorusContext":
        """Same variables with omega multiplied by factor (negative controls)."""
        rows = []
        for row in self.omega:
            scaled_row = []
            for w in row:
                x = Fraction(w) * factor
                if x.denominator != 1:
                    raise ValueError(f"omega entry {w} scaled by {factor} is not an integer")
                scaled_row.append(int(x))
            rows.append(tuple(scaled_row))
        return TorusContext(self.variables, tuple(rows))

    def restrict(self, names: Iterable[str]) -> "TorusContext":
        keep = [self.index(name) for name in names]
        return TorusContext(
            tuple(self.variables[i] for i in keep),
            tuple(tuple(self.omega[i][j] for j in keep) for i in keep),
        )

    def zero_exponents(self) -> Exponents:
        return (0,) * len(self.variables)


def _same_context(a: TorusContext, b: TorusContext):
    if a is not b and a != b:
        raise ContextMismatch(
            f"Torus contexts differ: ({', '.join(a.variables)}) vs ({', '.join(b.variables)})"
        )


# ============================================================
# ELEMENTS
# ============================================================

class TorusElement:
    """Finite sum of normal-ordered monomials with QScalar coefficients."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: TorusContext, terms: Optional[Dict[Exponents, QScalar]] = None):
        self.ctx = ctx
        self.terms: Dict[Exponents, QScalar] = {
            e: c for e, c in (terms or {}).items() if not c.is_zero()
        }
        self._hash = None

    @classmethod
    def _trusted(cls, ctx: TorusContext, terms: Dict[Exponents, QScalar]) -> "TorusElement":
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.terms = terms
        obj._hash = None
        return obj

    # ---- constructors ----

    @classmethod
    def zero(cls, ctx: TorusContext) -> "TorusElement":
        return cls._trusted(ctx, {})

    @classmethod
    def scalar(cls, ctx: TorusContext, c) -> "TorusElement":
        c = QScalar.coerce(c)
        return cls._trusted(ctx, {ctx.zero_exponents(): c} if not c.is_zero() else {})

    @classmethod
    def one(cls, ctx: TorusContext) -> "TorusElement":
        return cls.scalar(ctx, ONE)

    @classmethod
    def monomial(cls, ctx: TorusContext, powers: Mapping[str, Union[int, Fraction]], coefficient=ONE) -> "TorusElement":
        """powers maps variable name to a (half-)integer exponent, in normal order."""
        e = [0] * ctx.size
        for name, p in powers.items():
            doubled = Fraction(p) * 2
            if doubled.denominator != 1:
                raise ValueError(f"Exponent {p} of {name} is not a half-integer")
            e[ctx.index(name)] = int(doubled)
        return cls.from_exponents(ctx, tuple(e), coefficient)

    @classmethod
    def from_exponents(cls, ctx: TorusContext, doubled: Exponents, coefficient=ONE) -> "TorusElement":
        c = QScalar.coerce(coefficient)
        return cls._trusted(ctx, {tuple(doubled): c} if not c.is_zero() else {})

    @classmethod
    def variable(cls, ctx: TorusContext, name: str, power: Union[int, Fraction] = 1) -> "TorusElement":
        return cls.monomial(ctx, {name: power})

    # ---- inspection ----

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def single_term(self) -> Tuple[Exponents, QScalar]:
        if len(self.terms) != 1:
            raise NotInvertible(f"Expected a single monomial, got {len(self.terms)} terms")
        (e, c), = self.terms.items()
        return e, c

    def coefficient(self, doubled: Exponents) -> QScalar:
        return self.terms.get(tuple(doubled), ZERO)

    # ---- arithmetic ----

    def __add__(self, other) -> "TorusElement":
        if not isinstance(other, TorusElement):
            other = TorusElement.scalar(self.ctx, other)
        _same_context(self.ctx, other.ctx)
        if not other.terms:
            return self
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms[e] + c if e in terms else c
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        return TorusElement._trusted(self.ctx, terms)

    __radd__ = __add__

    def __neg__(self) -> "TorusElement":
        return TorusElement._trusted(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "TorusElement":
        if not isinstance(other, TorusElement):
            other = TorusElement.scalar(self.ctx, other)
        return self + (-other)

    def __rsub__(self, other) -> "TorusElement":
        return TorusElement.scalar(self.ctx, other) + (-self)

    def scale(self, c) -> "TorusElement":
        c = QScalar.coerce(c)
        if c.is_zero():
            return TorusElement.zero(self.ctx)
        if c.is_one():
            return self
        return TorusElement._trusted(self.ctx, {e: x * c for e, x in self.terms.items()})

    def __mul__(self, other) -> "TorusElement":
        if isinstance(other, TorusElement):
            return torus_mul(self.ctx, self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "TorusElement":
        return self.scale(other)

    def __pow__(self, k: int) -> "TorusElement":
        if self.is_monomial():
            return monomial_power(self, k)
        if k < 0:
            raise NotInvertible("Only single monomials have inverses in the torus")
        result = TorusElement.one(self.ctx)
        for _ in range(k):
            result = result * self
        return result

    def inverse(self) -> "TorusElement":
        return monomial_power(self, -1)

    def sqrt(self) -> "TorusElement":
        return monomial_sqrt(self)

    # ---- comparison / text ----

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusElement):
            if isinstance(other, (int, Fraction, QScalar)):
                other = TorusElement.scalar(self.ctx, other)
            else:
                return NotImplemented
        return (self.ctx is other.ctx or self.ctx == other.ctx) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def to_text(self) -> str:
        return torus_to_text(self)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"TorusElement({self.to_text()})"

    def to_classical(self):
        """v = 1 limit as a commutative sympy expression."""
        symbols = [sympy.Symbol(name) for name in self.ctx.variables]
        expr = sympy.Integer(0)
        for e, c in self.terms.items():
            value = c.evaluate(1)
            term = sympy.Rational(value.numerator, value.denominator)
            for sym, p in zip(symbols, e):
                if p:
                    term *= sym ** sympy.Rational(p, 2)
            expr += term
        return sympy.expand(expr)


# ============================================================
# OPERATIONS
# ============================================================

def torus_mul(ctx: TorusContext, A: TorusElement, B: TorusElement) -> TorusElement:
    _same_context(ctx, A.ctx)
    _same_context(ctx, B.ctx)
    if not A.terms or not B.terms:
        return TorusElement.zero(ctx)

    acc: Dict[Exponents, QScalar] = {}
    for e, a in A.terms.items():
        for f, b in B.terms.items():
            p = ctx.phase(e, f)
            g = tuple(x + y for x, y in zip(e, f))
            c = (a * b).shift_v(p)
            if g in acc:
                acc[g] = acc[g] + c
            else:
                acc[g] = c
    return TorusElement._trusted(ctx, {g: c for g, c in acc.items() if not c.is_zero()})


def monomial_power(m: TorusElement, k: int) -> TorusElement:
    """(c M(f))^k = c^k v^{p k(k-1)/2} M(kf) with p = phase(f, f); valid for negative k."""
    f, c = m.single_term()
    if k < 0 and c.is_zero():
        raise NotInvertible("zero monomial")
    p = m.ctx.phase(f, f)
    g = tuple(k * x for x in f)
    coefficient = (c ** k).shift_v(p * k * (k - 1) // 2)
    return TorusElement._trusted(m.ctx, {g: coefficient})


def monomial_sqrt(m: TorusElement) -> TorusElement:
    """Weyl-normalized square root R = c' M(f/2) with R R = m."""
    f, c = m.single_term()
    if any(x % 2 for x in f):
        raise NoExactRoot(f"Exponents {f} are not divisible by two")
    half = tuple(x // 2 for x in f)
    p = m.ctx.phase(half, half)
    mono = c.v_monomial()
    if mono is None:
        raise NoExactRoot(f"Coefficient {c.to_text()} is not a monomial in v")
    a, k = mono
    if (k - p) % 2:
        raise NoExactRoot(f"Coefficient {c.to_text()} has no square root in integer powers of v")
    root = _rational_sqrt(a)
    if root is None:
        raise NoExactRoot(f"Coefficient {a} is not a rational square")
    return TorusElement._trusted(m.ctx, {half: QScalar.v_power((k - p) // 2, root)})


def _rational_sqrt(a: Fraction) -> Optional[Fraction]:
    if a < 0:
        return None
    n, d = isqrt(a.numerator), isqrt(a.denominator)
    if n * n != a.numerator or d * d != a.denominator:
        return None
    return Fraction(n, d)


def check_skew_compatible(src: TorusContext, dst: TorusContext, images: Mapping[str, TorusElement]):
    """Raise SkewIncompatible unless images commute with exactly the source phases."""
    exps = {}
    for name in src.variables:
        if name not in images:
            raise KeyError(f"Substitution map has no image for {name}")
        image = images[name]
        _same_context(dst, image.ctx)
        exps[name] = image.single_term()[0]

    names = src.variables
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            expected = src.relation(a, b)
            actual = dst.commutation(exps[a], exps[b])
            if actual != expected:
                raise SkewIncompatible((a, b), expected, actual)


def torus_substitute(
    src: TorusContext,
    dst: TorusContext,
    images: Mapping[str, TorusElement],
    A: TorusElement,
    check: bool = True,
) -> TorusElement:
    """Apply the homomorphism z_a -> images[a] to A and renormal-order over dst."""
    _same_context(src, A.ctx)
    if check:
        check_skew_compatible(src, dst, images)

    power_cache: Dict[Tuple[int, int], TorusElement] = {}
    root_cache: Dict[int, TorusElement] = {}

    def image_power(a: int, e: int) -> TorusElement:
        key = (a, e)
        if key not in power_cache:
            image = images[src.variables[a]]
            if e % 2 == 0:
                power_cache[key] = monomial_power(image, e // 2)
            else:
                if a not in root_cache:
                    root_cache[a] = monomial_sqrt(image)
                power_cache[key] = monomial_power(root_cache[a], e)
        return power_cache[key]

    result = TorusElement.zero(dst)
    for e, c in A.terms.items():
        term = TorusElement.scalar(dst, c)
        for a, ea in enumerate(e):
            if ea:
                term = torus_mul(dst, term, image_power(a, ea))
        result = result + term
    return result


def identity_images(ctx: TorusContext) -> Dict[str, TorusElement]:
    return {name: TorusElement.variable(ctx, name) for name in ctx.variables}


def torus_specialize(src: TorusContext, dst: TorusContext, A: TorusElement, drop: Iterable[str]) -> TorusElement:
    """
    Set the dropped variables to 1 term by term.

    Linear on normal forms only; no homomorphism is claimed, so no skew check.
    """
    _same_context(src, A.ctx)
    dropped = {src.index(name) for name in drop}
    keep = [src.index(name) for name in dst.variables]
    if dropped & set(keep):
        raise ValueError("A variable cannot be both kept and dropped")

    result: Dict[Exponents, QScalar] = {}
    for e, c in A.terms.items():
        if any(e[i] for i in range(src.size) if i not in dropped and i not in keep):
            raise ValueError(f"Term {e} uses a variable missing from the target context")
        g = tuple(e[i] for i in keep)
        result[g] = result[g] + c if g in result else c
    return TorusElement._trusted(dst, {g: c for g, c in result.items() if not c.is_zero()})


# ---- text ----

def _monomial_text(ctx: TorusContext, e: Exponents) -> str:
    parts = []
    for name, x in zip(ctx.variables, e):
        if not x:
            continue
        if x == 2:
            parts.append(name)
        elif x % 2 == 0:
            parts.append(f"{name}^{x // 2}")
        else:
            parts.append(f"{name}^({x}/2)")
    return "*".join(parts) if parts else "1"


def torus_to_text(A: TorusElement) -> str:
    """Canonical text: monomials sorted by doubled exponent vector, explicit v-powers."""
    if not A.terms:
        return "0"
    pieces: List[str] = []
    for e in sorted(A.terms):
        c = A.terms[e]
        mono = _monomial_text(A.ctx, e)
        if c.is_one():
            pieces.append(mono)
        elif (-c).is_one():
            pieces.append(f"-{mono}")
        elif mono == "1":
            pieces.append(f"({c.to_text()})")
        else:
            pieces.append(f"({c.to_text()})*{mono}")
    return " + ".join(pieces)

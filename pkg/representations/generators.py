# representations/generators.py
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from core.errors import NonHalfIntegerEntry, ParameterError, RelationCheckFailed
from core.log import get_logger
from core.qcombinatorics import q_int
from core.qscalar import ONE, QScalar, ZERO
from representations.matrix import RingMatrix

logger = get_logger("representations")


class Twist(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


@dataclass
class Generators:
    """Chevalley generators H_i, T̂_{+i}, T̂_{-i} of U_q(sl_N) as Q(v) matrices."""
    label: str
    dim: int
    H: List[RingMatrix]
    Tplus: List[RingMatrix]
    Tminus: List[RingMatrix]
    cartan: Tuple[Tuple[int, ...], ...]
    # relations hold exactly on the leading `exact_size` block (truncated reps)
    exact_size: Optional[int] = None

    @property
    def rank(self) -> int:
        return len(self.H)

    def cartan_entries(self, i: int) -> List[Fraction]:
        return cartan_diagonal(self.H[i])

    def classical(self) -> dict:
        """v = 1 images of every generator as lists of Fractions."""
        def ev(M):
            return [[x.evaluate(1) for x in row] for row in M.rows]
        return {
            "H": [ev(M) for M in self.H],
            "Tplus": [ev(M) for M in self.Tplus],
            "Tminus": [ev(M) for M in self.Tminus],
        }


@dataclass
class TwistedGenerators:
    twist: Twist
    H: List[RingMatrix]
    Tplus: List[RingMatrix]
    Tminus: List[RingMatrix]
    source: Generators = field(repr=False)


# ============================================================
# HELPERS
# ============================================================

def _unit(n: int, i: int, j: int, c=ONE) -> List[List[QScalar]]:
    rows = [[ZERO] * n for _ in range(n)]
    rows[i][j] = QScalar.coerce(c)
    return rows


def _diag(entries: Sequence) -> RingMatrix:
    n = len(entries)
    return RingMatrix.from_scalars([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])


def cartan_matrix_a(rank: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(rank))
        for i in range(rank)
    )


def cartan_diagonal(H: RingMatrix) -> List[Fraction]:
    """Rational diagonal entries of a Cartan matrix, each a half-integer."""
    if not H.is_diagonal():
        raise NonHalfIntegerEntry("Cartan generator is not diagonal")
    values = []
    for x in H.diagonal_entries():
        h = x.as_fraction()
        if h is None or (2 * h).denominator != 1:
            raise NonHalfIntegerEntry(f"Diagonal entry {x.to_text()} is not a half-integer")
        values.append(h)
    return values


def cartan_q_power(H: RingMatrix, c: Fraction = Fraction(1)) -> RingMatrix:
    """q^{cH} for diagonal H."""
    return _diag([QScalar.q_power(Fraction(c) * h) for h in cartan_diagonal(H)])


def _bracket_rhs(H: RingMatrix) -> RingMatrix:
    # (q^{2H} - q^{-2H}) / (q - q^{-1}) = [2h] entrywise
    return _diag([q_int(int(2 * h)) for h in cartan_diagonal(H)])


# ============================================================
# RELATIONS
# ============================================================

def relation_mismatches(
    H: Sequence[RingMatrix],
    Tplus: Sequence[RingMatrix],
    Tminus: Sequence[RingMatrix],
    cartan: Sequence[Sequence[int]],
    exact_size: Optional[int] = None,
) -> List[Tuple[str, str, str, str]]:
    """
    Every violated relation as (relation, location, lhs, rhs):
      q^{H_i} T_{±j} q^{-H_i} = q^{±C_ij/2} T_{±j}
      [T_{+i}, T_{-j}] = δ_ij (q^{2H_i} - q^{-2H_i}) / (q - q^{-1})
    """
    n = H[0].size
    k = exact_size if exact_size is not None else n
    cells = [(i, j) for i in range(k) for j in range(k)]
    out = []

    def compare(name, lhs, rhs):
        bad = lhs.first_mismatch(rhs, cells)
        if bad is not None:
            i, j, a, b = bad
            out.append((name, f"entry ({i + 1},{j + 1})", a.to_text(), b.to_text()))

    rank = len(H)
    for i in range(rank):
        qh = cartan_q_power(H[i])
        qh_inv = cartan_q_power(H[i], Fraction(-1))
        for j in range(rank):
            c = Fraction(cartan[i][j], 2)
            compare(
                f"q^H{i + 1} T+{j + 1} q^-H{i + 1} = q^({c}) T+{j + 1}",
                qh @ Tplus[j] @ qh_inv,
                Tplus[j].scale(QScalar.q_power(c)),
            )
            compare(
                f"q^H{i + 1} T-{j + 1} q^-H{i + 1} = q^({-c}) T-{j + 1}",
                qh @ Tminus[j] @ qh_inv,
                Tminus[j].scale(QScalar.q_power(-c)),
            )
            rhs = _bracket_rhs(H[i]) if i == j else RingMatrix.zeros(H[i].ring, n)
            compare(f"[T+{i + 1}, T-{j + 1}]", Tplus[i].commutator(Tminus[j]), rhs)
    return out


def check_relations(gens: Generators):
    bad = relation_mismatches(gens.H, gens.Tplus, gens.Tminus, gens.cartan, gens.exact_size)
    if bad:
        relation, location, lhs, rhs = bad[0]
        raise RelationCheckFailed(f"{relation} ({gens.label}): {lhs} != {rhs}", location)


# ============================================================
# REPRESENTATIONS
# ============================================================

def fundamental_rep(N: int) -> Generators:
    if N < 2:
        raise ParameterError(f"Fundamental representation needs N >= 2, got {N}")
    H, Tp, Tm = [], [], []
    for i in range(N - 1):
        H.append(_diag([Fraction(1, 2) if a == i else (Fraction(-1, 2) if a == i + 1 else 0) for a in range(N)]))
        Tp.append(RingMatrix.from_scalars(_unit(N, i, i + 1)))
        Tm.append(RingMatrix.from_scalars(_unit(N, i + 1, i)))
    gens = Generators(f"fund:{N}", N, H, Tp, Tm, cartan_matrix_a(N - 1))
    check_relations(gens)
    return gens


def symmetric_rep_sl2(k: int) -> Generators:
    """Spin k/2: H e_j = (k/2 - j) e_j, T̂_+ e_j = [j] e_{j-1}, T̂_- e_j = [k-j] e_{j+1}."""
    if k < 1:
        raise ParameterError(f"Symmetric representation needs k >= 1, got {k}")
    n = k + 1
    H = _diag([Fraction(k, 2) - j for j in range(n)])
    tp = [[ZERO] * n for _ in range(n)]
    tm = [[ZERO] * n for _ in range(n)]
    for j in range(1, n):
        tp[j - 1][j] = q_int(j)
    for j in range(n - 1):
        tm[j + 1][j] = q_int(k - j)
    gens = Generators(f"sym:{k}", n, [H], [RingMatrix.from_scalars(tp)], [RingMatrix.from_scalars(tm)], ((2,),))
    check_relations(gens)
    logger.debug("built spin-%s representation of dimension %d", Fraction(k, 2), n)
    return gens


def truncated_lowest_weight_rep(M: int) -> Generators:
    """
    Leading MxM corner of the lowest-weight module with basis x^{-2+k}:
    H = diag(-1, -2, ...), (T̂_+)_{i,i+1} = [i], (T̂_-)_{i+1,i} = -[i+1] (1-based).
    The commutator is wrong in the last diagonal entry, so relations hold on the
    leading (M-1)x(M-1) block only.
    """
    if M < 2:
        raise ParameterError(f"Truncation size must be at least 2, got {M}")
    H = _diag([-(i + 1) for i in range(M)])
    tp = [[ZERO] * M for _ in range(M)]
    tm = [[ZERO] * M for _ in range(M)]
    for i in range(M - 1):
        tp[i][i + 1] = q_int(i + 1)
        tm[i + 1][i] = -q_int(i + 2)
    gens = Generators(
        f"trunc:{M}", M, [H], [RingMatrix.from_scalars(tp)], [RingMatrix.from_scalars(tm)], ((2,),),
        exact_size=M - 1,
    )
    check_relations(gens)
    return gens


def twist(gens: Generators, sign: Twist) -> TwistedGenerators:
    """
    positive: T_+ = q^H T̂_+,  T_- = T̂_- q^{-H}
    negative: T_- = q^H T̂_-,  T_+ = T̂_+ q^{-H}
    """
    Tp, Tm = [], []
    for H, tp, tm in zip(gens.H, gens.Tplus, gens.Tminus):
        qh = cartan_q_power(H)
        qh_inv = cartan_q_power(H, Fraction(-1))
        if sign is Twist.POSITIVE:
            Tp.append(qh @ tp)
            Tm.append(tm @ qh_inv)
        else:
            Tp.append(tp @ qh_inv)
            Tm.append(qh @ tm)
    return TwistedGenerators(sign, list(gens.H), Tp, Tm, gens)


def parse_rep(text: str, n: int = 1) -> Generators:
    """fund | sym:<k> | trunc:<M>; `fund` means the fundamental rep of sl_{n+1}."""
    kind, _, arg = text.partition(":")
    if kind == "fund":
        return fundamental_rep(n + 1)
    if kind in ("sym", "trunc"):
        if n != 1:
            raise ParameterError(f"Representation {text} is an sl_2 representation; it needs n = 1")
        try:
            size = int(arg)
        except ValueError:
            raise ParameterError(f"Representation size missing or not an integer in '{text}'")
        return symmetric_rep_sl2(size) if kind == "sym" else truncated_lowest_weight_rep(size)
    raise ParameterError(f"Unknown representation: {text}. Known: fund, sym:<k>, trunc:<M>")


def rep_dimension(text: str, n: int = 1) -> int:
    kind, _, arg = text.partition(":")
    if kind == "fund":
        return n + 1
    if kind == "sym":
        return int(arg) + 1
    if kind == "trunc":
        return int(arg)
    raise ParameterError(f"Unknown representation: {text}")

# representations/matrix.py
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from algebra.rings import BaseRing, QSCALARS
from core.errors import RingMismatch
from core.qscalar import QScalar


class RingMatrix:
    """Dense square matrix over a BaseRing; products keep left-to-right order."""

    __slots__ = ("ring", "rows", "size")

    def __init__(self, ring: BaseRing, rows: Sequence[Sequence]):
        self.ring = ring
        self.rows: List[List] = [list(r) for r in rows]
        self.size = len(self.rows)
        if any(len(r) != self.size for r in self.rows):
            raise ValueError("RingMatrix must be square")

    # ---- constructors ----

    @classmethod
    def zeros(cls, ring: BaseRing, n: int) -> "RingMatrix":
        z = ring.zero()
        return cls(ring, [[z] * n for _ in range(n)])

    @classmethod
    def identity(cls, ring: BaseRing, n: int) -> "RingMatrix":
        z, o = ring.zero(), ring.one()
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, ring: BaseRing, entries: Sequence) -> "RingMatrix":
        n = len(entries)
        z = ring.zero()
        return cls(ring, [[entries[i] if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_scalars(cls, rows: Sequence[Sequence]) -> "RingMatrix":
        return cls(QSCALARS, [[QScalar.coerce(x) for x in r] for r in rows])

    # ---- inspection ----

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def nonzero(self) -> Iterator[Tuple[int, int, object]]:
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if not self.ring.is_zero(x):
                    yield i, j, x

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(x) for row in self.rows for x in row)

    def is_diagonal(self) -> bool:
        return all(i == j for i, j, _ in self.nonzero())

    def diagonal_entries(self) -> List:
        return [self.rows[i][i] for i in range(self.size)]

    # ---- ring changes ----

    def lift(self, ring: BaseRing) -> "RingMatrix":
        """Embed a Q(v) matrix into another ring."""
        if self.ring == ring:
            return self
        if self.ring != QSCALARS:
            raise RingMismatch(f"Only Q(v) matrices can be lifted, this one is over {self.ring.name}")
        z = ring.zero()
        return RingMatrix(ring, [
            [z if x.is_zero() else ring.from_scalar(x) for x in row] for row in self.rows
        ])

    def map(self, fn: Callable, ring: Optional[BaseRing] = None) -> "RingMatrix":
        return RingMatrix(ring or self.ring, [[fn(x) for x in row] for row in self.rows])

    # ---- arithmetic ----

    def _check(self, other: "RingMatrix"):
        if self.ring != other.ring:
            raise RingMismatch(f"Rings differ: {self.ring.name} vs {other.ring.name}")
        if self.size != other.size:
            raise ValueError(f"Sizes differ: {self.size} vs {other.size}")

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        self._check(other)
        return RingMatrix(self.ring, [
            [a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)
        ])

    def __neg__(self) -> "RingMatrix":
        return RingMatrix(self.ring, [[-x for x in row] for row in self.rows])

    def __sub__(self, other: "RingMatrix") -> "RingMatrix":
        return self + (-other)

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        self._check(other)
        ring = self.ring
        n = self.size
        right_rows = [
            [(j, x) for j, x in enumerate(row) if not ring.is_zero(x)] for row in other.rows
        ]
        out = []
        zero = ring.zero()
        for row in self.rows:
            acc = {}
            for k, a in enumerate(row):
                if ring.is_zero(a) or not right_rows[k]:
                    continue
                for j, b in right_rows[k]:
                    p = a * b
                    acc[j] = acc[j] + p if j in acc else p
            out.append([acc.get(j, zero) for j in range(n)])
        return RingMatrix(ring, out)

    def scale(self, c: QScalar) -> "RingMatrix":
        return RingMatrix(self.ring, [[self.ring.scale(x, c) for x in row] for row in self.rows])

    def left_scale(self, element) -> "RingMatrix":
        """element * M entrywise, element on the left."""
        ring = self.ring
        zero = ring.zero()
        return RingMatrix(ring, [
            [zero if ring.is_zero(x) else element * x for x in row] for row in self.rows
        ])

    def commutator(self, other: "RingMatrix") -> "RingMatrix":
        return self @ other - other @ self

    # ---- comparison / text ----

    def first_mismatch(self, other: "RingMatrix", cells: Optional[Sequence[Tuple[int, int]]] = None):
        """(i, j, mine, theirs) for the first differing entry in row-major order, else None."""
        self._check(other)
        if cells is None:
            cells = [(i, j) for i in range(self.size) for j in range(self.size)]
        for i, j in cells:
            if self.rows[i][j] != other.rows[i][j]:
                return i, j, self.rows[i][j], other.rows[i][j]
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.ring == other.ring and self.size == other.size and self.rows == other.rows

    def pretty(self) -> str:
        """Aligned exact entries, one row per line."""
        cells = [[self.ring.to_text(x) for x in row] for row in self.rows]
        widths = [max(len(cells[i][j]) for i in range(self.size)) for j in range(self.size)]
        lines = []
        for row in cells:
            lines.append("[ " + "  ".join(c.rjust(w) for c, w in zip(row, widths)) + " ]")
        return "\n".join(lines)

    def to_rows_text(self) -> List[List[str]]:
        return [[self.ring.to_text(x) for x in row] for row in self.rows]

    def __repr__(self):
        return f"RingMatrix<{self.ring.name}, {self.size}x{self.size}>"


def kron(A: RingMatrix, B: RingMatrix) -> RingMatrix:
    """(A (x) B)[(i,k),(j,l)] = A[i][j] * B[k][l], the A-entry on the left."""
    if A.ring != B.ring:
        raise RingMismatch(f"kron over different rings: {A.ring.name} vs {B.ring.name}")
    ring = A.ring
    zero = ring.zero()
    n, m = A.size, B.size
    rows = [[zero] * (n * m) for _ in range(n * m)]
    for i, j, a in A.nonzero():
        for k, l, b in B.nonzero():
            rows[i * m + k][j * m + l] = a * b
    return RingMatrix(ring, rows)

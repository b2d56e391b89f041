# group/seed.py
from dataclasses import asdict, dataclass
from typing import List, Tuple

from core.errors import IndexOutOfRange, ParameterError


def block_count(n: int) -> int:
    return n * (n + 1) // 2


def square_bracket(n: int, i: int) -> int:
    """
    Simple root of block i: runs of lengths n, n-1, ..., 1, and inside each
    run position p maps to p.
    """
    if n < 1:
        raise ParameterError(f"Rank must be at least 1, got {n}")
    if not 1 <= i <= block_count(n):
        raise IndexOutOfRange(f"Block index {i} outside 1..{block_count(n)} for n = {n}")
    p = i
    for length in range(n, 0, -1):
        if p <= length:
            return p
        p -= length
    raise IndexOutOfRange(f"Block index {i} outside the staircase for n = {n}")


def word_D(n: int) -> List[int]:
    """Signed simple roots: [i] followed by its bar (negative sign) for every block."""
    word = []
    for i in range(1, block_count(n) + 1):
        r = square_bracket(n, i)
        word.extend([r, -r])
    return word


def word_text(word: List[int]) -> str:
    return " ".join(str(r) if r > 0 else f"{-r}̄" for r in word)


def seed_variables(n: int) -> List[str]:
    names = []
    for i in range(1, block_count(n) + 1):
        names.extend([f"w_{i}", f"x_{i}", f"y_{i}"])
    return names


@dataclass
class Seed:
    n: int
    D: List[int]
    variables: List[str]
    epsilon: List[List[int]]
    d: List[int]

    def to_dict(self) -> dict:
        return asdict(self)

    def omega(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(2 * e for e in row) for row in self.epsilon)


def cluster_seed(n: int) -> Seed:
    """
    epsilon(x_i, y_j) = epsilon(x_i, w_j) = delta_ij, antisymmetric, zero elsewhere;
    the torus form is omega = 2 epsilon.
    """
    names = seed_variables(n)
    index = {name: k for k, name in enumerate(names)}
    size = len(names)
    eps = [[0] * size for _ in range(size)]
    for i in range(1, block_count(n) + 1):
        x = index[f"x_{i}"]
        for partner in (f"y_{i}", f"w_{i}"):
            p = index[partner]
            eps[x][p] = 1
            eps[p][x] = -1
    return Seed(n=n, D=word_D(n), variables=names, epsilon=eps, d=[1] * size)

"""Dense exact matrices over the rationals, plus permutations.

Everything here is plain Gaussian elimination on Fraction entries; no
floating point anywhere.  Matrices are immutable row-major tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _frac_rows(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", _frac_rows(self.entries))
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("column count mismatch")

    @classmethod
    def from_rows(cls, rows) -> "RatMatrix":
        rows = _frac_rows(rows)
        cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, tuple(
            tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
        ))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        z = Fraction(0)
        return cls(rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __add__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RatMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.entries, other.entries)
        ))

    def __sub__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self + other.scale(Fraction(-1))

    def scale(self, c) -> "RatMatrix":
        c = Fraction(c)
        return RatMatrix(self.rows, self.cols, tuple(
            tuple(c * a for a in row) for row in self.entries
        ))

    def __mul__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries)) if other.entries else []
        return RatMatrix(self.rows, other.cols, tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            for row in self.entries
        ))

    def pow(self, e: int) -> "RatMatrix":
        if self.rows != self.cols:
            raise ValueError("only square matrices have powers")
        if e < 0:
            raise ValueError("negative matrix powers are not supported")
        acc = RatMatrix.identity(self.rows)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base if e > 1 else base
            e >>= 1
        return acc

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.entries else ())

    def is_upper_triangular(self) -> bool:
        return all(
            not self.entries[i][j]
            for i in range(self.rows) for j in range(min(i, self.cols))
        )

    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))


def row_times_matrix(vec, m: RatMatrix):
    if len(vec) != m.rows:
        raise ValueError("shape mismatch")
    return tuple(
        sum((vec[i] * m.entries[i][j] for i in range(m.rows)), Fraction(0))
        for j in range(m.cols)
    )


def matrix_times_col(m: RatMatrix, vec):
    if len(vec) != m.cols:
        raise ValueError("shape mismatch")
    return tuple(sum((row[j] * vec[j] for j in range(m.cols)), Fraction(0)) for row in m.entries)


def dot(u, v) -> Fraction:
    if len(u) != len(v):
        raise ValueError("shape mismatch")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def rref(rows) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    work = [list(map(Fraction, r)) for r in rows]
    pivots: list[int] = []
    r = 0
    cols = len(work[0]) if work else 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = 1 / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return [row for row in work[:r]], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def row_space_basis(m: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Canonical (reduced echelon) basis of the row space."""
    reduced, _ = rref(m.entries)
    return [tuple(row) for row in reduced]


def kernel_basis(m: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Canonical basis of the right kernel {v : m v = 0}."""
    reduced, pivots = rref(m.entries)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * m.cols
        vec[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    canon, _ = rref(basis) if basis else ([], [])
    return [tuple(row) for row in canon]


def solve_linear(rows, rhs) -> list[Fraction]:
    """One exact solution of rows * x = rhs; raises ValueError if inconsistent.

    Free variables, if any, are set to zero.
    """
    if len(rows) != len(rhs):
        raise ValueError("shape mismatch")
    aug = [list(map(Fraction, r)) + [Fraction(v)] for r, v in zip(rows, rhs)]
    n = len(rows[0]) if rows else 0
    reduced, pivots = rref(aug)
    if n in pivots:
        raise ValueError("inconsistent linear system")
    solution = [Fraction(0)] * n
    for row, p in zip(reduced, pivots):
        solution[p] = row[-1]
    return solution


@dataclass(frozen=True)
class Permutation:
    """sigma maps index i to images[i]."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("not a permutation")

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __len__(self):
        return len(self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, v in enumerate(self.images):
            inv[v] = i
        return Permutation(tuple(inv))

    def matrix(self) -> RatMatrix:
        """P with P e_i = e_{sigma(i)}, so (P A P^-1)[sigma(i)][sigma(j)] = A[i][j]."""
        n = len(self.images)
        rows = [[Fraction(0)] * n for _ in range(n)]
        for j, i in enumerate(self.images):
            rows[i][j] = Fraction(1)
        return RatMatrix.from_rows(rows)

"""Exact linear algebra over the rationals.

Small dense matrices with Fraction entries.  Everything here is
deterministic: row reduction always picks the leftmost available pivot, so
kernel bases, image bases and quotient data are reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class Matrix:
    """Immutable dense matrix over Q."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Iterable[Iterable]):
        self.rows = rows
        self.cols = cols
        d = tuple(tuple(_frac(x) for x in row) for row in data)
        if len(d) != rows or any(len(r) != cols for r in d):
            raise ValueError("matrix data has wrong shape")
        self.data = d

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        return Matrix(r, c, rows)

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, [[0] * cols for _ in range(rows)])

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def column(entries: Sequence) -> "Matrix":
        return Matrix(len(entries), 1, [[x] for x in entries])

    # -- basics ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def col(self, j: int) -> tuple:
        return tuple(self.data[i][j] for i in range(self.rows))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        return Matrix(
            self.rows,
            self.cols,
            [
                [self.data[i][j] + other.data[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [[-x for x in row] for row in self.data])

    def scale(self, c) -> "Matrix":
        c = _frac(c)
        return Matrix(self.rows, self.cols, [[c * x for x in row] for row in self.data])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch in product: {self.rows}x{self.cols} * {other.rows}x{other.cols}"
            )
        if self.cols == 0:
            return Matrix.zero(self.rows, other.cols)
        ocols = tuple(zip(*other.data)) if other.data else ()
        out = []
        for row in self.data:
            out.append(
                [sum(a * b for a, b in zip(row, col)) for col in ocols]
                if ocols
                else []
            )
        return Matrix(self.rows, other.cols, out)

    def transpose(self) -> "Matrix":
        if not self.data:
            return Matrix(self.cols, 0, [[] for _ in range(self.cols)])
        return Matrix(self.cols, self.rows, list(zip(*self.data)))

    # -- stacking ------------------------------------------------------------

    @staticmethod
    def hstack(blocks: Sequence["Matrix"]) -> "Matrix":
        blocks = [b for b in blocks]
        if not blocks:
            return Matrix.zero(0, 0)
        rows = blocks[0].rows
        if any(b.rows != rows for b in blocks):
            raise ValueError("hstack: row mismatch")
        data = [sum((list(b.data[i]) for b in blocks), []) for i in range(rows)]
        return Matrix(rows, sum(b.cols for b in blocks), data)

    @staticmethod
    def vstack(blocks: Sequence["Matrix"]) -> "Matrix":
        blocks = [b for b in blocks]
        if not blocks:
            return Matrix.zero(0, 0)
        cols = blocks[0].cols
        if any(b.cols != cols for b in blocks):
            raise ValueError("vstack: column mismatch")
        data = [row for b in blocks for row in b.data]
        return Matrix(sum(b.rows for b in blocks), cols, data)

    # -- gaussian elimination --------------------------------------------------

    def rref(self) -> tuple["Matrix", list[int]]:
        """Reduced row echelon form with leftmost pivots.

        Returns (R, pivot_columns).
        """
        m = [list(row) for row in self.data]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            pr = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        return Matrix(self.rows, self.cols, m), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> "Matrix":
        """Matrix whose columns form the canonical kernel basis.

        One basis vector per non-pivot column, with 1 in that coordinate;
        columns ordered by increasing free-column index.
        """
        R, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        cols = []
        for fc in free:
            v = [Fraction(0)] * self.cols
            v[fc] = Fraction(1)
            for i, pc in enumerate(pivots):
                v[pc] = -R.data[i][fc]
            cols.append(v)
        if not cols:
            return Matrix.zero(self.cols, 0)
        return Matrix(self.cols, len(cols), list(zip(*cols)))

    def column_space_basis(self) -> "Matrix":
        """Columns of self forming the canonical (leftmost) image basis."""
        _, pivots = self.rref()
        cols = [self.col(c) for c in pivots]
        if not cols:
            return Matrix.zero(self.rows, 0)
        return Matrix(self.rows, len(cols), list(zip(*cols)))

    def solve(self, b: "Matrix") -> "Matrix | None":
        """Solve self * X = b exactly; None if inconsistent.

        Free variables are set to zero (deterministic particular solution).
        """
        if b.rows != self.rows:
            raise ValueError("solve: shape mismatch")
        aug = Matrix.hstack([self, b])
        R, pivots = aug.rref()
        n = self.cols
        sol_pivots = [p for p in pivots if p < n]
        if len(sol_pivots) != len(pivots):
            return None  # a pivot landed in the b-block: inconsistent
        X = [[Fraction(0)] * b.cols for _ in range(n)]
        for i, pc in enumerate(sol_pivots):
            for j in range(b.cols):
                X[pc][j] = R.data[i][n + j]
        return Matrix(n, b.cols, X)

    def inverse(self) -> "Matrix | None":
        if self.rows != self.cols:
            return None
        X = self.solve(Matrix.identity(self.rows))
        if X is None or (self * X) != Matrix.identity(self.rows):
            return None
        return X

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows


def extend_to_basis(B: Matrix) -> Matrix:
    """Extend the columns of B (independent) to a basis of the ambient space.

    Standard basis vectors are tried left to right and kept greedily.
    Returns the square matrix [B | chosen standard vectors].
    """
    n = B.rows
    cur = B
    for j in range(n):
        if cur.cols == n:
            break
        cand = Matrix.hstack([cur, Matrix.column([1 if i == j else 0 for i in range(n)])])
        if cand.rank() == cand.cols:
            cur = cand
    if cur.cols != n:
        raise ValueError("extend_to_basis: input columns were dependent")
    return cur


def retraction(B: Matrix) -> Matrix:
    """Left inverse r of the inclusion B with r restricted to span(B) canonical.

    B has independent columns; returns r with r*B = I, obtained by extending
    B to a basis with greedily chosen standard vectors and projecting.
    """
    full = extend_to_basis(B)
    inv = full.inverse()
    assert inv is not None
    return Matrix(B.cols, B.rows, inv.data[: B.cols])


class Quotient:
    """Quotient of Q^n by a subspace, with canonical projection and section.

    The subspace is row reduced; quotient coordinates are the non-pivot
    coordinates of the ambient space.  ``project`` maps ambient vectors to
    quotient coordinates, ``section`` lifts quotient coordinates back by
    placing them in the non-pivot slots.
    """

    def __init__(self, n: int, subspace_cols: Matrix):
        if subspace_cols.rows != n:
            raise ValueError("quotient: ambient dimension mismatch")
        R, pivots = subspace_cols.transpose().rref()
        self.n = n
        self.pivots = pivots
        self.free = [c for c in range(n) if c not in pivots]
        self.dim = len(self.free)
        # projection: subtract the echelon rows to clear pivot coordinates,
        # then read off the free coordinates.
        proj = []
        for fc in self.free:
            row = [Fraction(0)] * n
            row[fc] = Fraction(1)
            for i, pc in enumerate(pivots):
                row[pc] = -R.data[i][fc]
            proj.append(row)
        self.project = Matrix(self.dim, n, proj) if self.dim else Matrix.zero(0, n)
        sec = [[Fraction(0)] * self.dim for _ in range(n)]
        for k, fc in enumerate(self.free):
            sec[fc][k] = Fraction(1)
        self.section = Matrix(n, self.dim, sec) if self.dim else Matrix.zero(n, 0)

"""Exact dense linear algebra over the integers and rationals.

Everything here works with Python ints and ``fractions.Fraction``, so there
is no overflow and no rounding anywhere.  Matrices are immutable; all
operations return new values and are safe to call concurrently.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DependentInput

Entry = int | Fraction


class Matrix:
    """Immutable dense matrix with exact integer or rational entries."""

    __slots__ = ("rows", "cols", "_d")

    def __init__(self, entries: Sequence[Sequence[Entry]], cols: int | None = None):
        data = tuple(tuple(row) for row in entries)
        if data:
            ncols = len(data[0])
            if any(len(row) != ncols for row in data):
                raise ValueError("ragged rows")
        else:
            if cols is None:
                raise ValueError("empty matrix needs explicit column count")
            ncols = cols
        if cols is not None and data and cols != ncols:
            raise ValueError("column count mismatch")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "_d", data)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        return Matrix([[0] * cols for _ in range(rows)], cols=cols)

    @staticmethod
    def from_columns(columns: Sequence[Sequence[Entry]]) -> "Matrix":
        if not columns:
            raise ValueError("need at least one column")
        nrows = len(columns[0])
        return Matrix([[col[i] for col in columns] for i in range(nrows)])

    # -- access ------------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> Entry:
        i, j = ij
        return self._d[i][j]

    def row(self, i: int) -> tuple[Entry, ...]:
        return self._d[i]

    def column(self, j: int) -> tuple[Entry, ...]:
        return tuple(row[j] for row in self._d)

    def columns(self) -> list[tuple[Entry, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> list[list[Entry]]:
        return [list(row) for row in self._d]

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} * {other.shape}")
            cols = list(zip(*other._d)) if other._d else []
            return Matrix(
                [
                    [sum(a * b for a, b in zip(row, col)) for col in cols]
                    for row in self._d
                ],
                cols=other.cols,
            )
        return Matrix([[x * other for x in row] for row in self._d], cols=self.cols)

    __rmul__ = __mul__

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._d, other._d)],
            cols=self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-1) * other

    def __neg__(self) -> "Matrix":
        return (-1) * self

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self._d)) if self._d else [], cols=self.rows)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return Matrix(
            [r1 + r2 for r1, r2 in zip(self._d, other._d)],
            cols=self.cols + other.cols,
        )

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        return Matrix(
            [[self._d[i][j] for j in col_idx] for i in row_idx], cols=len(col_idx)
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._d for x in row)

    def is_integer(self) -> bool:
        return all(Fraction(x).denominator == 1 for row in self._d for x in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return all(
            a == b for r1, r2 in zip(self._d, other._d) for a, b in zip(r1, r2)
        )

    def __hash__(self) -> int:
        return hash((self.shape, tuple(tuple(Fraction(x) for x in r) for r in self._d)))

    def __repr__(self) -> str:
        return f"Matrix({self.to_lists()!r})"


def apply_matrix(m: Matrix, v: Sequence[Entry]) -> tuple[Entry, ...]:
    """m applied to a column vector, returned as a tuple."""
    if m.cols != len(v):
        raise ValueError("shape mismatch")
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m._d)


def primitivize(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (sign preserved)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


# -- elimination ----------------------------------------------------------


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot columns)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(m: Matrix) -> int:
    """Rank over the rationals, by fraction-free elimination for int input."""
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.is_integer():
        return _rank_fraction_free(m)
    rows = [[Fraction(x) for x in row] for row in m._d]
    _, pivots = _rref(rows)
    return len(pivots)


def _rank_fraction_free(m: Matrix) -> int:
    """Bareiss-style fraction-free elimination rank for integer matrices."""
    a = [list(row) for row in m._d]
    nrows, ncols = m.rows, m.cols
    prev = 1
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == nrows:
            break
    return r


def rational_kernel_basis(m: Matrix) -> Matrix:
    """Basis of ker(m) as matrix columns; exact, full column rank.

    Returns a matrix with ``cols - rank`` columns (possibly zero columns).
    """
    rows = [[Fraction(x) for x in row] for row in m._d]
    if not rows:
        return Matrix.identity(m.cols)
    rows, pivots = _rref(rows)
    free = [c for c in range(m.cols) if c not in pivots]
    basis_cols: list[list[Fraction]] = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        basis_cols.append(v)
    if not basis_cols:
        return Matrix.zeros(m.cols, 0)
    return Matrix.from_columns(basis_cols)


def solve(m: Matrix, b: Sequence[Entry]) -> tuple[Fraction, ...] | None:
    """One exact solution of m x = b, or None when inconsistent."""
    rows = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(m._d, b)]
    rows, pivots = _rref(rows)
    aug_col = m.cols
    if aug_col in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for r, p in enumerate(pivots):
        x[p] = rows[r][aug_col]
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    """Exact inverse of a square nonsingular matrix."""
    if m.rows != m.cols:
        raise ValueError("not square")
    n = m.rows
    rows = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(m._d)
    ]
    rows, pivots = _rref(rows)
    if pivots != list(range(n)):
        raise ValueError("singular matrix")
    return Matrix([row[n:] for row in rows], cols=n)


def det(m: Matrix) -> Fraction:
    """Exact determinant of a square matrix."""
    if m.rows != m.cols:
        raise ValueError("not square")
    rows = [[Fraction(x) for x in row] for row in m._d]
    n = m.rows
    d = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            d = -d
        d *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return d


# -- Smith normal form -----------------------------------------------------


def smith_normal_form(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form of an integer matrix.

    Returns (U, D, V) with U * m * V = D, U and V unimodular, and D diagonal
    with nonnegative entries d_i | d_{i+1}.  Pivots are chosen by minimal
    absolute value to limit coefficient growth.
    """
    if not m.is_integer():
        raise ValueError("smith_normal_form needs an integer matrix")
    a = [[int(x) for x in row] for row in m._d]
    nrows, ncols = m.rows, m.cols
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        # row[dst] += f * row[src]
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(nrows, ncols):
        # pivot of minimal absolute value in the remaining block
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the rest of the block by the pivot
            offender = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if a[i][j] % a[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    return Matrix(u), Matrix(a), Matrix(v)


def invariant_factors(m: Matrix) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, in order."""
    _, d, _ = smith_normal_form(m)
    out = []
    for i in range(min(d.rows, d.cols)):
        if d[i, i] != 0:
            out.append(int(d[i, i]))
    return out


def extend_to_lattice_basis(
    vectors: Iterable[Sequence[int]], ambient_rank: int
) -> Matrix | None:
    """Extend independent integer columns to a basis of the full lattice.

    Returns a unimodular matrix whose first columns are the input when the
    input spans a saturated (primitive) sublattice; returns None when the
    input generates a proper finite-index sublattice of its saturation.

    Raises DependentInput when the columns are linearly dependent over Q.
    """
    cols = [tuple(v) for v in vectors]
    if not cols:
        return Matrix.identity(ambient_rank)
    if any(len(c) != ambient_rank for c in cols):
        raise ValueError("column length != ambient_rank")
    b = Matrix.from_columns(cols)
    k = len(cols)
    if rank(b) < k:
        raise DependentInput("input columns are linearly dependent over Q")
    u, d, _v = smith_normal_form(b)
    if any(d[i, i] != 1 for i in range(k)):
        return None  # proper finite-index sublattice of its saturation
    uinv = inverse(u)
    ext_cols = list(cols)
    for j in range(k, ambient_rank):
        col = uinv.column(j)
        ext_cols.append(tuple(int(x) for x in col))
    result = Matrix.from_columns(ext_cols)
    assert abs(det(result)) == 1
    return result

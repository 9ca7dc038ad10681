"""Exact matrices over Q and integer normal forms.

Everything here is exact: entries are ints or Fractions, never floats.
The Smith normal form is the workhorse for all homology and lattice
computations; saturation and rational kernels are built on top of it.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

Scalar = int | Fraction


def _norm(x) -> Scalar:
    """Normalize an entry: Fractions with denominator 1 become ints."""
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    raise TypeError(f"matrix entries must be int or Fraction, got {type(x)!r}")


class Matrix:
    """Immutable row-major matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, rows: int, cols: int, entries: Iterable[Iterable] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        if entries is None:
            self._e = tuple(tuple(0 for _ in range(cols)) for _ in range(rows))
        else:
            e = tuple(tuple(_norm(x) for x in row) for row in entries)
            if len(e) != rows or any(len(r) != cols for r in e):
                raise ValueError("entry grid does not match declared dimensions")
            self._e = e

    @staticmethod
    def from_rows(entries: Sequence[Sequence]) -> "Matrix":
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        return Matrix(rows, cols, entries)

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols)

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def row(self, i: int):
        return self._e[i]

    def entries(self):
        return self._e

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._e == other._e
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self._e))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {[list(r) for r in self._e]!r})"

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._e for x in row)

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for row in self._e for x in row)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [[self._e[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        return Matrix(self.rows, self.cols, [[self._e[i][j] + other._e[i][j] for j in range(self.cols)] for i in range(self.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [[-x for x in row] for row in self._e])

    def scale(self, c) -> "Matrix":
        c = _norm(c) if not isinstance(c, Fraction) else c
        return Matrix(self.rows, self.cols, [[_norm(Fraction(x) * c) for x in row] for row in self._e])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch in product: {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = sum((Fraction(self._e[i][k]) * other._e[k][j] for k in range(self.cols)), Fraction(0))
                row.append(_norm(acc))
            out.append(row)
        return Matrix(self.rows, other.cols, out)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return Matrix(self.rows, self.cols + other.cols, [list(self._e[i]) + list(other._e[i]) for i in range(self.rows)])

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return Matrix(self.rows + other.rows, self.cols, list(self._e) + list(other._e))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        return Matrix(len(row_idx), len(col_idx), [[self._e[i][j] for j in col_idx] for i in row_idx])

    def columns(self) -> list[tuple]:
        return [tuple(self._e[i][j] for i in range(self.rows)) for j in range(self.cols)]

    def denominator_lcm(self) -> int:
        m = 1
        for row in self._e:
            for x in row:
                if isinstance(x, Fraction):
                    m = m * x.denominator // gcd(m, x.denominator)
        return m


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    grid = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                grid[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return Matrix(rows, cols, grid)


# ---------------------------------------------------------------------------
# Smith normal form over Z
# ---------------------------------------------------------------------------

def smith_normal_form(a: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, D, V) with U*a*V = D, U and V unimodular, D diagonal
    with d_i | d_{i+1} and d_i >= 0.

    Pivot rule: smallest nonzero absolute value in the remaining block,
    ties broken by lowest row then lowest column, so the output is
    deterministic and entry growth stays modest.
    """
    if not a.is_integral():
        raise ValueError("smith_normal_form expects an integer matrix")
    n, m = a.rows, a.cols
    d = [list(row) for row in a.entries()]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def row_op(i, j, c):  # row_i += c * row_j
        d[i] = [x + c * y for x, y in zip(d[i], d[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, c):  # col_i += c * col_j
        for r in range(n):
            d[r][i] += c * d[r][j]
        for r in range(m):
            v[r][i] += c * v[r][j]

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in range(n):
            d[r][i], d[r][j] = d[r][j], d[r][i]
        for r in range(m):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def row_negate(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    s = 0
    while s < n and s < m:
        # locate pivot: minimal |entry| in the block, lowest row then column
        pivot = None
        best = None
        for i in range(s, n):
            for j in range(s, m):
                x = d[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        while True:
            i, j = pivot
            if i != s:
                row_swap(s, i)
            if j != s:
                col_swap(s, j)
            if d[s][s] < 0:
                row_negate(s)
            # clear the edging by euclidean steps
            dirty = False
            for i in range(s + 1, n):
                if d[i][s] != 0:
                    q = d[i][s] // d[s][s]
                    row_op(i, s, -q)
                    if d[i][s] != 0:
                        dirty = True
            for j in range(s + 1, m):
                if d[s][j] != 0:
                    q = d[s][j] // d[s][s]
                    col_op(j, s, -q)
                    if d[s][j] != 0:
                        dirty = True
            if dirty:
                pivot = None
                best = None
                for i in range(s, n):
                    for j in range(s, m):
                        x = d[i][j]
                        if x != 0 and (best is None or abs(x) < best):
                            best = abs(x)
                            pivot = (i, j)
                continue
            # edging clear; enforce divisibility of the remaining block
            offender = None
            for i in range(s + 1, n):
                for j in range(s + 1, m):
                    if d[i][j] % d[s][s] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(s, offender, 1)
            pivot = (s, s)
        s += 1

    return (
        Matrix(n, n, u),
        Matrix(n, m, d),
        Matrix(m, m, v),
    )


def diagonal_of(d: Matrix) -> list[int]:
    return [d[i, i] for i in range(min(d.rows, d.cols))]


def minors_gcd(a: Matrix, k: int) -> int:
    """gcd of all k x k minors (0 if none are nonzero). Oracle-grade: brute force."""
    if k == 0:
        return 1
    g = 0
    for ri in combinations(range(a.rows), k):
        for ci in combinations(range(a.cols), k):
            g = gcd(g, _int_det(a.submatrix(ri, ci)))
            if g == 1:
                return 1
    return abs(g)


def _int_det(a: Matrix) -> int:
    """Determinant via fraction-free Bareiss elimination."""
    n = a.rows
    if n != a.cols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    m = [list(row) for row in a.entries()]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Rational elimination: rank, kernel, solving
# ---------------------------------------------------------------------------

def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q; returns (R, pivot column indices)."""
    m = [[Fraction(x) for x in row] for row in a.entries()]
    rows, cols = a.rows, a.cols
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pr = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return Matrix(rows, cols, m), pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def kernel_basis(a: Matrix) -> Matrix:
    """Basis of the rational kernel, as columns of a cols x k matrix."""
    r, pivots = rref(a)
    free = [j for j in range(a.cols) if j not in pivots]
    cols = []
    for f in free:
        vec = [Fraction(0)] * a.cols
        vec[f] = Fraction(1)
        for i, p in enumerate(pivots):
            vec[p] = -r[i, f]
        cols.append(vec)
    return Matrix(a.cols, len(cols), [[cols[k][i] for k in range(len(cols))] for i in range(a.cols)])


def left_kernel_basis(a: Matrix) -> Matrix:
    """Basis of the left kernel, as rows of a k x rows matrix."""
    return kernel_basis(a.transpose()).transpose()


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Solve a * X = b over Q; returns one solution or None if inconsistent.

    When the columns of a are independent the solution is unique.
    """
    aug = a.hstack(b)
    r, pivots = rref(aug)
    if any(p >= a.cols for p in pivots):
        return None
    x = [[Fraction(0)] * b.cols for _ in range(a.cols)]
    for i, p in enumerate(pivots):
        for j in range(b.cols):
            x[p][j] = r[i, a.cols + j]
    return Matrix(a.cols, b.cols, x)


def saturate(a: Matrix) -> Matrix:
    """Saturated integer basis of the column span.

    Returns an integer matrix whose columns are a basis of
    span_Q(columns of a) intersected with Z^rows, i.e. coordinates of
    lattice points in this basis are always integral.
    """
    if a.cols == 0 or a.rows == 0:
        return Matrix(a.rows, 0)
    den = a.denominator_lcm()
    b = a.scale(den)
    assert b.is_integral()
    u, d, _v = smith_normal_form(b)
    k = sum(1 for x in diagonal_of(d) if x != 0)
    uinv = invert(u)
    return uinv.submatrix(range(a.rows), range(k))


def invert(a: Matrix) -> Matrix:
    """Inverse of a square matrix over Q; raises on singular input."""
    n = a.rows
    if n != a.cols:
        raise ValueError("only square matrices are invertible")
    r, pivots = rref(a.hstack(Matrix.identity(n)))
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return r.submatrix(range(n), range(n, 2 * n))


def is_invertible(a: Matrix) -> bool:
    return a.rows == a.cols and rank(a) == a.rows

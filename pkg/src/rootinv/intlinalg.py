"""Exact linear algebra over the integers and rationals.

Everything here works with arbitrary-precision Python ints / Fractions;
no floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InfiniteQuotient

IntVec = tuple[int, ...]
QVec = tuple[Fraction, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable rectangular matrix of exact integers."""

    rows: tuple[IntVec, ...]

    def __post_init__(self) -> None:
        if self.rows:
            w = len(self.rows[0])
            if any(len(r) != w for r in self.rows):
                raise DimensionMismatch("ragged rows")

    @staticmethod
    def from_rows(rows: Iterable[Sequence[int]]) -> "IntMatrix":
        return IntMatrix(tuple(tuple(int(x) for x in r) for r in rows))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.rows[ij[0]][ij[1]]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows))) if self.rows else self

    def col(self, j: int) -> IntVec:
        return tuple(r[j] for r in self.rows)

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.ncols} != {other.nrows}")
        cols = other.transpose().rows
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, c)) for c in cols) for row in self.rows)
        )

    def apply(self, v: Sequence[int]) -> IntVec:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"{len(v)} != {self.ncols}")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.rows)

    def sub(self, other: "IntMatrix") -> "IntMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("shape mismatch")
        return IntMatrix(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(min(self.nrows, self.ncols)))


@dataclass(frozen=True)
class RatVector:
    """Exact rational vector stored as integer numerators over one positive denominator.

    Invariant: den >= 1 and gcd(all nums, den) == 1.
    """

    nums: IntVec
    den: int

    @staticmethod
    def from_fractions(fs: Sequence[Fraction | int]) -> "RatVector":
        fr = [Fraction(f) for f in fs]
        den = 1
        for f in fr:
            den = den * f.denominator // gcd(den, f.denominator)
        nums = tuple(int(f * den) for f in fr)
        g = den
        for x in nums:
            g = gcd(g, x)
            if g == 1:
                break
        if g > 1:
            nums = tuple(x // g for x in nums)
            den //= g
        return RatVector(nums, den)

    def to_fractions(self) -> QVec:
        return tuple(Fraction(x, self.den) for x in self.nums)

    def __len__(self) -> int:
        return len(self.nums)

    def sort_key(self) -> tuple:
        return (len(self.nums), tuple(Fraction(x, self.den) for x in self.nums))


@dataclass(frozen=True)
class SmithForm:
    """Decomposition U*A*V = D with U, V unimodular and D diagonal.

    The diagonal satisfies d1 | d2 | ... | dr with di >= 0.
    """

    U: IntMatrix
    V: IntMatrix
    diagonal: IntVec

    def diag_matrix(self, nrows: int, ncols: int) -> IntMatrix:
        return IntMatrix(
            tuple(
                tuple(self.diagonal[i] if i == j and i < len(self.diagonal) else 0 for j in range(ncols))
                for i in range(nrows)
            )
        )


def _swap_rows(m: list[list[int]], i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: list[list[int]], i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def smith_normal_form(a: IntMatrix) -> SmithForm:
    """Smith normal form by exact row/column reduction with min-abs pivoting."""
    m, n = a.nrows, a.ncols
    d = [list(r) for r in a.rows]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def pivot_at(t: int) -> bool:
        # move a minimal-magnitude nonzero entry of the trailing block to (t, t)
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = abs(d[i][j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
        if best is None:
            return False
        _, i, j = best
        if i != t:
            _swap_rows(d, i, t)
            _swap_rows(u, i, t)
        if j != t:
            _swap_cols(d, j, t)
            _swap_cols(v, j, t)
        return True

    t = 0
    while t < min(m, n):
        if not pivot_at(t):
            break
        while True:
            # clear column t with row operations
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    if q:
                        for j in range(n):
                            d[i][j] -= q * d[t][j]
                        for j in range(m):
                            u[i][j] -= q * u[t][j]
                    if d[i][t]:
                        _swap_rows(d, i, t)
                        _swap_rows(u, i, t)
                        dirty = True
            # clear row t with column operations
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    if q:
                        for i in range(m):
                            d[i][j] -= q * d[i][t]
                        for i in range(n):
                            v[i][j] -= q * v[i][t]
                    if d[t][j]:
                        _swap_cols(d, j, t)
                        _swap_cols(v, j, t)
                        dirty = True
            if not dirty:
                break
        if d[t][t] < 0:
            for j in range(n):
                d[t][j] = -d[t][j]
            for j in range(m):
                u[t][j] = -u[t][j]
        t += 1

    # enforce the divisibility chain d1 | d2 | ...
    r = t
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            if d[i + 1][i + 1] % d[i][i]:
                # fold entry i+1 into column i, then re-reduce the 2x2 block
                for k in range(m):
                    d[k][i] += d[k][i + 1]
                for k in range(n):
                    v[k][i] += v[k][i + 1]
                a_, b_ = d[i][i], d[i + 1][i]
                g = gcd(a_, b_)
                # row-reduce the pair (a_, b_) to (g, 0) via Bezout
                x, y = _bezout(a_, b_)
                ri, rj = list(d[i]), list(d[i + 1])
                ui, uj = list(u[i]), list(u[i + 1])
                for k in range(n):
                    d[i][k] = x * ri[k] + y * rj[k]
                    d[i + 1][k] = (-b_ // g) * ri[k] + (a_ // g) * rj[k]
                for k in range(m):
                    u[i][k] = x * ui[k] + y * uj[k]
                    u[i + 1][k] = (-b_ // g) * ui[k] + (a_ // g) * uj[k]
                # clear the leftover entry in row i
                qq = d[i][i + 1] // g
                for k in range(m):
                    d[k][i + 1] -= qq * d[k][i]
                for k in range(n):
                    v[k][i + 1] -= qq * v[k][i]
                if d[i + 1][i + 1] < 0:
                    for k in range(n):
                        d[i + 1][k] = -d[i + 1][k]
                    for k in range(m):
                        u[i + 1][k] = -u[i + 1][k]
                changed = True
    diag = tuple(d[i][i] for i in range(r)) + (0,) * (min(m, n) - r)
    return SmithForm(IntMatrix.from_rows(u), IntMatrix.from_rows(v), diag)


def _bezout(a: int, b: int) -> tuple[int, int]:
    """Return (x, y) with x*a + y*b == gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return x0, y0


def integer_kernel(a: IntMatrix) -> tuple[IntVec, ...]:
    """Basis of the saturated lattice {x in Z^ncols : A x = 0}.

    The returned vectors are the columns of the Smith V matrix belonging to
    zero diagonal entries, hence a basis of the full kernel lattice.
    """
    sf = smith_normal_form(a)
    rank = sum(1 for x in sf.diagonal if x)
    return tuple(sf.V.col(j) for j in range(rank, a.ncols))


def cokernel_invariant_factors(a: IntMatrix) -> IntVec:
    """Invariant factors (> 1) of Z^nrows / column-span(A).

    Raises InfiniteQuotient when the quotient has positive rank.
    """
    sf = smith_normal_form(a)
    rank = sum(1 for x in sf.diagonal if x)
    if rank < a.nrows:
        raise InfiniteQuotient(f"quotient rank {a.nrows - rank} > 0")
    return tuple(x for x in sf.diagonal if x > 1)


def rank_int(a: IntMatrix) -> int:
    """Rank over Q, by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in a.rows]
    nr, nc = len(m), len(m[0]) if m else 0
    rank = 0
    prev = 1
    row = 0
    for col in range(nc):
        piv = next((i for i in range(row, nr) if m[i][col]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        for i in range(row + 1, nr):
            for j in range(col + 1, nc):
                m[i][j] = (m[row][col] * m[i][j] - m[i][col] * m[row][j]) // prev
            m[i][col] = 0
        prev = m[row][col]
        row += 1
        rank += 1
        if row == nr:
            break
    return rank


def solve_exact(a: Sequence[Sequence[Fraction | int]], b: Sequence[Fraction | int]) -> QVec:
    """Solve A x = b exactly for square nonsingular A over the rationals."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col]), None)
        if piv is None:
            raise DimensionMismatch("singular system")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return tuple(m[i][n] for i in range(n))


def invert_rational(a: Sequence[Sequence[Fraction | int]]) -> tuple[QVec, ...]:
    """Exact inverse of a square rational matrix, as a tuple of rows."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col]), None)
        if piv is None:
            raise DimensionMismatch("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return tuple(tuple(m[i][n:]) for i in range(n))


def det_int(a: IntMatrix) -> int:
    """Determinant of a square integer matrix (Bareiss)."""
    n = a.nrows
    if n != a.ncols:
        raise DimensionMismatch("determinant of non-square matrix")
    m = [list(r) for r in a.rows]
    sign = 1
    prev = 1
    for col in range(n - 1):
        piv = next((i for i in range(col, n) if m[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        for i in range(col + 1, n):
            for j in range(col + 1, n):
                m[i][j] = (m[col][col] * m[i][j] - m[i][col] * m[col][j]) // prev
            m[i][col] = 0
        prev = m[col][col]
    return sign * m[n - 1][n - 1]

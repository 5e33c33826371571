"""Dense matrices over any commutative ring, with det/per/pf/hf and minors.

Entries only need ``+``, ``-``, ``*`` and multiplication by Python ints, so
the same code runs on ints, Fractions, polynomials and even Grassmann
elements.  Index sets for minors are 1-based and strictly increasing.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence


class Matrix:
    """Immutable row-major matrix."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        entries = tuple(tuple(r) for r in data)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        if any(len(r) != cols for r in entries):
            raise ValueError("ragged matrix")
        self.rows = len(entries)
        self.cols = cols
        self.entries = entries

    @classmethod
    def build(cls, rows: int, cols: int, f: Callable[[int, int], object]) -> "Matrix":
        """Matrix with entry ``f(i, j)`` at 1-based position (i, j)."""
        return cls([[f(i, j) for j in range(1, cols + 1)] for i in range(1, rows + 1)], cols)

    @classmethod
    def identity(cls, n: int, one=1, zero=0) -> "Matrix":
        return cls.build(n, n, lambda i, j: one if i == j else zero)

    @classmethod
    def zeros(cls, rows: int, cols: int, zero=0) -> "Matrix":
        return cls.build(rows, cols, lambda i, j: zero)

    @classmethod
    def blocks(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        out = []
        for band in grid:
            height = band[0].rows
            if any(b.rows != height for b in band):
                raise ValueError("block heights differ")
            for r in range(height):
                out.append([e for b in band for e in b.entries[r]])
        return cls(out)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def map(self, f) -> "Matrix":
        return Matrix([[f(e) for e in r] for r in self.entries], self.cols)

    def transpose(self) -> "Matrix":
        if not self.rows:
            return Matrix([()] * self.cols, 0)
        return Matrix(list(zip(*self.entries)), self.rows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        """Submatrix on 1-based ``rows`` and ``cols`` in the given order."""
        for i in rows:
            if not 1 <= i <= self.rows:
                raise IndexError(f"row index {i} out of range")
        for j in cols:
            if not 1 <= j <= self.cols:
                raise IndexError(f"column index {j} out of range")
        return Matrix([[self.entries[i - 1][j - 1] for j in cols] for i in rows], len(cols))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r, q)] for r, q in zip(self.entries, other.entries)], self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a - b for a, b in zip(r, q)] for r, q in zip(self.entries, other.entries)], self.cols)

    def __neg__(self) -> "Matrix":
        return self.map(lambda e: -e)

    def scale(self, c) -> "Matrix":
        return self.map(lambda e: e * c)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = other.transpose().entries
        out = []
        for r in self.entries:
            row = []
            for c in cols:
                if not r:
                    row.append(0)
                    continue
                acc = r[0] * c[0]
                for a, b in zip(r[1:], c[1:]):
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(out, other.cols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, q in zip(self.entries, other.entries) for a, b in zip(r, q))

    __hash__ = None

    def __repr__(self) -> str:
        return "Matrix([" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.entries) + "])"


# --- scalar helpers --------------------------------------------------------


def _sample(A: Matrix):
    for r in A.entries:
        for e in r:
            return e
    return 0


def _zero(A: Matrix):
    return _sample(A) * 0


def _one(A: Matrix):
    return _sample(A) * 0 + 1


def _require_square(A: Matrix) -> None:
    if A.rows != A.cols:
        raise ValueError(f"matrix is not square ({A.rows}x{A.cols})")


# --- determinant and permanent -------------------------------------------


def _subset_expand(A: Matrix, signed: bool):
    _require_square(A)
    n = A.rows
    one = _one(A)
    if n == 0:
        return one
    zero = one * 0
    layer = {0: one}
    for r in range(n):
        row = A.entries[r]
        nxt: dict[int, object] = {}
        for mask, val in layer.items():
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    continue
                a = row[j]
                if a == 0:
                    continue
                term = val * a
                if signed and (mask >> (j + 1)).bit_count() & 1:
                    term = -term
                key = mask | bit
                prev = nxt.get(key)
                nxt[key] = term if prev is None else prev + term
        layer = nxt
    return layer.get((1 << n) - 1, zero)


def det(A: Matrix):
    """Determinant by dynamic programming over sets of used columns."""
    return _subset_expand(A, True)


def per(A: Matrix):
    """Permanent by the same subset recursion without signs."""
    return _subset_expand(A, False)


# --- pfaffian and hafnian ------------------------------------------------


def is_antisymmetric(A: Matrix) -> bool:
    if A.rows != A.cols:
        return False
    n = A.rows
    return all(A[i, i] == 0 for i in range(n)) and all(
        A[i, j] == -A[j, i] for i in range(n) for j in range(i + 1, n))


def is_symmetric(A: Matrix) -> bool:
    if A.rows != A.cols:
        return False
    n = A.rows
    return all(A[i, j] == A[j, i] for i in range(n) for j in range(i + 1, n))


def _matching_sum(A: Matrix, signed: bool):
    n = A.rows
    one = _one(A)
    zero = one * 0
    if n % 2:
        return zero
    memo: dict[int, object] = {0: one}

    def rec(mask: int):
        got = memo.get(mask)
        if got is not None:
            return got
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        total = zero
        pos = 0
        j_mask = rest
        while j_mask:
            bit = j_mask & -j_mask
            j = bit.bit_length() - 1
            a = A.entries[i][j]
            if not a == 0:
                term = a * rec(rest & ~bit)
                total = total - term if signed and pos & 1 else total + term
            pos += 1
            j_mask ^= bit
        memo[mask] = total
        return total

    return rec((1 << n) - 1)


def pf(A: Matrix):
    """Pfaffian, normalized so that the block matrix with [[0,1],[-1,0]] blocks has pf 1."""
    _require_square(A)
    if A.rows % 2:
        raise ValueError("pfaffian needs even dimension")
    if not is_antisymmetric(A):
        raise ValueError("pfaffian needs an antisymmetric matrix with zero diagonal")
    return _matching_sum(A, True)


def hf(A: Matrix):
    """Hafnian; the diagonal is ignored."""
    _require_square(A)
    if A.rows % 2:
        raise ValueError("hafnian needs even dimension")
    if not is_symmetric(A):
        raise ValueError("hafnian needs a symmetric matrix")
    return _matching_sum(A, False)


def symplectic(n: int, one=1, zero=0) -> Matrix:
    """Block diagonal matrix with 2x2 blocks [[0, 1], [-1, 0]]; ``n`` even."""
    if n % 2:
        raise ValueError("dimension must be even")

    def entry(i, j):
        if i % 2 and j == i + 1:
            return one
        if j % 2 and i == j + 1:
            return -one
        return zero

    return Matrix.build(n, n, entry)


def rect_identity(m: int, n: int, one=1, zero=0) -> Matrix:
    """m x n matrix with ones on the main diagonal."""
    return Matrix.build(m, n, lambda i, j: one if i == j else zero)


# --- index sets and signs ------------------------------------------------


def check_index_set(I: Sequence[int], n: int) -> tuple[int, ...]:
    I = tuple(I)
    if any(not isinstance(i, int) for i in I):
        raise ValueError("indices must be integers")
    if any(b <= a for a, b in zip(I, I[1:])):
        raise ValueError("index set must be strictly increasing")
    if I and (I[0] < 1 or I[-1] > n):
        raise ValueError(f"index set {list(I)} not within 1..{n}")
    return I


def complement(I: Sequence[int], n: int) -> tuple[int, ...]:
    s = set(I)
    return tuple(i for i in range(1, n + 1) if i not in s)


def eps(I: Sequence[int]) -> int:
    """Sign (-1)^(k(k-1)/2 + sum I) for an index set of size k."""
    k = len(I)
    return -1 if (k * (k - 1) // 2 + sum(I)) % 2 else 1


def eps_pair(I: Sequence[int], J: Sequence[int]) -> int:
    return eps(I) * eps(J)


def minor_and_signs(A: Matrix, I: Sequence[int], J: Sequence[int]):
    I = check_index_set(I, A.rows)
    J = check_index_set(J, A.cols)
    return A.submatrix(I, J), eps(I), eps_pair(I, J)


def subsets(n: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations(range(1, n + 1), k))


# --- derived constructions ------------------------------------------------


def adjugate(A: Matrix) -> Matrix:
    """Classical adjoint; ``A @ adj(A) == det(A) * I``."""
    _require_square(A)
    n = A.rows
    if n == 0:
        return A
    one = _one(A)
    if n == 1:
        return Matrix([[one]])
    full = tuple(range(1, n + 1))

    def cof(i, j):
        rows = tuple(r for r in full if r != j)
        cols = tuple(c for c in full if c != i)
        d = det(A.submatrix(rows, cols))
        return -d if (i + j) % 2 else d

    return Matrix.build(n, n, cof)


def inverse(A: Matrix) -> Matrix:
    """Exact inverse of a matrix with rational entries."""
    d = det(A)
    if d == 0:
        raise ZeroDivisionError("singular matrix")
    inv = Fraction(1) / Fraction(d)
    return adjugate(A).map(lambda e: _normalize(e * inv))


def _normalize(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v

"""Slow, obviously-correct reference computations used only by the tests."""

from fractions import Fraction
from itertools import permutations
import random

from cayleyid.matrixfun import Matrix
from cayleyid.ring import Ring, param


def perm_sign(perm) -> int:
    inv = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
    return -1 if inv % 2 else 1


def leibniz_det(A: Matrix):
    """Sum over all n! permutations."""
    n = A.rows
    total = None
    for perm in permutations(range(n)):
        term = perm_sign(perm)
        for i, j in enumerate(perm):
            term = A[i, j] * term
        total = term if total is None else total + term
    return 1 if total is None else total


def leibniz_per(A: Matrix):
    n = A.rows
    total = None
    for perm in permutations(range(n)):
        term = 1
        for i, j in enumerate(perm):
            term = A[i, j] * term
        total = term if total is None else total + term
    return 1 if total is None else total


def matchings(items):
    items = list(items)
    if not items:
        yield []
        return
    a = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1:]
        for m in matchings(rest):
            yield [(a, items[k])] + m


def pf_by_permutations(A: Matrix):
    """pf A = 1/(2^m m!) sum_sigma sgn(sigma) prod a_{sigma(2i-1) sigma(2i)}."""
    n = A.rows
    m = n // 2
    total = None
    for perm in permutations(range(n)):
        term = perm_sign(perm)
        for i in range(m):
            term = A[perm[2 * i], perm[2 * i + 1]] * term
        total = term if total is None else total + term
    if total is None:
        return 1
    scale = Fraction(1, (2 ** m) * _fact(m))
    return total * scale


def _fact(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def symbolic_matrix(ring: Ring, rows: int, cols: int, name: str = "a") -> Matrix:
    return Matrix.build(rows, cols, lambda i, j: ring.var(param(name, i, j)))


def symbolic_antisymmetric(ring: Ring, n: int, name: str = "a") -> Matrix:
    def entry(i, j):
        if i == j:
            return ring.zero()
        if i < j:
            return ring.var(param(name, i, j))
        return -ring.var(param(name, j, i))
    return Matrix.build(n, n, entry)


def symbolic_symmetric(ring: Ring, n: int, name: str = "a") -> Matrix:
    return Matrix.build(n, n, lambda i, j: ring.var(param(name, min(i, j), max(i, j))))


def random_rational(rng: random.Random, lo: int = -5, hi: int = 5):
    num = rng.randint(lo, hi)
    den = rng.randint(1, 4)
    return Fraction(num, den)


def random_rational_matrix(rng: random.Random, rows: int, cols: int) -> Matrix:
    return Matrix.build(rows, cols, lambda i, j: random_rational(rng))


def lift(ring: Ring, A: Matrix) -> Matrix:
    return A.map(ring.lift)

"""Differential operators with polynomial coefficients.

An operator is stored in normal order as ``{derivative monomial: coefficient}``
where the derivative monomial is packed exactly like a ring monomial (the
exponent of variable v counts how often d/dv is applied) and the coefficient
is a polynomial placed to the left of all derivatives.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product as cartesian
from math import comb
from typing import Sequence

from .matrixfun import Matrix, check_index_set
from .powers import PowerElement
from .ring import FIELD, MASK, S, Poly, Ring, VarId, param, rat, x, y


def block_var(block: int, i: int, j: int) -> VarId:
    """Entry (i, j) of the block-th matrix of indeterminates: x, y, x3, x4, ..."""
    if block == 1:
        return x(i, j)
    if block == 2:
        return y(i, j)
    return param(f"x{block}", i, j)


def _slots(mono: int) -> list[tuple[int, int]]:
    out = []
    mono >>= FIELD
    slot = 0
    while mono:
        e = mono & MASK
        if e:
            out.append((slot, e))
        mono >>= FIELD
        slot += 1
    return out


def _unit(slot: int) -> int:
    return (1 << (FIELD * (slot + 1))) + 1


class WeylOp:
    """Immutable normal-ordered operator ``sum c_a(x) d^a``."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict[int, Poly]):
        self.ring = ring
        self.terms = terms

    @classmethod
    def d(cls, ring: Ring, v: VarId) -> "WeylOp":
        return cls(ring, {ring.unit(v): ring.one()})

    @classmethod
    def scalar(cls, ring: Ring, c) -> "WeylOp":
        c = ring.lift(c)
        return cls(ring, {0: c} if c else {})

    @classmethod
    def zero(cls, ring: Ring) -> "WeylOp":
        return cls(ring, {})

    def _lift(self, other) -> "WeylOp | None":
        if isinstance(other, WeylOp):
            if other.ring is not self.ring:
                raise ValueError("operators from different rings")
            return other
        if isinstance(other, Poly) or (isinstance(other, (int, Fraction)) and not isinstance(other, bool)):
            return WeylOp.scalar(self.ring, other)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant_coefficient(self) -> bool:
        return all(c.is_constant() for c in self.terms.values())

    def order(self) -> int:
        return max((m & MASK for m in self.terms), default=-1)

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            prev = out.get(m)
            if prev is None:
                out[m] = c
            else:
                c = prev + c
                if c.is_zero():
                    del out[m]
                else:
                    out[m] = c
        return WeylOp(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylOp(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def left(self, c) -> "WeylOp":
        """Multiply by a polynomial or rational on the left."""
        c = self.ring.lift(c)
        if c.is_zero():
            return WeylOp(self.ring, {})
        out = {}
        for m, v in self.terms.items():
            w = c * v
            if not w.is_zero():
                out[m] = w
        return WeylOp(self.ring, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.left(other)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.compose(other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly)) and not isinstance(other, bool):
            return self.left(other)
        return NotImplemented

    def compose(self, other: "WeylOp") -> "WeylOp":
        """``self o other``, normal ordered with the Leibniz rule."""
        out: dict[int, Poly] = {}

        def put(m: int, c: Poly) -> None:
            prev = out.get(m)
            out[m] = c if prev is None else prev + c

        for a, ca in self.terms.items():
            parts = _slots(a)
            for b, cb in other.terms.items():
                if cb.is_constant() or not parts:
                    put(a + b, ca * cb)
                    continue
                # d^a (cb .) = sum_k binom(a, k) (d^k cb) d^(a-k)
                ranges = [range(e + 1) for _, e in parts]
                for ks in cartesian(*ranges):
                    coef = 1
                    deriv = cb
                    shift = 0
                    for (slot, e), k in zip(parts, ks):
                        if k:
                            coef *= comb(e, k)
                            v = self.ring.variable(slot)
                            for _ in range(k):
                                deriv = deriv.diff(v)
                            shift += k * _unit(slot)
                        if deriv.is_zero():
                            break
                    if deriv.is_zero():
                        continue
                    put(a - shift + b, (ca * deriv).scale(coef))
        return WeylOp(self.ring, {m: c for m, c in out.items() if not c.is_zero()})

    def apply(self, target):
        """Act on a Poly or a PowerElement."""
        cache: dict[int, object] = {0: target}
        ring = self.ring
        if isinstance(target, PowerElement):
            result = PowerElement._raw(ring.zero(), target.base, 0)
            diff = PowerElement.diff
        elif isinstance(target, Poly):
            result = ring.zero()
            diff = Poly.diff
        else:
            raise TypeError("operators act on Poly or PowerElement")
        for mono, coef in self.terms.items():
            cur = target
            key = 0
            for slot, e in _slots(mono):
                v = ring.variable(slot)
                for _ in range(e):
                    key += _unit(slot)
                    got = cache.get(key)
                    if got is None:
                        got = cache[key] = diff(cur, v)
                    cur = got
                if cur.is_zero():
                    break
            if cur.is_zero():
                continue
            if coef.is_constant():
                result = result + cur.scale(coef.constant())
            else:
                result = result + (cur * coef)
        return result

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            ds = "".join(
                f"d[{self.ring.variable(slot)}]" + (f"^{e}" if e > 1 else "")
                for slot, e in _slots(m))
            c = str(self.terms[m])
            if not ds:
                parts.append(c)
            elif c == "1":
                parts.append(ds)
            else:
                parts.append(f"({c})*{ds}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"WeylOp({self})"


class OpMatrix(Matrix):
    """Matrix whose entries are :class:`WeylOp` values."""

    __slots__ = ()

    def commutes_off_lines(self) -> bool:
        """True when every entry commutes with all entries outside its row and column."""
        cells = [(i, j) for i in range(self.rows) for j in range(self.cols)]
        for a, (i, j) in enumerate(cells):
            p = self.entries[i][j]
            for (k, l) in cells[a + 1:]:
                if k == i or l == j:
                    continue
                q = self.entries[k][l]
                if p.is_constant_coefficient() and q.is_constant_coefficient():
                    continue
                if not (p.compose(q) - q.compose(p)).is_zero():
                    return False
        return True

    def sub(self, I: Sequence[int], J: Sequence[int]) -> "OpMatrix":
        I = check_index_set(I, self.rows)
        J = check_index_set(J, self.cols)
        return OpMatrix(self.submatrix(I, J).entries, len(J))


def opdet_apply(M: Matrix, target: PowerElement) -> PowerElement:
    """``det(M)`` acting on ``target``.

    Dynamic programming over column subsets: W(C) is the determinant of the
    last |C| rows against columns C applied to the target, so W(C) is
    ``sum_j (-1)^pos(j) M[row, j] (W(C - j))`` with row = k - |C|.
    """
    if M.rows != M.cols:
        raise ValueError("operator matrix is not square")
    k = M.rows
    layer = {0: target}
    for size in range(1, k + 1):
        row = M.entries[k - size]
        nxt = {}
        for mask, val in layer.items():
            if val.is_zero():
                continue
            for j in range(k):
                bit = 1 << j
                if mask & bit:
                    continue
                op = row[j]
                if op.is_zero():
                    continue
                key = mask | bit
                term = op.apply(val)
                if (key & (bit - 1)).bit_count() & 1:
                    term = -term
                prev = nxt.get(key)
                nxt[key] = term if prev is None else prev + term
        layer = nxt
    full = (1 << k) - 1
    got = layer.get(full)
    if got is None:
        return target.scale(0)
    return got


def opdet_ones_shift_apply(M: Matrix, target: PowerElement) -> PowerElement:
    """``det(U + M) - det(M)`` acting on ``target``, U the all-ones matrix.

    U has rank one, so by row multilinearity only expansions taking exactly one
    row from U survive. The column-subset DP carries a flag recording whether
    that row has been used.
    """
    if M.rows != M.cols:
        raise ValueError("operator matrix is not square")
    k = M.rows
    layer = {(0, False): target}
    for size in range(1, k + 1):
        row = M.entries[k - size]
        nxt = {}

        def put(key, term):
            prev = nxt.get(key)
            nxt[key] = term if prev is None else prev + term

        for (mask, used), val in layer.items():
            if val.is_zero():
                continue
            for j in range(k):
                bit = 1 << j
                if mask & bit:
                    continue
                odd = (mask & (bit - 1)).bit_count() & 1
                if not used:
                    put((mask | bit, True), -val if odd else val)
                op = row[j]
                if op.is_zero():
                    continue
                term = op.apply(val)
                put((mask | bit, used), -term if odd else term)
        layer = nxt
    got = layer.get(((1 << k) - 1, True))
    if got is None:
        return target.scale(0)
    return got


def chain_minor_apply(blocks: Sequence[Matrix], I: Sequence[int], J: Sequence[int],
                      target: PowerElement) -> PowerElement:
    """Minor (I, J) of the product of commuting operator matrices, acting on ``target``.

    Uses the Cauchy-Binet expansion over intermediate index sets, applying
    the last factor first so every intermediate result is a small minor
    action instead of one long derivative chain.
    """
    k = len(I)
    if len(J) != k:
        raise ValueError("minor index sets differ in size")
    for a, b in zip(blocks, blocks[1:]):
        if a.cols != b.rows:
            raise ValueError("operator blocks do not chain")
    current = {tuple(J): target}
    for depth in range(len(blocks) - 1, -1, -1):
        block = blocks[depth]
        rows = [tuple(I)] if depth == 0 else list(combinations(range(1, block.rows + 1), k))
        nxt = {}
        for R in rows:
            total = None
            for C, val in current.items():
                if val.is_zero():
                    continue
                term = opdet_apply(block.submatrix(R, C), val)
                total = term if total is None else total + term
            if total is not None:
                nxt[R] = total
        current = nxt
    got = current.get(tuple(I))
    return target.scale(0) if got is None else got


def derivative_block(ring: Ring, block: int, rows: int, cols: int) -> Matrix:
    """Matrix of partial derivatives for the block-th matrix of indeterminates."""
    return Matrix.build(rows, cols, lambda i, j: WeylOp.d(ring, block_var(block, i, j)))


def oppf_apply(M: Matrix, target: PowerElement) -> PowerElement:
    """Pfaffian of an antisymmetric matrix of commuting operators acting on ``target``."""
    if M.rows != M.cols:
        raise ValueError("operator matrix is not square")
    n = M.rows
    if n % 2:
        raise ValueError("pfaffian needs even dimension")
    memo: dict[int, PowerElement] = {0: target}

    def rec(mask: int) -> PowerElement:
        got = memo.get(mask)
        if got is not None:
            return got
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        total = target.scale(0)
        pos = 0
        walk = rest
        while walk:
            bit = walk & -walk
            j = bit.bit_length() - 1
            op = M.entries[i][j]
            if not op.is_zero():
                inner = rec(rest & ~bit)
                if not inner.is_zero():
                    term = op.apply(inner)
                    total = total - term if pos & 1 else total + term
            pos += 1
            walk ^= bit
        memo[mask] = total
        return total

    return rec((1 << n) - 1)


def expand_det(M: Matrix) -> WeylOp:
    """``det(M)`` as one operator, composing each permutation term left to right."""
    n = M.rows
    ring = M.entries[0][0].ring
    total = WeylOp.zero(ring)
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = WeylOp.scalar(ring, 1)
        for i, j in enumerate(perm):
            term = term.compose(M.entries[i][j])
        total = total - term if inv % 2 else total + term
    return total


# --- operator matrices of the identity families ----------------------------


def _d(ring: Ring, v: VarId) -> WeylOp:
    return WeylOp.d(ring, v)


def _euler(ring: Ring, v: VarId) -> WeylOp:
    return WeylOp.d(ring, v).left(ring.var(v))


def _check_dims(dims, count: int, family: str) -> tuple[int, ...]:
    dims = tuple(dims)
    if len(dims) != count or any(not isinstance(d, int) or d < 1 for d in dims):
        raise ValueError(f"{family}: expected {count} positive size(s), got {list(dims)}")
    return dims


def build_op_matrix(ring: Ring, family: str, dims: Sequence[int], params: dict | None = None) -> OpMatrix:
    """Operator matrix of a family, e.g. ``build_op_matrix(R, "ordinary", (3,))``."""
    params = params or {}
    half = Fraction(1, 2)

    if family == "ordinary":
        (n,) = _check_dims(dims, 1, family)
        return OpMatrix.build(n, n, lambda i, j: _d(ring, x(i, j)))

    if family == "symmetric":
        (n,) = _check_dims(dims, 1, family)
        return OpMatrix.build(n, n, lambda i, j: _d(ring, x(min(i, j), max(i, j))).left(1 if i == j else half))

    if family == "antisymmetric":
        (n,) = _check_dims(dims, 1, family)

        def anti(i, j):
            if i == j:
                return WeylOp.zero(ring)
            return _d(ring, x(i, j)) if i < j else -_d(ring, x(j, i))

        return OpMatrix.build(n, n, anti)

    if family in ("rect_two_matrix", "rect_sym"):
        m, n = _check_dims(dims, 2, family)
        if m > n:
            raise ValueError(f"{family}: need m <= n")
        other = 2 if family == "rect_two_matrix" else 1

        def prod(i, j):
            total = WeylOp.zero(ring)
            for l in range(1, n + 1):
                total = total + _d(ring, block_var(1, i, l)).compose(_d(ring, block_var(other, j, l)))
            return total

        return OpMatrix.build(m, m, prod)

    if family == "rect_antisym":
        m, n = _check_dims(dims, 2, family)
        if m > n:
            raise ValueError(f"{family}: need m <= n")

        def sympl(i, j):
            total = WeylOp.zero(ring)
            for p in range(1, n + 1):
                a, b = 2 * p - 1, 2 * p
                total = total + _d(ring, x(i, a)).compose(_d(ring, x(j, b)))
                total = total - _d(ring, x(i, b)).compose(_d(ring, x(j, a)))
            return total

        return OpMatrix.build(2 * m, 2 * m, sympl)

    if family == "rect_multi":
        sizes = _check_dims(dims, len(tuple(dims)), family) if dims else ()
        if not sizes:
            raise ValueError("rect_multi: need at least one size")
        ell = len(sizes)
        mats = []
        for a in range(ell):
            rows, cols = sizes[a], sizes[(a + 1) % ell]
            mats.append(Matrix.build(rows, cols, lambda i, j, a=a: _d(ring, block_var(a + 1, i, j))))
        result = mats[0]
        for nxt in mats[1:]:
            result = _op_matmul(ring, result, nxt)
        return OpMatrix(result.entries, result.cols)

    if family == "diag_param":
        (n,) = _check_dims(dims, 1, family)
        alphas = [rat(a) for a in params.get("alpha", [0] * n)]
        betas = list(params.get("beta", [0] * n))
        _check_params(n, alphas, betas)
        s = ring.var(S)

        def entry(i, j):
            if i == j:
                a = alphas[i - 1]
                op = WeylOp.scalar(ring, s)
                for k in range(1, n + 1):
                    if k != i:
                        op = op - _euler(ring, x(i, k)).left(a) - _euler(ring, x(k, i)).left(1 - a)
                return op
            return _d(ring, x(i, j)).left(_diag_weight(ring, i, j, betas))

        M = OpMatrix.build(n, n, entry)
        if not M.commutes_off_lines():
            raise AssertionError("diagonal-parametrized entries fail to commute")
        return M

    if family == "diag_param_sym":
        (n,) = _check_dims(dims, 1, family)
        betas = list(params.get("beta", [0] * n))
        _check_params(n, [0] * n, betas)
        s = ring.var(S)

        def entry(i, j):
            if i == j:
                op = WeylOp.scalar(ring, s)
                for k in range(1, n + 1):
                    if k != i:
                        op = op - _euler(ring, x(min(i, k), max(i, k))).left(half)
                return op
            v = x(min(i, j), max(i, j))
            return _d(ring, v).left(_diag_weight(ring, i, j, betas).scale(half))

        M = OpMatrix.build(n, n, entry)
        if not M.commutes_off_lines():
            raise AssertionError("diagonal-parametrized entries fail to commute")
        return M

    if family in ("laplacian_row", "laplacian_sym"):
        (n,) = _check_dims(dims, 1, family)
        sym = family == "laplacian_sym"

        def lap(i, j):
            if i == j:
                return WeylOp.zero(ring)
            v = x(min(i, j), max(i, j)) if sym else x(i, j)
            return _d(ring, v)

        return OpMatrix.build(n, n, lap)

    if family == "product_param":
        m, n = _check_dims(dims, 2, family)
        B = _const_matrix(params.get("B"), n, m, "B")

        def entry(i, j):
            total = WeylOp.zero(ring)
            for l in range(1, n + 1):
                b = B[l - 1, j - 1]
                if b:
                    total = total + _d(ring, x(i, l)).left(b)
            return total

        return OpMatrix.build(m, m, entry)

    if family == "border_param":
        m, n = _check_dims(dims, 2, family)
        if m > n:
            raise ValueError(f"{family}: need m <= n")
        B = _const_matrix(params.get("B"), n - m, n, "B")

        def entry(i, j):
            if i <= m:
                return _d(ring, x(i, j))
            return WeylOp.scalar(ring, B[i - m - 1, j - 1])

        return OpMatrix.build(n, n, entry)

    raise ValueError(f"unknown operator family {family!r}")


def ones_plus(M: OpMatrix) -> OpMatrix:
    """``U + M`` with U the all-ones matrix."""
    return OpMatrix([[e + 1 for e in r] for r in M.entries], M.cols)


def _diag_weight(ring: Ring, i: int, j: int, betas) -> Poly:
    w = ring.one()
    if betas[i - 1] == 1:
        w = w * ring.var(x(i, i))
    if betas[j - 1] == 0:
        w = w * ring.var(x(j, j))
    return w


def _check_params(n: int, alphas, betas) -> None:
    if len(alphas) != n or len(betas) != n:
        raise ValueError("need one alpha and one beta per row")
    if any(b not in (0, 1) or isinstance(b, bool) for b in betas):
        raise ValueError("beta entries must be 0 or 1")


def _const_matrix(A, rows: int, cols: int, name: str) -> Matrix:
    if A is None:
        raise ValueError(f"parameter matrix {name} is required")
    if not isinstance(A, Matrix):
        A = Matrix(A, cols if rows == 0 else None)
    elif A.rows == 0 == rows:
        A = Matrix((), cols)
    if A.shape != (rows, cols):
        raise ValueError(f"parameter matrix {name} must be {rows}x{cols}, got {A.rows}x{A.cols}")
    return A.map(rat)


def _op_matmul(ring: Ring, A: Matrix, B: Matrix) -> Matrix:
    def entry(i, j):
        total = WeylOp.zero(ring)
        for l in range(A.cols):
            total = total + A.entries[i - 1][l].compose(B.entries[l][j - 1])
        return total

    return Matrix.build(A.rows, B.cols, entry)

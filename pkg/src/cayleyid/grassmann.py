"""Grassmann algebras over polynomial coefficients and Berezin integration.

A basis monomial is a bitmask of generator indices (0-based) read in
increasing order, so ``0b101`` is ``g0 g2``.  Integration over a generator is
the same operation as differentiation by it; ``integrate`` takes the list of
generators in the order the measure is written and applies them right to
left.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

from .matrixfun import Matrix, is_antisymmetric
from .ring import Poly, Ring, VarId, rat


class GContext:
    """Generators of one Grassmann algebra plus the coefficient ring."""

    MAX_GENERATORS = 62

    def __init__(self, ring: Ring, n: int | None = None, names: Sequence[str] | None = None,
                 pairing: Sequence[tuple[int, int]] | None = None):
        if names is None:
            if n is None:
                raise ValueError("need a generator count or names")
            names = [f"chi{i + 1}" for i in range(n)]
        names = list(names)
        if n is None:
            n = len(names)
        if len(names) != n:
            raise ValueError("names do not match generator count")
        if not 0 <= n <= self.MAX_GENERATORS:
            raise ValueError(f"at most {self.MAX_GENERATORS} generators supported")
        if pairing is not None:
            pairing = [tuple(p) for p in pairing]
            flat = [i for p in pairing for i in p]
            if sorted(flat) != list(range(n)) or any(len(p) != 2 for p in pairing):
                raise ValueError("pairing must cover every generator exactly once")
        self.ring = ring
        self.n = n
        self.names = names
        self.pairing = pairing
        self._index = {name: i for i, name in enumerate(names)}

    @classmethod
    def real(cls, ring: Ring, n: int, name: str = "chi") -> "GContext":
        return cls(ring, n, [f"{name}{i + 1}" for i in range(n)])

    @classmethod
    def complex(cls, ring: Ring, m: int, name: str = "psi") -> "GContext":
        """``m`` pairs laid out as psi1, psibar1, psi2, psibar2, ..."""
        names = []
        for i in range(1, m + 1):
            names += [f"{name}{i}", f"{name}bar{i}"]
        return cls(ring, 2 * m, names, [(2 * i, 2 * i + 1) for i in range(m)])

    def index(self, name: str) -> int:
        return self._index[name]

    def gen(self, i: int | str) -> "GElement":
        if isinstance(i, str):
            i = self._index[i]
        self._check_index(i)
        return GElement(self, {1 << i: self.ring.one()})

    def gens(self) -> list["GElement"]:
        return [self.gen(i) for i in range(self.n)]

    def scalar(self, c) -> "GElement":
        c = self.ring.lift(c)
        return GElement(self, {0: c} if c else {})

    def zero(self) -> "GElement":
        return GElement(self, {})

    def one(self) -> "GElement":
        return self.scalar(1)

    def _check_index(self, i: int) -> None:
        if not isinstance(i, int) or not 0 <= i < self.n:
            raise IndexError(f"generator index {i} out of range")

    def __repr__(self) -> str:
        return f"GContext({self.n} generators)"


def merge_sign(a: int, b: int) -> int:
    """Sign of reordering (gens of a)(gens of b) into increasing order."""
    count = 0
    while b:
        low = b & -b
        count += (a & ~((low << 1) - 1)).bit_count()
        b ^= low
    return -1 if count & 1 else 1


class GElement:
    """Immutable element ``sum_I c_I chi^I`` of a Grassmann algebra."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: GContext, coeffs: dict[int, Poly]):
        self.ctx = ctx
        self.coeffs = coeffs

    def _lift(self, other) -> "GElement | None":
        if isinstance(other, GElement):
            if other.ctx is not self.ctx:
                raise ValueError("Grassmann elements from different contexts")
            return other
        if isinstance(other, Poly) or (isinstance(other, (int, Fraction)) and not isinstance(other, bool)):
            return self.ctx.scalar(other)
        return None

    # arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v.is_zero():
                    del out[m]
                else:
                    out[m] = v
        return GElement(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return GElement(self.ctx, {m: -c for m, c in self.coeffs.items()})

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

    def scale(self, c) -> "GElement":
        if isinstance(c, Poly):
            if c.is_zero():
                return self.ctx.zero()
            out = {}
            for m, v in self.coeffs.items():
                w = v * c
                if not w.is_zero():
                    out[m] = w
            return GElement(self.ctx, out)
        c = rat(c)
        if not c:
            return self.ctx.zero()
        return GElement(self.ctx, {m: v.scale(c) for m, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, Poly) or (isinstance(other, (int, Fraction)) and not isinstance(other, bool)):
            return self.scale(other)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out: dict[int, Poly] = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                if a & b:
                    continue
                term = ca * cb
                if merge_sign(a, b) < 0:
                    term = -term
                m = a | b
                prev = out.get(m)
                out[m] = term if prev is None else prev + term
        return GElement(self.ctx, {m: c for m, c in out.items() if not c.is_zero()})

    def __rmul__(self, other):
        # scalars are central
        return self.__mul__(other)

    def __pow__(self, k: int) -> "GElement":
        if k < 0:
            raise ValueError("negative power")
        result = self.ctx.one()
        for _ in range(k):
            result = result * self
            if result.is_zero():
                break
        return result

    def __truediv__(self, c):
        return self.scale(Fraction(1) / Fraction(c))

    # structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def coeff(self, mask: int) -> Poly:
        return self.coeffs.get(mask, self.ctx.ring.zero())

    def body(self) -> Poly:
        return self.coeff(0)

    def soul(self) -> "GElement":
        return GElement(self.ctx, {m: c for m, c in self.coeffs.items() if m})

    def even_part(self) -> "GElement":
        return GElement(self.ctx, {m: c for m, c in self.coeffs.items() if not m.bit_count() & 1})

    def odd_part(self) -> "GElement":
        return GElement(self.ctx, {m: c for m, c in self.coeffs.items() if m.bit_count() & 1})

    def is_even(self) -> bool:
        return all(not m.bit_count() & 1 for m in self.coeffs)

    def is_odd(self) -> bool:
        return all(m.bit_count() & 1 for m in self.coeffs)

    def parity_flip(self) -> "GElement":
        """The automorphism negating odd components."""
        return GElement(self.ctx, {m: (-c if m.bit_count() & 1 else c) for m, c in self.coeffs.items()})

    def support(self) -> int:
        out = 0
        for m in self.coeffs:
            out |= m
        return out

    # calculus ------------------------------------------------------------

    def deriv(self, i: int) -> "GElement":
        self.ctx._check_index(i)
        bit = 1 << i
        below = bit - 1
        out = {}
        for m, c in self.coeffs.items():
            if m & bit:
                out[m ^ bit] = -c if (m & below).bit_count() & 1 else c
        return GElement(self.ctx, out)

    def integrate(self, order: Sequence[int]) -> "GElement":
        """``int d g[order[0]] ... d g[order[-1]]`` of this element."""
        f = self
        for i in reversed(list(order)):
            f = f.deriv(i)
            if f.is_zero():
                return f
        return f

    def top(self) -> Poly:
        """Integral against d g_n ... d g_1, i.e. the coefficient of g_1...g_n."""
        return self.coeff((1 << self.ctx.n) - 1)

    # functions of even nilpotents ----------------------------------------

    def _require_even_soul(self) -> None:
        if not self.is_even():
            raise ValueError("argument must be Grassmann-even")
        if not self.body().is_zero():
            raise ValueError("argument must have zero body")

    def exp(self) -> "GElement":
        self._require_even_soul()
        result = self.ctx.one()
        power = self.ctx.one()
        for k in range(1, self.ctx.n // 2 + 2):
            power = power * self
            if power.is_zero():
                break
            result = result + power.scale(Fraction(1, factorial(k)))
        return result

    def series(self, coeffs: Sequence) -> "GElement":
        """``sum_k coeffs[k] * self**k`` truncated where the powers vanish."""
        self._require_even_soul()
        result = self.ctx.zero()
        power = self.ctx.one()
        for k, c in enumerate(coeffs):
            if k:
                power = power * self
                if power.is_zero():
                    break
            result = result + power.scale(c)
        return result

    def inverse(self) -> "GElement":
        """Inverse of an element whose body is a nonzero rational."""
        body = self.body()
        if not body.is_constant() or body.is_zero():
            raise ValueError("body must be a nonzero constant")
        b = Fraction(body.constant())
        u = self.soul().scale(-1 / b)
        result = self.ctx.one()
        power = self.ctx.one()
        for _ in range(self.ctx.n + 1):
            power = power * u
            if power.is_zero():
                break
            result = result + power
        return result.scale(1 / b)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for m in sorted(self.coeffs, key=lambda m: (m.bit_count(), _indices(m))):
            gens = "*".join(self.ctx.names[i] for i in _indices(m))
            c = str(self.coeffs[m])
            if not gens:
                parts.append(c)
            elif c == "1":
                parts.append(gens)
            else:
                parts.append(f"({c})*{gens}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"GElement({self})"


def _indices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def product(factors: Iterable[GElement], ctx: GContext) -> GElement:
    result = ctx.one()
    for f in factors:
        result = result * f
        if result.is_zero():
            break
    return result


# --- measures --------------------------------------------------------------


def real_measure(gens: Sequence[int]) -> list[int]:
    """Order for d g_k ... d g_1 over the listed generators g_1..g_k."""
    return list(reversed(gens))


def complex_measure(pairs: Sequence[tuple[int, int]]) -> list[int]:
    """Order for d psi_1 d psibar_1 ... d psi_m d psibar_m."""
    return [i for p in pairs for i in p]


# --- substitution and changes of variables ------------------------------


def subst_poly(p: Poly, bindings: Mapping[VarId, GElement], ctx: GContext) -> GElement:
    """Evaluate ``p`` with variables replaced by even Grassmann elements.

    Uses the finite Taylor expansion around the bodies:
    ``p(b + u) = sum_a (d^a p)(b) u^a / a!``, which terminates because the
    souls ``u`` are nilpotent.
    """
    ring = p.ring
    if ctx.ring is not ring:
        raise ValueError("polynomial and Grassmann context use different rings")
    present = p.variables()
    active = []
    bodies = {}
    identity = True
    for v, value in bindings.items():
        if value.ctx is not ctx:
            raise ValueError("binding from a different context")
        if not value.is_even():
            raise ValueError(f"binding for {v} is not Grassmann-even")
        body = value.body()
        bodies[v] = body
        if body != ring.var(v):
            identity = False
        if v in present:
            active.append((v, value.soul()))
    if not identity:
        bodies = {v: b for v, b in bodies.items() if v in present}

    acc: dict[int, Poly] = {}

    def emit(q: Poly, soul: GElement, denom: int) -> None:
        if not identity:
            q = q.subst(bodies)
        if denom != 1:
            q = q.scale(Fraction(1, denom))
        for m, c in soul.coeffs.items():
            w = c * q
            prev = acc.get(m)
            acc[m] = w if prev is None else prev + w

    def walk(k: int, q: Poly, soul: GElement, denom: int) -> None:
        if k == len(active):
            emit(q, soul, denom)
            return
        v, u = active[k]
        e = 0
        while True:
            walk(k + 1, q, soul, denom)
            e += 1
            q = q.diff(v)
            if q.is_zero():
                return
            soul = soul * u
            if soul.is_zero():
                return
            denom *= e

    walk(0, p, ctx.one(), 1)
    return GElement(ctx, {m: c for m, c in acc.items() if not c.is_zero()})


def linear_change(f: GElement, A: Matrix) -> GElement:
    """Substitute ``g_i -> sum_j A[i][j] g_j``."""
    ctx = f.ctx
    if A.shape != (ctx.n, ctx.n):
        raise ValueError("matrix size does not match generator count")
    images = []
    for i in range(ctx.n):
        form = ctx.zero()
        for j in range(ctx.n):
            a = A[i, j]
            if not a == 0:
                form = form + ctx.gen(j).scale(a)
        images.append(form)
    memo: dict[int, GElement] = {0: ctx.one()}

    def image(mask: int) -> GElement:
        got = memo.get(mask)
        if got is None:
            high = mask.bit_length() - 1
            got = memo[mask] = image(mask ^ (1 << high)) * images[high]
        return got

    result = ctx.zero()
    for m, c in f.coeffs.items():
        result = result + image(m).scale(c)
    return result


# --- Gaussian integrals ----------------------------------------------------


def _lift_matrix(A: Matrix, ring: Ring) -> Matrix:
    return A.map(ring.lift)


def quadratic_real(A: Matrix, ctx: GContext, gens: Sequence[int] | None = None) -> GElement:
    """``(1/2) g^T A g`` for antisymmetric A over the listed generators."""
    if gens is None:
        gens = range(ctx.n)
    gens = list(gens)
    out = ctx.zero()
    for a, i in enumerate(gens):
        for b in range(a + 1, len(gens)):
            c = A[a, b]
            if not c == 0:
                out = out + (ctx.gen(i) * ctx.gen(gens[b])).scale(c)
    return out


def bilinear(A: Matrix, ctx: GContext, left: Sequence[int], right: Sequence[int]) -> GElement:
    """``sum_ij A[i][j] left_i right_j``."""
    out = ctx.zero()
    for a, i in enumerate(left):
        for b, j in enumerate(right):
            c = A[a, b]
            if not c == 0:
                out = out + (ctx.gen(i) * ctx.gen(j)).scale(c)
    return out


def gaussian_real(A: Matrix, ring: Ring, ctx: GContext | None = None) -> Poly:
    """``int d g_n ... d g_1 exp((1/2) g^T A g)``."""
    A = _lift_matrix(A, ring)
    if not is_antisymmetric(A):
        raise ValueError("real Gaussian needs an antisymmetric matrix")
    n = A.rows
    if ctx is None:
        ctx = GContext.real(ring, n)
    elif ctx.n != n:
        raise ValueError("context size does not match the matrix")
    if n % 2:
        return ring.zero()
    return quadratic_real(A, ctx).exp().top()


def gaussian_complex(A: Matrix, ring: Ring, ctx: GContext | None = None) -> Poly:
    """``int d psi_1 d psibar_1 ... exp(psibar^T A psi)``."""
    A = _lift_matrix(A, ring)
    if A.rows != A.cols:
        raise ValueError("complex Gaussian needs a square matrix")
    m = A.rows
    if ctx is None:
        ctx = GContext.complex(ring, m)
    elif ctx.pairing is None:
        raise ValueError("complex Gaussian needs a paired context")
    elif len(ctx.pairing) != m:
        raise ValueError("context size does not match the matrix")
    psi = [p[0] for p in ctx.pairing]
    psibar = [p[1] for p in ctx.pairing]
    form = bilinear(A, ctx, psibar, psi)
    return form.exp().integrate(complex_measure(ctx.pairing)).body()

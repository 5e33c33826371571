"""Exact rationals and sparse multivariate polynomials.

Variables are registered with an explicit :class:`Ring`, which assigns each
one a bit field inside a packed integer.  A monomial is a single Python int:
the lowest field stores the total degree, field ``k + 1`` stores the exponent
of the ``k``-th registered variable.  Multiplying monomials is integer
addition and divisibility is a borrow check on guard bits.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

FIELD = 20
MASK = (1 << FIELD) - 1
MAX_DEGREE = (1 << (FIELD - 1)) - 1

Rational = Union[int, Fraction]


def rat(value) -> Rational:
    """Coerce ``value`` (int, Fraction or "p/q" text) to a normalized rational."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE_ "):
            raise ValueError(f"not an exact rational: {value!r}")
        return rat(Fraction(text))
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_text(value: Rational) -> str:
    value = rat(value)
    if isinstance(value, int):
        return str(value)
    return f"{value.numerator}/{value.denominator}"


def _norm(value: Rational) -> Rational:
    if type(value) is Fraction and value.denominator == 1:
        return value.numerator
    return value


def _quotient(a: Rational, b: Rational) -> Rational:
    if type(a) is int and type(b) is int and a % b == 0:
        return a // b
    return _norm(Fraction(a) / b)


KIND_RANK = {"x": 0, "y": 1, "s": 2, "t": 3, "alpha": 4, "param": 5}


class VarId(NamedTuple):
    """Identity of a polynomial variable; tuple order is kind-major."""

    rank: int
    name: str
    idx: tuple

    @property
    def kind(self) -> str:
        return "param" if self.rank == KIND_RANK["param"] else self.name

    def __str__(self) -> str:
        return self.name + "".join(f"[{i}]" for i in self.idx)


def x(i: int, j: int) -> VarId:
    return VarId(0, "x", (i, j))


def y(i: int, j: int) -> VarId:
    return VarId(1, "y", (i, j))


S = VarId(2, "s", ())


def t(i: int) -> VarId:
    return VarId(3, "t", (i,))


def alpha(i: int) -> VarId:
    return VarId(4, "alpha", (i,))


def param(name: str, *idx: int) -> VarId:
    if name in KIND_RANK:
        raise ValueError(f"parameter name {name!r} collides with a built-in kind")
    return VarId(5, name, tuple(idx))


class Ring:
    """Registry of variables for one computation.

    Rings are append-only: registering a variable never changes the slot of
    an earlier one, so polynomials built earlier stay valid.
    """

    def __init__(self, variables: Iterable[VarId] = ()):
        self._slot: dict[VarId, int] = {}
        self._vars: list[VarId] = []
        self.guard = 1 << (FIELD - 1)
        for v in variables:
            self.register(v)

    def register(self, v: VarId) -> int:
        slot = self._slot.get(v)
        if slot is None:
            if not isinstance(v, VarId):
                raise TypeError(f"expected VarId, got {v!r}")
            slot = len(self._vars)
            self._vars.append(v)
            self._slot[v] = slot
            self.guard |= 1 << (FIELD * (slot + 1) + FIELD - 1)
        return slot

    def slot(self, v: VarId) -> int | None:
        return self._slot.get(v)

    def variable(self, slot: int) -> VarId:
        return self._vars[slot]

    def __contains__(self, v: VarId) -> bool:
        return v in self._slot

    def __repr__(self) -> str:
        return f"Ring({len(self._vars)} variables)"

    # packing -------------------------------------------------------------

    def unit(self, v: VarId) -> int:
        """Packed monomial of the single variable ``v``."""
        return (1 << (FIELD * (self.register(v) + 1))) + 1

    def pack(self, exps: Mapping[VarId, int]) -> int:
        mono = 0
        for v, e in exps.items():
            if e < 0:
                raise ValueError("negative exponent")
            if e > MAX_DEGREE:
                raise OverflowError("exponent too large")
            mono += e * self.unit(v)
        if mono & MASK > MAX_DEGREE:
            raise OverflowError("degree too large")
        return mono

    def unpack(self, mono: int) -> dict[VarId, int]:
        out = {}
        mono >>= FIELD
        slot = 0
        while mono:
            e = mono & MASK
            if e:
                out[self._vars[slot]] = e
            mono >>= FIELD
            slot += 1
        return out

    # constructors --------------------------------------------------------

    def var(self, v: VarId) -> "Poly":
        return Poly(self, {self.unit(v): 1})

    def const(self, c) -> "Poly":
        c = rat(c)
        return Poly(self, {0: c} if c else {})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {0: 1})

    def poly(self, terms: Mapping) -> "Poly":
        """Build from ``{exponent map or VarId or (): coefficient}``."""
        out: dict[int, Rational] = {}
        for key, c in terms.items():
            if isinstance(key, VarId):
                key = {key: 1}
            elif key == () or key is None:
                key = {}
            m = self.pack(key)
            out[m] = out.get(m, 0) + rat(c)
        return Poly(self, {m: _norm(c) for m, c in out.items() if c})

    def lift(self, value) -> "Poly":
        if isinstance(value, Poly):
            if value.ring is not self:
                raise ValueError("polynomial belongs to a different ring")
            return value
        return self.const(value)


class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict[int, Rational]):
        # callers guarantee normalized, nonzero coefficients
        self.ring = ring
        self.terms = terms

    # helpers -------------------------------------------------------------

    def _other(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.ring is not self.ring:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.const(other)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant(self) -> Rational:
        """Constant term."""
        return self.terms.get(0, 0)

    def degree(self) -> int:
        return max((m & MASK for m in self.terms), default=-1)

    def degree_in(self, v: VarId) -> int:
        slot = self.ring.slot(v)
        if slot is None:
            return 0 if self.terms else -1
        shift = FIELD * (slot + 1)
        return max(((m >> shift) & MASK for m in self.terms), default=-1)

    def variables(self) -> set[VarId]:
        seen = 0
        for m in self.terms:
            seen |= m
        out = set()
        seen >>= FIELD
        slot = 0
        while seen:
            if seen & MASK:
                out.add(self.ring.variable(slot))
            seen >>= FIELD
            slot += 1
        return out

    def items(self) -> Iterator[tuple[dict[VarId, int], Rational]]:
        for m, c in self.terms.items():
            yield self.ring.unpack(m), c

    def __len__(self) -> int:
        return len(self.terms)

    # arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        if not b:
            return Poly(self.ring, a)
        out = dict(a)
        for m, c in b.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = _norm(v)
                else:
                    del out[m]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "Poly":
        c = rat(c)
        if not c:
            return Poly(self.ring, {})
        if c == 1:
            return self
        return Poly(self.ring, {m: _norm(v * c) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._other(other)
        if other is None:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly(self.ring, {})
        if len(a) == 1 and 0 in a:
            return other.scale(a[0])
        if len(b) == 1 and 0 in b:
            return self.scale(b[0])
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, Rational] = {}
        get = out.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = m1 + m2
                out[m] = get(m, 0) + c1 * c2
        return Poly(self.ring, {m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        if k == 0:
            return self.ring.one()
        if self.degree() * k > MAX_DEGREE:
            raise OverflowError("degree too large")
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            return Poly(self.ring, {m * k: _norm(c ** k)})
        result = None
        base = self
        while True:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if not k:
                return result
            base = base * base

    # calculus and substitution ------------------------------------------

    def diff(self, v: VarId) -> "Poly":
        slot = self.ring.slot(v)
        if slot is None:
            return Poly(self.ring, {})
        shift = FIELD * (slot + 1)
        step = (1 << shift) + 1
        out = {}
        for m, c in self.terms.items():
            e = (m >> shift) & MASK
            if e:
                out[m - step] = c * e
        return Poly(self.ring, out)

    def split(self, v: VarId) -> dict[int, "Poly"]:
        """Coefficients of the powers of ``v``: ``{exponent: Poly}``."""
        slot = self.ring.slot(v)
        if slot is None:
            return {0: self} if self.terms else {}
        shift = FIELD * (slot + 1)
        step = (1 << shift) + 1
        parts: dict[int, dict[int, Rational]] = {}
        for m, c in self.terms.items():
            e = (m >> shift) & MASK
            parts.setdefault(e, {})[m - e * step] = c
        return {e: Poly(self.ring, d) for e, d in parts.items()}

    def subst(self, bindings: Mapping[VarId, "Poly"]) -> "Poly":
        """Simultaneous substitution of variables by polynomials."""
        ring = self.ring
        slots = {}
        for v, value in bindings.items():
            slot = ring.slot(v)
            if slot is not None:
                slots[slot] = ring.lift(value)
        if not slots:
            return self
        powers: dict[tuple[int, int], Poly] = {}
        result = ring.zero()
        grouped: dict[tuple, dict[int, Rational]] = {}
        for m, c in self.terms.items():
            key = []
            rest = m
            for slot in slots:
                shift = FIELD * (slot + 1)
                e = (m >> shift) & MASK
                if e:
                    key.append((slot, e))
                    rest -= e * ((1 << shift) + 1)
            grouped.setdefault(tuple(key), {})[rest] = c
        for key, rest in grouped.items():
            term = Poly(ring, rest)
            for slot, e in key:
                p = powers.get((slot, e))
                if p is None:
                    p = powers[(slot, e)] = slots[slot] ** e
                term = term * p
            result = result + term
        return result

    def eval(self, point: Mapping[VarId, Rational]) -> Rational:
        missing = self.variables() - set(point)
        if missing:
            names = ", ".join(sorted(str(v) for v in missing))
            raise ValueError(f"unbound variables: {names}")
        total: Rational = 0
        cache: dict[VarId, Rational] = {v: rat(val) for v, val in point.items()}
        for exps, c in self.items():
            term = c
            for v, e in exps.items():
                term *= cache[v] ** e
            total += term
        return _norm(Fraction(total)) if isinstance(total, Fraction) else total

    def div_exact(self, q: "Poly") -> "Poly | None":
        """Exact quotient ``self / q`` or ``None`` when ``q`` does not divide."""
        q = self._other(q)
        if q is None:
            raise TypeError("divisor must be a polynomial or rational")
        if not q.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        ring = self.ring
        if not self.terms:
            return ring.zero()
        if q.is_constant():
            return self.scale(Fraction(1) / Fraction(q.terms[0]))
        if self.degree() < q.degree():
            return None
        guard = ring.guard
        lead = max(q.terms)
        lead_c = q.terms[lead]
        qterms = list(q.terms.items())
        rem = dict(self.terms)
        heap = [-m for m in rem]
        heapq.heapify(heap)
        quot: dict[int, Rational] = {}
        while rem:
            m = -heapq.heappop(heap)
            c = rem.get(m)
            if c is None:
                continue
            d = (m | guard) - lead
            if d & guard != guard:
                return None
            shift = d - guard
            coef = _quotient(c, lead_c)
            quot[shift] = coef
            for mq, cq in qterms:
                key = mq + shift
                old = rem.get(key)
                if old is None:
                    rem[key] = -coef * cq
                    heapq.heappush(heap, -key)
                else:
                    new = old - coef * cq
                    if new:
                        rem[key] = _norm(new)
                    else:
                        del rem[key]
        return Poly(ring, quot)

    # comparison and printing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            if other.ring is self.ring:
                return self.terms == other.terms
            return self.canonical() == other.canonical()
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = rat(other)
            if not other:
                return not self.terms
            return self.terms == {0: other}
        return NotImplemented

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def canonical(self) -> tuple:
        """Terms as ``((exponent tuple...), coefficient)`` in printing order."""
        used = sorted(self.variables())
        rows = []
        for exps, c in self.items():
            vec = tuple(exps.get(v, 0) for v in used)
            key = (sum(vec), tuple(-e for e in reversed(vec)))
            rows.append((key, tuple((v, e) for v, e in zip(used, vec) if e), c))
        rows.sort(key=lambda r: r[0], reverse=True)
        return tuple((mono, c) for _, mono, c in rows)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mono, c in self.canonical():
            body = "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in mono)
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if not body:
                text = rat_text(a)
            elif a == 1:
                text = body
            elif isinstance(a, int):
                text = f"{a}{body}"
            else:
                text = f"{rat_text(a)} {body}"
            pieces.append((sign, text))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in pieces[1:]:
            out += sign + text
        return out

    def __repr__(self) -> str:
        return f"Poly({self})"


def poly_product(factors: Iterable[Poly], ring: Ring) -> Poly:
    result = ring.one()
    for f in factors:
        result = result * f
    return result

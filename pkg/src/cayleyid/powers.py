"""Formal powers ``f * P^(s+a)`` with the exponent ``s`` kept symbolic."""

from __future__ import annotations

from .ring import S, Poly, VarId, rat


class PowerElement:
    """The element ``num * base^(s + offset)``.

    Instances are canonical: ``base`` never divides a nonzero ``num``, and
    zero is stored with offset 0.  Equality is structural on ``(num, offset)``.
    """

    __slots__ = ("num", "base", "offset")

    def __init__(self, num: Poly, base: Poly, offset: int = 0):
        if base.is_zero():
            raise ValueError("base polynomial must be nonzero")
        if S in base.ring and base.degree_in(S) > 0:
            raise ValueError("base polynomial must not involve s")
        if num.ring is not base.ring:
            raise ValueError("numerator and base live in different rings")
        self.base = base
        self.num, self.offset = _canonical(num, base, offset)

    @classmethod
    def power(cls, base: Poly) -> "PowerElement":
        """The element ``base^s``."""
        return cls(base.ring.one(), base)

    @classmethod
    def _raw(cls, num: Poly, base: Poly, offset: int) -> "PowerElement":
        e = object.__new__(cls)
        e.num, e.base, e.offset = num, base, offset
        return e

    def _check(self, other: "PowerElement") -> None:
        if other.base is not self.base and other.base != self.base:
            raise ValueError("power elements have different bases")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def diff(self, v: VarId) -> "PowerElement":
        if v == S:
            raise ValueError("cannot differentiate with respect to s")
        ring = self.base.ring
        if self.num.is_zero():
            return self
        dbase = self.base.diff(v)
        dnum = self.num.diff(v)
        if dbase.is_zero():
            return PowerElement(dnum, self.base, self.offset)
        exponent = ring.var(S) + self.offset
        num = dnum * self.base + exponent * self.num * dbase
        return PowerElement(num, self.base, self.offset - 1)

    def __add__(self, other: "PowerElement") -> "PowerElement":
        if not isinstance(other, PowerElement):
            return NotImplemented
        self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        a, b = (self, other) if self.offset >= other.offset else (other, self)
        num = a.num * self.base ** (a.offset - b.offset) + b.num
        return PowerElement(num, self.base, b.offset)

    def __neg__(self) -> "PowerElement":
        return PowerElement._raw(-self.num, self.base, self.offset)

    def __sub__(self, other: "PowerElement") -> "PowerElement":
        if not isinstance(other, PowerElement):
            return NotImplemented
        return self + (-other)

    def mul_poly(self, q: Poly) -> "PowerElement":
        if q.is_constant():
            return self.scale(q.constant())
        return PowerElement(q * self.num, self.base, self.offset)

    def scale(self, c) -> "PowerElement":
        c = rat(c)
        if not c:
            return PowerElement._raw(self.base.ring.zero(), self.base, 0)
        return PowerElement._raw(self.num.scale(c), self.base, self.offset)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return self.mul_poly(other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PowerElement):
            return NotImplemented
        self._check(other)
        return self.offset == other.offset and self.num == other.num

    __hash__ = None

    def at_offset(self, offset: int) -> Poly | None:
        """Numerator ``g`` with ``self == g * base^(s + offset)``, if polynomial."""
        if self.num.is_zero():
            return self.num
        if offset > self.offset:
            return None
        return self.num * self.base ** (self.offset - offset)

    def specialize(self, s0: int) -> Poly:
        """Substitute an integer for ``s`` and expand into a polynomial."""
        exponent = s0 + self.offset
        if self.num.is_zero():
            return self.num
        if exponent < 0:
            raise ValueError("specialization gives a negative power of the base")
        ring = self.base.ring
        return self.num.subst({S: ring.const(s0)}) * self.base ** exponent

    def __str__(self) -> str:
        num = str(self.num)
        if len(self.num) > 1:
            num = f"({num})"
        if self.offset:
            sign = "+" if self.offset > 0 else "-"
            return f"{num} * P^(s{sign}{abs(self.offset)})"
        return f"{num} * P^(s)"

    def __repr__(self) -> str:
        return f"PowerElement({self})"


def _canonical(num: Poly, base: Poly, offset: int) -> tuple[Poly, int]:
    if num.is_zero():
        return num, 0
    if base.is_constant():
        # 1^(s+a) is 1; any other constant base would need c^s as a symbol
        if base.constant() != 1:
            raise ValueError("a constant base must be 1")
        return num, 0
    while True:
        q = num.div_exact(base)
        if q is None:
            return num, offset
        num, offset = q, offset + 1


def pe_normalize_eq(e1: PowerElement, e2: PowerElement) -> bool:
    return e1 == e2


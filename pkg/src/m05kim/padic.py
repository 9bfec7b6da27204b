"""Fixed-precision p-adic numbers with capped relative precision.

A :class:`PadicNumber` is ``p**val * unit`` where ``unit`` is known modulo
``p**relprec``.  Exact zero is a separate state; a number whose digits have all
cancelled is an *inexact* zero ``O(p**val)`` (relprec 0).  Arithmetic tracks
precision conservatively, so the reported absolute precision is always a
guaranteed lower bound.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from numbers import Rational

INF = float("inf")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def vp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PadicContext:
    p: int
    N: int

    def __post_init__(self):
        if not _is_prime(self.p) or self.p in (2, 3):
            raise ValueError(f"p must be a prime other than 2 and 3, got {self.p}")
        if self.N < 5:
            raise ValueError("precision must be at least 5")

    @property
    def modulus(self) -> int:
        return self.p ** self.N

    def with_precision(self, N: int) -> "PadicContext":
        return PadicContext(self.p, N)

    def __call__(self, x) -> "PadicNumber":
        return PadicNumber.coerce(self, x)

    def zero(self) -> "PadicNumber":
        return PadicNumber(self, None, 0, 0)

    def one(self) -> "PadicNumber":
        return PadicNumber(self, 0, 1, self.N)

    def inexact_zero(self, absprec: int) -> "PadicNumber":
        return PadicNumber(self, absprec, 0, 0)


class PadicNumber:
    __slots__ = ("ctx", "val", "unit", "relprec")

    def __init__(self, ctx: PadicContext, val, unit: int, relprec: int):
        # val None means exact zero
        self.ctx = ctx
        self.val = val
        self.relprec = min(relprec, ctx.N)
        self.unit = unit % (ctx.p ** self.relprec) if val is not None else 0

    # construction -------------------------------------------------------
    @classmethod
    def coerce(cls, ctx: PadicContext, x) -> "PadicNumber":
        if isinstance(x, PadicNumber):
            if x.ctx.p != ctx.p:
                raise ValueError("mixing primes")
            if x.ctx == ctx:
                return x
            return x.change_context(ctx)
        if isinstance(x, int):
            x = Fraction(x)
        elif not isinstance(x, Fraction):
            try:
                x = Fraction(int(x.numerator), int(x.denominator))
            except AttributeError as exc:
                raise TypeError(f"cannot coerce {type(x).__name__} to a p-adic number") from exc
        if x == 0:
            return ctx.zero()
        p = ctx.p
        num, den = x.numerator, x.denominator
        v = 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        mod = p ** ctx.N
        return cls(ctx, v, num * pow(den, -1, mod), ctx.N)

    def change_context(self, ctx: PadicContext) -> "PadicNumber":
        if self.val is None:
            return ctx.zero()
        return PadicNumber(ctx, self.val, self.unit, self.relprec)

    # queries ------------------------------------------------------------
    @property
    def p(self) -> int:
        return self.ctx.p

    def is_exact_zero(self) -> bool:
        return self.val is None

    def is_zero(self) -> bool:
        return self.val is None or self.relprec == 0

    def valuation(self):
        """Valuation; for an inexact zero this is the known lower bound, for exact zero +inf."""
        return INF if self.val is None else self.val

    def absprec(self):
        return INF if self.val is None else self.val + self.relprec

    def pivot_key(self):
        return self.valuation() if not self.is_zero() else INF

    def __bool__(self):
        return not self.is_zero()

    # arithmetic ---------------------------------------------------------
    def _other(self, other):
        if isinstance(other, PadicNumber):
            if other.ctx.p != self.ctx.p:
                raise ValueError("mixing primes")
            return other
        if isinstance(other, (int, Fraction, Rational)) or hasattr(other, "denominator"):
            return PadicNumber.coerce(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if self.val is None:
            return other
        if other.val is None:
            return self
        p = self.p
        absprec = min(self.val + self.relprec, other.val + other.relprec)
        m = min(self.val, other.val)
        span = absprec - m
        if span <= 0:
            return PadicNumber(self.ctx, absprec, 0, 0)
        mod = p ** span
        x = (self.unit * p ** (self.val - m) + other.unit * p ** (other.val - m)) % mod
        if x == 0:
            return PadicNumber(self.ctx, absprec, 0, 0)
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return PadicNumber(self.ctx, m + v, x, span - v)

    __radd__ = __add__

    def __neg__(self):
        if self.val is None:
            return self
        return PadicNumber(self.ctx, self.val, -self.unit, self.relprec)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if self.val is None or other.val is None:
            return self.ctx.zero()
        rel = min(self.relprec, other.relprec)
        return PadicNumber(self.ctx, self.val + other.val, self.unit * other.unit, rel)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by a p-adic zero")
        if self.val is None:
            return self
        rel = min(self.relprec, other.relprec)
        if rel == 0:
            return PadicNumber(self.ctx, self.val - other.val, 0, 0)
        mod = self.p ** rel
        return PadicNumber(self.ctx, self.val - other.val, self.unit * pow(other.unit, -1, mod), rel)

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.ctx.one() / self ** (-n)
        if n == 0:
            return self.ctx.one()
        if self.val is None:
            return self
        rel = self.relprec
        return PadicNumber(self.ctx, self.val * n, pow(self.unit, n, self.p ** rel) if rel else 0, rel)

    def __eq__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return (self - other).is_zero()

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    # conversions --------------------------------------------------------
    def lift(self) -> int:
        """Integer representative of a number with nonnegative valuation, modulo p^absprec."""
        if self.val is None:
            return 0
        if self.val < 0:
            raise ValueError("negative valuation")
        return self.unit * self.p ** self.val

    def digits(self) -> list[int]:
        out, u = [], self.unit
        for _ in range(self.relprec):
            out.append(u % self.p)
            u //= self.p
        return out

    def digit_string(self) -> str:
        """Canonical text: valuation prefix, then unit digits from low to high."""
        if self.val is None:
            return "0"
        if self.relprec == 0:
            return f"O({self.p}^{self.val})"
        return f"{self.p}^{self.val}:" + ",".join(str(d) for d in self.digits())

    def truncate(self, relprec: int) -> "PadicNumber":
        if self.val is None:
            return self
        return PadicNumber(self.ctx, self.val, self.unit, min(relprec, self.relprec))

    def __repr__(self):
        return f"PadicNumber({self.digit_string()}, p={self.p})"


def teichmuller(x: PadicNumber) -> PadicNumber:
    """The (p-1)-st root of unity congruent to a unit x modulo p (x -> x^p iterated to a fixed point)."""
    if x.is_zero() or x.val != 0:
        raise ValueError("teichmuller needs a unit")
    p, N = x.p, x.ctx.N
    mod = p ** N
    t = x.unit % p
    while True:
        nt = pow(t, p, mod)
        if nt == t:
            return PadicNumber(x.ctx, 0, t, N)
        t = nt


def _log_one_unit(y: PadicNumber) -> PadicNumber:
    # log(1 + y) for v(y) >= 1; stop once every remaining term lies below the known precision
    ctx = y.ctx
    if y.is_exact_zero():
        return ctx.zero()
    if y.val < 1:
        raise ValueError("log series needs v(y) >= 1")
    target = y.absprec()
    acc = ctx.zero()
    power = y
    k = 1
    while k * y.val - _max_vp_upto(k, ctx.p) < target:
        term = power / k
        acc = acc + term if k % 2 else acc - term
        power = power * y
        k += 1
    return acc


def _max_vp_upto(k: int, p: int) -> int:
    v, q = 0, p
    while q <= k:
        v += 1
        q *= p
    return v


def padic_log(x: PadicNumber) -> PadicNumber:
    """Iwasawa logarithm: log p = 0 and log of roots of unity vanishes."""
    if x.is_exact_zero():
        raise ValueError("log of exact zero")
    if x.is_zero():
        raise ValueError("log of a number with no significant digits")
    ctx = x.ctx
    u = PadicNumber(ctx, 0, x.unit, x.relprec)
    w = teichmuller(u)
    return _log_one_unit(u / w - 1)


def rational_reconstruct(x: PadicNumber, N: int | None = None) -> Fraction:
    """Smallest-height a/b congruent to x, with |a|, |b| <= sqrt(p^N / 2) and p not dividing b."""
    if x.is_exact_zero():
        return Fraction(0)
    if x.relprec == 0:
        raise ValueError("no significant digits to reconstruct")
    p = x.p
    if N is None:
        N = x.relprec
    N = min(N, x.relprec)
    m = p ** N
    bound = isqrt(m // 2)
    # reconstruct the unit part, then restore the valuation
    r0, r1 = m, x.unit % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or s1 % p == 0 or (r1 - s1 * x.unit) % m:
        raise ValueError("rational reconstruction failed within the bounds")
    return Fraction(r1, s1) * Fraction(p) ** x.val


def valuation_pivot(x: PadicNumber):
    """Pivot key for elimination: smallest valuation first."""
    return x.pivot_key()


def exhausted_bound(det: PadicNumber, block) -> PadicNumber:
    """Zero carrying a valuation bound for det * det(block) once no pivot is left.

    Uses v(det(B)) >= sum over columns of the minimal entry valuation, where a
    zero-to-precision entry counts with its absolute precision.
    """
    ctx = det.ctx
    total = det.valuation()
    ncols = len(block[0]) if block else 0
    for c in range(ncols):
        total += min(PadicNumber.coerce(ctx, row[c]).valuation() for row in block)
    if total == INF:
        return ctx.zero()
    return ctx.inexact_zero(int(total))

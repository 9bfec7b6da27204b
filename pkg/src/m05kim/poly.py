"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are sorted tuples of ``(variable, exponent)`` pairs; the empty tuple
is the constant monomial.  Coefficients are ``Fraction`` by default but any
exact field type that supports ``+``, ``*`` and ``==`` works.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping

Monomial = tuple  # tuple[tuple[str, int], ...]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        self.terms: dict = {}
        if terms:
            for m, c in terms.items():
                if c != 0:
                    self.terms[m] = c

    # construction
    @classmethod
    def const(cls, c) -> "Poly":
        if isinstance(c, int):
            c = Fraction(c)
        return cls({(): c})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): Fraction(1)})

    @classmethod
    def coerce(cls, x) -> "Poly":
        if isinstance(x, Poly):
            return x
        return cls.const(x)

    # arithmetic
    def __add__(self, other):
        other = Poly.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        p = Poly()
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Poly()
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if other == 0:
                return Poly()
            p = Poly()
            p.terms = {m: c * other for m, c in self.terms.items()}
            return p
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
        p = Poly()
        p.terms = out
        return p

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if other.is_constant():
                other = other.constant_term()
            else:
                raise ZeroDivisionError("division by a non-constant polynomial")
        inv = 1 / Fraction(other) if isinstance(other, (int, Rational)) else 1 / other
        return self * inv

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.coerce(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_term(self):
        return self.terms.get((), Fraction(0))

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        deg = -1
        for m in self.terms:
            deg = max(deg, dict(m).get(name, 0))
        return deg

    def coefficient_in(self, name: str, k: int) -> "Poly":
        """Coefficient of ``name**k``, as a polynomial in the remaining variables."""
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            if d.get(name, 0) == k:
                d.pop(name, None)
                out[tuple(sorted(d.items()))] = c
        return Poly(out)

    def evaluate(self, values: Mapping[str, object], one=None):
        """Substitute every variable; ``one`` selects the target ring (default Fraction)."""
        if one is None:
            one = Fraction(1)
        total = one * 0
        cache: dict = {}
        for m, c in self.terms.items():
            t = one * c
            for v, e in m:
                key = (v, e)
                if key not in cache:
                    cache[key] = values[v] ** e
                t = t * cache[key]
            total = total + t
        return total

    def subs(self, values: Mapping[str, "Poly | object"]) -> "Poly":
        """Partial substitution; values may be polynomials or scalars."""
        out = Poly()
        for m, c in self.terms.items():
            t = Poly.const(c)
            rest = []
            for v, e in m:
                if v in values:
                    t = t * Poly.coerce(values[v]) ** e
                else:
                    rest.append((v, e))
            out = out + t * Poly({tuple(rest): Fraction(1)})
        return out

    def map_coefficients(self, f: Callable) -> "Poly":
        return Poly({m: f(c) for m, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda mc: (len(mc[0]), mc[0])):
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)


def poly_sum(items: Iterable[Poly]) -> Poly:
    out = Poly()
    for p in items:
        out = out + p
    return out

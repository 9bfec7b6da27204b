"""Coleman p-adic polylogarithms (branch log p = 0) and p-adic zeta values.

Three ingredients:

* ``Li_{-m}(z) = A_m(z) / (1 - z)^{m+1}`` with Eulerian-type numerators, exact
  for every m >= 0.
* the Frobenius-corrected function ``l_n(z) = Li_n(z) - p^-n Li_n(z^p)``, which
  equals the sum of z^k / k^n over k prime to p.  Writing k = a + p j and
  expanding ``(1 + p j / a)^-n`` gives
  ``l_n(z) = sum_r C(-n, r) p^r sum_a a^(-n-r) z^a E_r(z^p)`` with
  ``E_r(w) = sum_j j^r w^j`` rational; the r-th term has valuation >= r
  whenever z is not congruent to 1, so this converges on every residue disk
  except that of 1.
* on the disk of a Teichmuller point t != 1, with u = log z,
  ``Li_n(z) = sum_m Li_{n-m}(t) u^m / m!`` and
  ``Li_k(t) = l_k(t) / (1 - p^-k)`` for k >= 1.

For |z| < 1 the Frobenius relation is unrolled instead:
``Li_n(z) = sum_j p^(-n j) l_n(z^(p^j))``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .padic import PadicContext, PadicNumber, padic_log, teichmuller, _max_vp_upto

GUARD = 8


class PolylogDomainError(ValueError):
    pass


@lru_cache(maxsize=None)
def _eulerian_numerators(m_max: int) -> tuple[tuple[int, ...], ...]:
    """Integer polynomials P_m with Li_{-m}(z) = P_m(z) / (1 - z)^(m+1)."""
    out = [(0, 1)]
    for m in range(m_max):
        P = out[-1]
        # P_{m+1} = z (1 - z) P_m' + (m + 1) z P_m
        deriv = [i * c for i, c in enumerate(P)][1:]
        new = [0] * (len(P) + 2)
        for i, c in enumerate(deriv):
            new[i + 1] += c
            new[i + 2] -= c
        for i, c in enumerate(P):
            new[i + 1] += (m + 1) * c
        while len(new) > 1 and new[-1] == 0:
            new.pop()
        out.append(tuple(new))
    return tuple(out)


def _neg_index_values(w: int, m_max: int, mod: int) -> list[int]:
    """E_r(w) = sum_{j>=0} j^r w^j modulo mod for r = 0..m_max, assuming 1 - w is a unit."""
    inv = pow((1 - w) % mod, -1, mod)
    polys = _eulerian_numerators(m_max)
    out = [inv]
    invpow = inv
    for r in range(1, m_max + 1):
        invpow = invpow * inv % mod
        acc = 0
        for c in reversed(polys[r]):
            acc = (acc * w + c) % mod
        out.append(acc * invpow % mod)
    return out


def _integral_input(z: PadicNumber, K: int) -> int:
    return z.lift() % (z.p ** K)


def from_residue(ctx: PadicContext, x: int, absprec: int) -> PadicNumber:
    """The p-adic number known only modulo p^absprec."""
    p = ctx.p
    x %= p ** absprec
    if x == 0:
        return ctx.inexact_zero(absprec)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return PadicNumber(ctx, v, x, absprec - v)


def frobenius_corrected(n: int, z: PadicNumber) -> PadicNumber:
    """l_n(z) = Li_n(z) - p^-n Li_n(z^p) for |z| <= 1, z not congruent to 1."""
    ctx = z.ctx
    p = ctx.p
    if z.is_zero():
        return ctx.zero()
    K = int(min(ctx.N, z.absprec()))
    if z.val < 0:
        raise PolylogDomainError("|z| > 1 is outside the implemented domain")
    if z.val == 0 and (z.unit - 1) % p == 0:
        raise PolylogDomainError("z lies in the residue disk of 1")
    mod = p ** K
    zi = _integral_input(z, K)
    w = pow(zi, p, mod)
    E = _neg_index_values(w, K, mod)
    total = 0
    zpow = [1]
    for _ in range(p - 1):
        zpow.append(zpow[-1] * zi % mod)
    for r in range(K):
        coeff = comb(n + r - 1, r) * (-1) ** r * p ** r
        inner = 0
        for a in range(1, p):
            inner += pow(a, -(n + r), mod) * zpow[a]
        total += coeff * (inner % mod) * E[r]
    return from_residue(ctx, total, K)


def _li_teichmuller(k: int, t: PadicNumber, negative: list[int] | None = None) -> PadicNumber:
    """Li_k(t) at a Teichmuller point t != 1; for k <= 0 this is the exact rational value."""
    ctx = t.ctx
    p, K = ctx.p, ctx.N
    if k <= 0:
        if negative is None:
            negative = _neg_index_values(t.lift(), -k, p ** K)
        # E_0 counts j = 0, Li_0 does not
        val = negative[0] - 1 if k == 0 else negative[-k]
        return from_residue(ctx, val, K)
    return frobenius_corrected(k, t) / (1 - Fraction(1, p ** k))


def _terms_needed(p: int, target: int, uval: int) -> int:
    # smallest M with m*uval - v_p(m!) >= target for all m >= M
    m = 0
    while True:
        vfact = sum(m // p ** i for i in range(1, 64) if p ** i <= m)
        if m * uval - vfact >= target and m * (uval - 1.0 / (p - 1)) >= target:
            return m
        m += 1


def _li_disk(n: int, z: PadicNumber) -> PadicNumber:
    ctx = z.ctx
    t = teichmuller(z)
    if t == 1:
        raise PolylogDomainError("z lies in the residue disk of 1")
    u = padic_log(z)
    if u.is_exact_zero():
        return _li_teichmuller(n, t)
    uval = u.val if not u.is_zero() else u.absprec()
    M = _terms_needed(ctx.p, ctx.N, max(uval, 1))
    negative = _neg_index_values(t.lift(), max(M - n, 0), ctx.p ** ctx.N)
    acc = ctx.zero()
    upow = ctx.one()
    fact = 1
    for m in range(M + 1):
        if m:
            upow = upow * u
            fact *= m
        acc = acc + _li_teichmuller(n - m, t, negative) * upow / fact
    return acc


def _li_small(n: int, z: PadicNumber) -> PadicNumber:
    ctx = z.ctx
    target = z.val + ctx.N
    acc = ctx.zero()
    w = z
    j = 0
    while True:
        if w.val - n * j >= target:
            break
        acc = acc + frobenius_corrected(n, w) / Fraction(ctx.p) ** (n * j)
        w = w ** ctx.p
        j += 1
    return acc


def padic_li(n: int, z, ctx: PadicContext | None = None) -> PadicNumber:
    """Coleman polylogarithm Li_n(z), computed with guard digits and returned at the input precision."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if ctx is None:
        if not isinstance(z, PadicNumber):
            raise TypeError("a context is needed for non p-adic input")
        ctx = z.ctx
    z = PadicNumber.coerce(ctx, z)
    if z.is_exact_zero():
        return ctx.zero()
    work = ctx.with_precision(ctx.N + GUARD + n)
    zw = z.change_context(work)
    if z.val > 0:
        out = _li_small(n, zw)
    elif z.val < 0:
        raise PolylogDomainError("|z| > 1 is outside the implemented domain")
    else:
        out = _li_disk(n, zw)
    return out.change_context(ctx)


def li_series(n: int, z: PadicNumber) -> PadicNumber:
    """Direct power series sum z^k / k^n for |z| < 1 (used as an independent check)."""
    ctx = z.ctx
    if z.is_exact_zero():
        return ctx.zero()
    if z.val < 1:
        raise PolylogDomainError("series needs |z| < 1")
    work = ctx.with_precision(ctx.N + GUARD + n * 4)
    zw = z.change_context(work)
    target = z.val + ctx.N
    acc = work.zero()
    power = zw
    k = 1
    while k * z.val - n * _max_vp_upto(k, ctx.p) < target + 1:
        acc = acc + power / Fraction(k) ** n
        power = power * zw
        k += 1
    return acc.change_context(ctx)


def padic_zeta(n: int, ctx: PadicContext) -> PadicNumber:
    """zeta_p(n) = 2^(n-1) Li_n(-1) / (1 - 2^(n-1))."""
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and >= 3")
    c = Fraction(2 ** (n - 1), 1 - 2 ** (n - 1))
    return padic_li(n, ctx(-1)) * c

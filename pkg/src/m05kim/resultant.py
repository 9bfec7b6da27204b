"""Dense univariate polynomials, determinants and resultants over an abstract field.

Polynomials are coefficient lists, low degree first.  Nothing here inspects the
scalar type beyond ``+ - * /``, ``== 0`` and an optional ``is_exact_zero``; ``pivot_key`` chooses
pivots (smallest key wins), which p-adic callers use for valuation pivoting.
"""
from __future__ import annotations

from math import comb
from typing import Callable, Sequence


def is_exact_zero(c) -> bool:
    """True only for a zero that carries no precision information; skipping it is lossless."""
    probe = getattr(c, "is_exact_zero", None)
    return probe() if probe is not None else c == 0


def padd(f: Sequence, g: Sequence, zero) -> list:
    n = max(len(f), len(g))
    return [(f[i] if i < len(f) else zero) + (g[i] if i < len(g) else zero) for i in range(n)]


def pneg(f: Sequence) -> list:
    return [-c for c in f]


def psub(f: Sequence, g: Sequence, zero) -> list:
    return padd(f, pneg(g), zero)


def pmul(f: Sequence, g: Sequence, zero) -> list:
    if not f or not g:
        return []
    out = [zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if is_exact_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return out


def pscale(f: Sequence, k) -> list:
    return [c * k for c in f]


def ppow(f: Sequence, n: int, one, zero) -> list:
    out = [one]
    for _ in range(n):
        out = pmul(out, f, zero)
    return out


def peval(f: Sequence, x, zero):
    acc = zero
    for c in reversed(f):
        acc = acc * x + c
    return acc


def pad(f: Sequence, length: int, zero) -> list:
    """Pad with zeros (or check that dropped entries are zero) to a fixed length."""
    f = list(f)
    if len(f) > length:
        if any(c != 0 for c in f[length:]):
            raise ValueError("polynomial exceeds its declared degree")
        return f[:length]
    return f + [zero] * (length - len(f))


def shifted_reflection(f: Sequence, y, zero) -> list:
    """Coefficients in X of f(y - X)."""
    n = len(f) - 1
    out = [zero] * (n + 1)
    ypow = [zero + 1]
    for _ in range(n):
        ypow.append(ypow[-1] * y)
    for k, c in enumerate(f):
        if is_exact_zero(c):
            continue
        for i in range(k + 1):
            term = c * ypow[k - i] * comb(k, i)
            out[i] = out[i] - term if i % 2 else out[i] + term
    return out


def sylvester(f: Sequence, g: Sequence, zero) -> list:
    """Sylvester matrix of f and g at their formal degrees len-1 (rows in the standard order)."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    fh = list(reversed(f))
    gh = list(reversed(g))
    for i in range(n):
        rows.append([zero] * i + fh + [zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([zero] * i + gh + [zero] * (size - i - n - 1))
    return rows


def determinant(matrix: Sequence[Sequence], zero, one, pivot_key: Callable | None = None,
                exhausted: Callable | None = None):
    """Determinant by Gaussian elimination over a field.

    When a column has no usable pivot the determinant is zero; for inexact
    scalars ``exhausted(det_so_far, remaining_block)`` may instead return a
    zero that carries a precision bound.
    """
    a = [list(r) for r in matrix]
    n = len(a)
    if n == 0:
        return one
    det = one
    for col in range(n):
        candidates = [r for r in range(col, n) if a[r][col] != 0]
        if not candidates:
            if exhausted is not None:
                return exhausted(det, [row[col:] for row in a[col:]])
            return zero
        if pivot_key is None:
            piv = candidates[0]
        else:
            piv = min(candidates, key=lambda r: pivot_key(a[r][col]))
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det = det * p
        inv = one / p
        prow = a[col]
        for r in range(col + 1, n):
            x = a[r][col]
            if is_exact_zero(x):
                continue
            factor = x * inv
            row = a[r]
            for c in range(col + 1, n):
                if not is_exact_zero(prow[c]):
                    row[c] = row[c] - factor * prow[c]
            row[col] = zero
    return det


def expansion_determinant(matrix: Sequence[Sequence], zero, one):
    """Division-free determinant by Laplace expansion with memoised minors.

    Only ring operations are used, so entries may be polynomials.  Cost is
    O(n 2^n), which is fine for the small Sylvester matrices it is meant for.
    """
    n = len(matrix)
    memo: dict = {}

    def minor(row: int, cols: tuple):
        if row == n:
            return one
        if cols in memo:
            return memo[cols]
        acc = zero
        for pos, c in enumerate(cols):
            entry = matrix[row][c]
            if is_exact_zero(entry):
                continue
            term = entry * minor(row + 1, cols[:pos] + cols[pos + 1:])
            acc = acc + term if pos % 2 == 0 else acc - term
        memo[cols] = acc
        return acc

    return minor(0, tuple(range(n)))


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    a = [list(r) for r in matrix]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1] if n else 1


def resultant(f: Sequence, g: Sequence, zero, one, pivot_key: Callable | None = None,
              exhausted: Callable | None = None):
    return determinant(sylvester(f, g, zero), zero, one, pivot_key, exhausted)


def interpolate(xs: Sequence, ys: Sequence, zero, one) -> list:
    """Coefficients of the polynomial of degree < len(xs) through the points (Newton form)."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = [zero] * n
    for i in range(n - 1, -1, -1):
        # out = out * (X - xs[i]) + coef[i]
        new = [zero] * n
        for k in range(n - 1):
            new[k + 1] = new[k + 1] + out[k]
        for k in range(n):
            new[k] = new[k] - out[k] * xs[i]
        new[0] = new[0] + coef[i]
        out = new
    return out


def euclid_resultant(f: Sequence, g: Sequence, zero, one):
    """Resultant at the formal degrees via polynomial remainders over a field.

    Agrees with the Sylvester determinant at the same formal degrees.
    """
    m, n = len(f) - 1, len(g) - 1
    f, g = list(f), list(g)
    # actual degrees
    df = max((i for i, c in enumerate(f) if c != 0), default=-1)
    dg = max((i for i, c in enumerate(g) if c != 0), default=-1)
    if df < 0 or dg < 0:
        return zero
    factor = one
    if df < m:
        # Res_{m,n}(f,g) = (-1)^{(m-df) n} lc(g)^{m-df} Res_{df,n}(f,g) once g has full degree
        if dg < n:
            return zero
        factor = factor * g[n] ** (m - df) * (-1 if ((m - df) * n) % 2 else 1)
    if dg < n:
        factor = factor * f[df] ** (n - dg)
    return factor * _euclid(f[:df + 1], g[:dg + 1], zero, one)


def _euclid(f: list, g: list, zero, one):
    # Res(f, g) for polynomials with nonzero leading coefficients.
    result = one
    while True:
        m, n = len(f) - 1, len(g) - 1
        if n == 0:
            return result * g[0] ** m
        if m < n:
            if (m * n) % 2:
                result = -result
            f, g = g, f
            continue
        r = list(f)
        inv = one / g[-1]
        while len(r) - 1 >= n:
            q = r[-1] * inv
            shift = len(r) - 1 - n
            for i in range(n):
                r[shift + i] = r[shift + i] - q * g[i]
            r.pop()
        while r and r[-1] == 0:
            r.pop()
        if not r:
            return zero
        k = len(r) - 1
        # Res(f, g) = (-1)^{mn} lc(g)^{m-k} Res(g, r)
        result = result * g[-1] ** (m - k)
        if (m * n) % 2:
            result = -result
        f, g = g, r
